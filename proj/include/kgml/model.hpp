#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace kgml {

/// Why an input was rejected. Every throwing operation in the library uses
/// one of these categories through RejectError.
enum class Reject {
    Degeneracy,   // lambda^2 <= mu^2, or lambda <= 0
    Deformation,  // beta <= 0
    Units,        // hbar/c/m out of range, or non-finite field
    Domain,       // argument outside an operation's domain
    Level,        // negative level index
    Grid,         // unusable sampling grid
    Count,        // eigenvalue count out of range
    Branch,       // energy map undefined (e <= v0)
    Convergence,  // integrand tails not decayed at the box edge
};

inline const char* reject_name(Reject r) {
    switch (r) {
        case Reject::Degeneracy: return "RejectDegeneracy";
        case Reject::Deformation: return "RejectDeformation";
        case Reject::Units: return "RejectUnits";
        case Reject::Domain: return "RejectDomain";
        case Reject::Level: return "RejectLevel";
        case Reject::Grid: return "RejectGrid";
        case Reject::Count: return "RejectCount";
        case Reject::Branch: return "RejectBranch";
        case Reject::Convergence: return "RejectConvergence";
    }
    return "Reject?";
}

class RejectError : public std::runtime_error {
public:
    RejectError(Reject code, const std::string& msg)
        : std::runtime_error(std::string(reject_name(code)) + ": " + msg), code_(code) {}
    Reject code() const noexcept { return code_; }

private:
    Reject code_;
};

/// Unvalidated parameter bundle, as read from a file or command line.
/// Defaults are the natural-unit reference point used throughout the tests.
struct RawParams {
    double mass = 1.0;
    double c = 1.0;
    double hbar = 1.0;
    double lambda = 2.0;  // scalar potential slope, S(x) = lambda x
    double mu = 1.0;      // vector potential slope, V(x) = mu x
    double beta = 0.1;    // deformation parameter of [x,p] = i hbar (1 + beta p^2)
    double gamma = 0.0;   // representation parameter of x = i hbar[(1+beta p^2) d/dp + gamma p]
};

/// Validated physical constants. Construct through validate(); immutable
/// afterwards, safe to share across threads.
class ModelParams {
public:
    double mass, c, hbar, lambda, mu, beta, gamma;

    /// Classifies a bundle without throwing; nullopt means valid.
    /// Total on finite and non-finite inputs alike, and deterministic:
    /// units are checked first, then the deformation, then the slopes.
    static std::optional<Reject> classify(const RawParams& r) {
        for (double v : {r.mass, r.c, r.hbar, r.lambda, r.mu, r.beta, r.gamma})
            if (!std::isfinite(v)) return Reject::Units;
        if (r.hbar <= 0 || r.c <= 0 || r.mass < 0) return Reject::Units;
        if (r.beta <= 0) return Reject::Deformation;
        if (r.lambda <= 0 || r.lambda * r.lambda <= r.mu * r.mu) return Reject::Degeneracy;
        return std::nullopt;
    }

    static ModelParams validate(const RawParams& r) {
        if (auto rej = classify(r)) {
            switch (*rej) {
                case Reject::Units:
                    throw RejectError(*rej, "require hbar > 0, c > 0, mass >= 0 and finite fields");
                case Reject::Deformation:
                    throw RejectError(*rej, "require beta > 0");
                default:
                    throw RejectError(*rej, "require lambda > 0 and lambda^2 > mu^2");
            }
        }
        return ModelParams(r);
    }

    double lambda2_minus_mu2() const { return lambda * lambda - mu * mu; }
    double rest_energy() const { return mass * c * c; }  // m c^2

private:
    explicit ModelParams(const RawParams& r)
        : mass(r.mass), c(r.c), hbar(r.hbar), lambda(r.lambda), mu(r.mu),
          beta(r.beta), gamma(r.gamma) {}
};

/// kappa(E) = (mu E + m c^2 lambda) / (hbar (lambda^2 - mu^2)), the coupling
/// combination that drives the first-order term of the momentum-space ODE and
/// the phase of the eigenfunctions.
inline double kappa(const ModelParams& p, double energy) {
    return (p.mu * energy + p.rest_energy() * p.lambda) / (p.hbar * p.lambda2_minus_mu2());
}

/// Smallest resolvable position uncertainty of the deformed algebra.
inline double minimal_length(const ModelParams& p) {
    return p.hbar * std::sqrt(p.beta);
}

/// Right side of the generalized uncertainty relation, hbar/2 (1 + beta dp^2).
/// Minimized over dp at dp = 1/sqrt(beta), where bound/dp equals the minimal length.
inline double uncertainty_bound(const ModelParams& p, double dp) {
    if (!(dp > 0)) throw RejectError(Reject::Domain, "momentum uncertainty must be positive");
    return 0.5 * p.hbar * (1.0 + p.beta * dp * dp);
}

struct Kinematics {
    double min_length;
    explicit Kinematics(const ModelParams& p) : min_length(minimal_length(p)), params_(p) {}
    double uncertainty_floor(double dp) const { return uncertainty_bound(params_, dp); }

private:
    ModelParams params_;
};

}  // namespace kgml
