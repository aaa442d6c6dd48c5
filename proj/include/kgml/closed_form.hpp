#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "kgml/model.hpp"

namespace kgml {

/// Jacobi polynomial P_n^(a,b)(x) by the forward three-term recurrence in
/// degree. Exact for n <= 1; for the equal-parameter ranges used here
/// (a = b > 0, |x| <= 1) the recurrence is stable.
inline double jacobi_eval(int n, double a, double b, double x) {
    if (n < 0) throw RejectError(Reject::Level, "degree must be non-negative");
    if (a <= -1.0 || b <= -1.0) throw RejectError(Reject::Domain, "require a > -1 and b > -1");
    if (n == 0) return 1.0;
    double pm1 = 1.0;
    double p = 0.5 * ((a + b + 2.0) * x + (a - b));
    for (int k = 2; k <= n; ++k) {
        double s = 2.0 * k + a + b;
        double c1 = 2.0 * k * (k + a + b) * (s - 2.0);
        double c2 = (s - 1.0) * (a * a - b * b);
        double c3 = (s - 2.0) * (s - 1.0) * s;
        double c4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
        double next = ((c2 + c3 * x) * p - c4 * pm1) / c1;
        pm1 = p;
        p = next;
    }
    return p;
}

/// d/dx P_n^(a,a)(x) = (n + 2a + 1)/2 * P_{n-1}^(a+1,a+1)(x).
inline double jacobi_deriv_equal(int n, double a, double x) {
    if (n == 0) return 0.0;
    return 0.5 * (n + 2.0 * a + 1.0) * jacobi_eval(n - 1, a + 1.0, a + 1.0, x);
}

/// Solves a(a - sqrt(beta)) = v0 for the positive root.
inline double a_from_v0(double beta, double v0) {
    double sb = std::sqrt(beta);
    return 0.5 * (sb + std::sqrt(beta + 4.0 * v0));
}

/// The transformed problem: -phi'' + v0 sec^2(sqrt(beta) q) phi = e phi on
/// the open box |q| < pi/(2 sqrt(beta)).
struct SchrodingerForm {
    double v0;              // potential strength c^2/(beta hbar^2 (lambda^2-mu^2))
    double a_coeff;         // A, with A(A - sqrt(beta)) = v0
    double box_half_width;  // pi/(2 sqrt(beta))
};

inline SchrodingerForm potential_strength(const ModelParams& p) {
    double v0 = p.c * p.c / (p.beta * p.hbar * p.hbar * p.lambda2_minus_mu2());
    return {v0, a_from_v0(p.beta, v0), std::numbers::pi / (2.0 * std::sqrt(p.beta))};
}

/// e_n = (A + sqrt(beta) n)^2.
inline double schrodinger_energy(const ModelParams& p, int n) {
    if (n < 0) throw RejectError(Reject::Level, "level index must be non-negative");
    auto sf = potential_strength(p);
    double root = sf.a_coeff + std::sqrt(p.beta) * n;
    return root * root;
}

/// Forward energy map: e(E) = v0 + (lambda E + mu m c^2)^2 / (hbar(lambda^2-mu^2))^2.
inline double schrodinger_from_kg(const ModelParams& p, double energy) {
    double hD = p.hbar * p.lambda2_minus_mu2();
    double t = (p.lambda * energy + p.mu * p.rest_energy()) / hD;
    return potential_strength(p).v0 + t * t;
}

/// Inverse energy map on the positive branch of lambda E + mu m c^2.
inline double kg_from_schrodinger(const ModelParams& p, double e) {
    auto sf = potential_strength(p);
    if (!(e > sf.v0))
        throw RejectError(Reject::Branch, "eigenvalue at or below the potential floor v0");
    return (-p.mu * p.rest_energy() +
            p.hbar * p.lambda2_minus_mu2() * std::sqrt(e - sf.v0)) / p.lambda;
}

/// Bound-state energy, printed closed form:
/// E_n = -mu m c^2/lambda
///       + hbar(lambda^2-mu^2)/lambda
///         * sqrt(beta(n^2+n+1/2) + beta(n+1/2) sqrt(1 + 4c^2/(hbar^2 beta^2 (lambda^2-mu^2)))).
inline double kg_energy(const ModelParams& p, int n) {
    if (n < 0) throw RejectError(Reject::Level, "level index must be non-negative");
    double D = p.lambda2_minus_mu2();
    double inner = p.beta * (double(n) * n + n + 0.5) +
                   p.beta * (n + 0.5) *
                       std::sqrt(1.0 + 4.0 * p.c * p.c / (p.hbar * p.hbar * p.beta * p.beta * D));
    return -p.mu * p.rest_energy() / p.lambda + p.hbar * D / p.lambda * std::sqrt(inner);
}

/// Raw momentum-space ODE eigenvalue at a given energy,
/// eps = gamma + (E^2 - m^2 c^4)/(hbar^2 (lambda^2 - mu^2)).
inline double raw_eigenvalue(const ModelParams& p, double energy) {
    double mc2 = p.rest_energy();
    return p.gamma + (energy * energy - mc2 * mc2) / (p.hbar * p.hbar * p.lambda2_minus_mu2());
}

struct SpectrumEntry {
    int n;
    double e_n;    // Schrodinger eigenvalue (A + sqrt(beta) n)^2
    double E_n;    // Klein-Gordon energy
    double eps_n;  // raw ODE eigenvalue
};

inline std::vector<SpectrumEntry> spectrum(const ModelParams& p, int n_max) {
    if (n_max < 0) throw RejectError(Reject::Level, "level index must be non-negative");
    std::vector<SpectrumEntry> out;
    out.reserve(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        double E = kg_energy(p, n);
        out.push_back({n, schrodinger_energy(p, n), E, raw_eigenvalue(p, E)});
    }
    return out;
}

/// Two leading terms of the small-beta expansion of kg_energy:
/// E_n = e0 + c1 * beta + O(beta^2).
struct ExpansionTerms {
    double e0;  // -mu m c^2/lambda + sqrt(hbar c/lambda^2) (lambda^2-mu^2)^(3/4) sqrt(2n+1)
    double c1;  // sqrt(hbar^3/(4 c lambda^2)) (lambda^2-mu^2)^(5/4) (n^2+n+1/2)/sqrt(2n+1)
};

inline ExpansionTerms kg_energy_expansion(const ModelParams& p, int n) {
    if (n < 0) throw RejectError(Reject::Level, "level index must be non-negative");
    double D = p.lambda2_minus_mu2();
    double e0 = -p.mu * p.rest_energy() / p.lambda +
                std::sqrt(p.hbar * p.c / (p.lambda * p.lambda)) * std::pow(D, 0.75) *
                    std::sqrt(2.0 * n + 1.0);
    double c1 = std::sqrt(p.hbar * p.hbar * p.hbar / (4.0 * p.c * p.lambda * p.lambda)) *
                std::pow(D, 1.25) * (double(n) * n + n + 0.5) / std::sqrt(2.0 * n + 1.0);
    return {e0, c1};
}

/// Unnormalized box eigenfunction
/// phi_n(q) = (cos sqrt(beta) q)^(A/sqrt(beta)) P_n^(alpha,alpha)(sin sqrt(beta) q),
/// alpha = A/sqrt(beta) - 1/2. Vanishes at the walls.
inline double phi(const ModelParams& p, int n, double q) {
    if (n < 0) throw RejectError(Reject::Level, "level index must be non-negative");
    auto sf = potential_strength(p);
    if (!(std::fabs(q) < sf.box_half_width))
        throw RejectError(Reject::Domain, "q outside the open box");
    double sb = std::sqrt(p.beta);
    double nu = sf.a_coeff / sb;
    return std::pow(std::cos(sb * q), nu) * jacobi_eval(n, nu - 0.5, nu - 0.5, std::sin(sb * q));
}

/// Unnormalized momentum-space eigenfunction at E = kg_energy(p, n):
/// psi_n(p) = exp(i kappa(E) arctan(sqrt(beta) p)/sqrt(beta))
///            * (1 + beta p^2)^-(gamma/(2 beta) + A/(2 sqrt(beta)))
///            * P_n^(alpha,alpha)(sqrt(beta) p / sqrt(1 + beta p^2)).
/// Identical to gauge_factor(p) * phi_n(q(p)), so it actually solves the raw
/// ODE; the envelope exponent carries A/(2 sqrt(beta)), not A/sqrt(beta).
inline std::complex<double> psi(const ModelParams& p, double energy, int n, double mom) {
    if (n < 0) throw RejectError(Reject::Level, "level index must be non-negative");
    auto sf = potential_strength(p);
    double sb = std::sqrt(p.beta);
    double onebp2 = 1.0 + p.beta * mom * mom;
    double alpha = sf.a_coeff / sb - 0.5;
    double env = std::pow(onebp2, -(p.gamma / (2.0 * p.beta) + sf.a_coeff / (2.0 * sb)));
    double s = sb * mom / std::sqrt(onebp2);
    double phase = kappa(p, energy) * std::atan(sb * mom) / sb;
    return std::polar(1.0, phase) * (env * jacobi_eval(n, alpha, alpha, s));
}

/// d psi_n/dp in closed form; used by tests and by the hermiticity checks.
inline std::complex<double> psi_derivative(const ModelParams& p, double energy, int n,
                                           double mom) {
    auto sf = potential_strength(p);
    double sb = std::sqrt(p.beta);
    double onebp2 = 1.0 + p.beta * mom * mom;
    double alpha = sf.a_coeff / sb - 0.5;
    double sigma = p.gamma / (2.0 * p.beta) + sf.a_coeff / (2.0 * sb);
    double s = sb * mom / std::sqrt(onebp2);
    std::complex<double> val = psi(p, energy, n, mom);
    // log-derivative of phase and envelope, plus the polynomial factor
    std::complex<double> logder(-2.0 * sigma * p.beta * mom / onebp2,
                                kappa(p, energy) / onebp2);
    double env = std::pow(onebp2, -sigma);
    double dpoly = jacobi_deriv_equal(n, alpha, s) * sb * std::pow(onebp2, -1.5);
    double phase = kappa(p, energy) * std::atan(sb * mom) / sb;
    return val * logder + std::polar(1.0, phase) * (env * dpoly);
}

}  // namespace kgml
