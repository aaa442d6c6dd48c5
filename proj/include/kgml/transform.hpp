#pragma once

#include <cmath>
#include <complex>

#include "kgml/closed_form.hpp"
#include "kgml/finite_difference.hpp"
#include "kgml/model.hpp"
#include "kgml/sampled_function.hpp"

namespace kgml {

/// Coefficients of the momentum-space ODE
///   [-f(p) d^2/dp^2 + g(p) d/dp + h(p)] psi = eps psi
/// at a fixed trial energy E:
///   f(p)   = (1 + beta p^2)^2
///   g(p)   = -2 (1 + beta p^2) [ p (beta + gamma) - i kappa ]
///   h(p)   = -p^2 [ gamma (beta + gamma) - c^2/(hbar^2 (lambda^2 - mu^2)) ]
///            + 2 i gamma p kappa
///   eps    = gamma + (E^2 - m^2 c^4)/(hbar^2 (lambda^2 - mu^2))
/// with kappa = (mu E + m c^2 lambda)/(hbar (lambda^2 - mu^2)).
class OdeCoefficients {
public:
    OdeCoefficients(const ModelParams& p, double energy)
        : beta_(p.beta), gamma_(p.gamma),
          coupling_(p.c * p.c / (p.hbar * p.hbar * p.lambda2_minus_mu2())),
          kappa_(kappa(p, energy)), eps_(raw_eigenvalue(p, energy)) {}

    double f(double p) const {
        double b = 1.0 + beta_ * p * p;
        return b * b;
    }
    std::complex<double> g(double p) const {
        double b = 1.0 + beta_ * p * p;
        return {-2.0 * b * p * (beta_ + gamma_), 2.0 * b * kappa_};
    }
    std::complex<double> h(double p) const {
        return {-p * p * (gamma_ * (beta_ + gamma_) - coupling_), 2.0 * gamma_ * p * kappa_};
    }
    double eps() const { return eps_; }

private:
    double beta_, gamma_, coupling_, kappa_, eps_;
};

inline OdeCoefficients build_coefficients(const ModelParams& p, double energy) {
    return OdeCoefficients(p, energy);
}

/// q(p) = arctan(sqrt(beta) p)/sqrt(beta), the compactifying change of
/// variable; strictly increasing and odd, range (-pi/(2 sqrt b), pi/(2 sqrt b)).
inline double q_map(const ModelParams& p, double mom) {
    double sb = std::sqrt(p.beta);
    return std::atan(sb * mom) / sb;
}

/// Inverse of q_map on the open box.
inline double p_from_q(const ModelParams& p, double q) {
    double sb = std::sqrt(p.beta);
    return std::tan(sb * q) / sb;
}

/// Gauge factor rho(p) = exp(integral of chi), chi = (f' + 2g)/(4f):
///   rho(p) = (1 + beta p^2)^(-gamma/(2 beta)) exp(i kappa q(p)).
/// The modulus carries no E dependence; the phase carries all of it.
inline std::complex<double> gauge_factor(const ModelParams& p, double energy, double mom) {
    double onebp2 = 1.0 + p.beta * mom * mom;
    double env = std::pow(onebp2, -p.gamma / (2.0 * p.beta));
    return std::polar(env, kappa(p, energy) * q_map(p, mom));
}

/// chi(p) = (f' + 2g)/(4f) = (-gamma p + i kappa)/(1 + beta p^2); exposed so
/// the closed-form rho can be cross-checked by direct quadrature.
inline std::complex<double> gauge_log_derivative(const ModelParams& p, double energy,
                                                 double mom) {
    double onebp2 = 1.0 + p.beta * mom * mom;
    return {-p.gamma * mom / onebp2, kappa(p, energy) / onebp2};
}

/// Applies the raw operator -f d^2/dp^2 + g d/dp + h to samples of psi on a
/// strictly increasing p grid (uniform or mapped), 4th-order stencils.
inline SampledFunction apply_raw_operator(const ModelParams& p, double energy,
                                          const SampledFunction& psi) {
    if (psi.size() < 9) throw RejectError(Reject::Grid, "need at least 9 samples");
    if (!psi.grid_is_strictly_increasing())
        throw RejectError(Reject::Grid, "grid must be strictly increasing");
    OdeCoefficients co(p, energy);
    auto d1 = fd::derivative(psi.coords, psi.values, 1);
    auto d2 = fd::derivative(psi.coords, psi.values, 2);
    SampledFunction out;
    out.coords = psi.coords;
    out.values.resize(psi.size());
    for (size_t i = 0; i < psi.size(); ++i) {
        double x = psi.coords[i];
        out.values[i] = -co.f(x) * d2[i] + co.g(x) * d1[i] + co.h(x) * psi.values[i];
    }
    return out;
}

/// Uniform-in-q grid mapped to p, the sampling the residual tests use: points
/// concentrate where psi varies fastest and the box edge stays finite.
inline SampledFunction sample_eigenfunction(const ModelParams& p, int n, int count,
                                            double q_fraction = 0.994) {
    if (count < 9) throw RejectError(Reject::Grid, "need at least 9 samples");
    auto sf = potential_strength(p);
    double qmax = sf.box_half_width * q_fraction;
    double energy = kg_energy(p, n);
    SampledFunction out;
    out.coords.resize(count);
    out.values.resize(count);
    for (int i = 0; i < count; ++i) {
        double q = -qmax + 2.0 * qmax * i / (count - 1);
        out.coords[i] = p_from_q(p, q);
        out.values[i] = psi(p, energy, n, out.coords[i]);
    }
    return out;
}

}  // namespace kgml
