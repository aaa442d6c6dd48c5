#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <ostream>
#include <vector>

#include "kgml/closed_form.hpp"
#include "kgml/model.hpp"
#include "kgml/sampled_function.hpp"
#include "kgml/transform.hpp"

namespace kgml {

/// Gauss-Legendre rule on [a, b]. Nodes by Newton iteration on the Legendre
/// recurrence; weights sum to the interval length exactly (affine exactness)
/// and the rule integrates polynomials up to degree 2 order - 1.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int order;

    static QuadratureRule gauss_legendre(int order, double a, double b) {
        if (order < 2) throw RejectError(Reject::Count, "need at least a 2-point rule");
        QuadratureRule r;
        r.order = order;
        r.nodes.resize(order);
        r.weights.resize(order);
        const int half = (order + 1) / 2;
        for (int i = 0; i < half; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= order; ++k) {
                    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                pp = order * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / pp;
                x -= dx;
                if (std::fabs(dx) < 1e-15) break;
            }
            double w = 2.0 / ((1.0 - x * x) * pp * pp);
            double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
            r.nodes[i] = mid - hw * x;
            r.nodes[order - 1 - i] = mid + hw * x;
            r.weights[i] = r.weights[order - 1 - i] = hw * w;
        }
        return r;
    }
};

/// Measure weight (1 + beta p^2)^(gamma/beta - 1); the exponent is the one
/// that makes the position operator symmetric (gamma = 0 recovers the
/// familiar 1/(1 + beta p^2) density).
inline double weight(const ModelParams& p, double mom) {
    return std::pow(1.0 + p.beta * mom * mom, p.gamma / p.beta - 1.0);
}

using ComplexFn = std::function<std::complex<double>(double)>;

/// Smooth test function handed to the measure checks: value and derivative.
struct TestFunction {
    ComplexFn f;
    ComplexFn df;
};

namespace detail {
/// Core weighted integral: integral of conj(phi) psi (1+beta p^2)^exponent dp
/// evaluated through the q substitution (dp = (1 + beta p^2) dq), which turns
/// the improper integral into one over the finite box.
inline std::complex<double> weighted_integral(const ModelParams& p, const ComplexFn& phi,
                                              const ComplexFn& psi, double exponent,
                                              const QuadratureRule& rule) {
    std::complex<double> acc = 0.0;
    double edge = 0.0, peak = 0.0;
    for (int i = 0; i < rule.order; ++i) {
        double mom = p_from_q(p, rule.nodes[i]);
        double onebp2 = 1.0 + p.beta * mom * mom;
        std::complex<double> term =
            std::conj(phi(mom)) * psi(mom) * std::pow(onebp2, exponent + 1.0);
        acc += rule.weights[i] * term;
        double mag = std::abs(term);
        peak = std::max(peak, mag);
        if (i == 0 || i == rule.order - 1) edge = std::max(edge, mag);
    }
    if (edge > 1e-8 * peak)
        throw RejectError(Reject::Convergence, "integrand has not decayed at the box edge");
    return acc;
}
}  // namespace detail

inline QuadratureRule default_rule(const ModelParams& p, int order = 256) {
    double half = potential_strength(p).box_half_width;
    return QuadratureRule::gauss_legendre(order, -half, half);
}

/// Deformed scalar product <phi|psi> = integral conj(phi) psi weight(p) dp.
inline std::complex<double> inner_product(const ModelParams& p, const ComplexFn& phi,
                                          const ComplexFn& psi, int order = 256) {
    return detail::weighted_integral(p, phi, psi, p.gamma / p.beta - 1.0,
                                     default_rule(p, order));
}

inline std::complex<double> eigen_inner_product(const ModelParams& p, int m, int n,
                                                int order = 256) {
    double Em = kg_energy(p, m), En = kg_energy(p, n);
    return inner_product(
        p, [&](double mom) { return psi(p, Em, m, mom); },
        [&](double mom) { return psi(p, En, n, mom); }, order);
}

struct GramMatrix {
    int n_max;                                 // dimension
    std::vector<std::complex<double>> entries; // row-major, unit diagonal

    std::complex<double> at(int m, int n) const { return entries[m * n_max + n]; }

    double max_off_diagonal() const {
        double worst = 0.0;
        for (int m = 0; m < n_max; ++m)
            for (int n = 0; n < n_max; ++n)
                if (m != n) worst = std::max(worst, std::abs(at(m, n)));
        return worst;
    }

    /// Row-major CSV, one entry per row, 17 significant digits.
    void write_csv(std::ostream& out) const {
        out << "m,n,re,im\n";
        for (int m = 0; m < n_max; ++m)
            for (int n = 0; n < n_max; ++n)
                out << m << ',' << n << ',' << detail::fmt17(at(m, n).real()) << ','
                    << detail::fmt17(at(m, n).imag()) << '\n';
    }
};

/// Normalized Gram matrix of the eigenfunctions under the deformed product.
/// Off-diagonal magnitudes are the orthogonality defects.
inline GramMatrix gram(const ModelParams& p, int n_max, int order = 256) {
    if (n_max < 1) throw RejectError(Reject::Count, "need n_max >= 1");
    GramMatrix g{n_max, std::vector<std::complex<double>>(size_t(n_max) * n_max)};
    std::vector<double> norms(n_max);
    std::vector<std::vector<std::complex<double>>> raw(n_max,
                                                       std::vector<std::complex<double>>(n_max));
    for (int m = 0; m < n_max; ++m)
        for (int n = m; n < n_max; ++n) {
            auto v = eigen_inner_product(p, m, n, order);
            raw[m][n] = v;
            raw[n][m] = std::conj(v);
        }
    for (int m = 0; m < n_max; ++m) norms[m] = std::sqrt(raw[m][m].real());
    for (int m = 0; m < n_max; ++m)
        for (int n = 0; n < n_max; ++n)
            g.entries[m * n_max + n] = raw[m][n] / (norms[m] * norms[n]);
    return g;
}

/// x acting on a test function: x f = i hbar [(1 + beta p^2) f' + gamma p f].
inline ComplexFn position_applied(const ModelParams& p, const TestFunction& t) {
    return [p, t](double mom) {
        std::complex<double> i(0.0, 1.0);
        return i * p.hbar *
               ((1.0 + p.beta * mom * mom) * t.df(mom) + p.gamma * mom * t.f(mom));
    };
}

/// |<phi|x psi> - <x phi|psi>| on inputs normalized under the chosen weight
/// exponent; vanishes only at the canonical exponent gamma/beta - 1.
inline double hermiticity_defect(const ModelParams& p, const TestFunction& phi,
                                 const TestFunction& psi, double exponent, int order = 256) {
    auto rule = default_rule(p, order);
    auto ip = [&](const ComplexFn& a, const ComplexFn& b) {
        return detail::weighted_integral(p, a, b, exponent, rule);
    };
    double nphi = std::sqrt(ip(phi.f, phi.f).real());
    double npsi = std::sqrt(ip(psi.f, psi.f).real());
    auto xpsi = position_applied(p, psi);
    auto xphi = position_applied(p, phi);
    auto lhs = ip(phi.f, xpsi);
    auto rhs = ip(xphi, psi.f);
    return std::abs(lhs - rhs) / (nphi * npsi);
}

inline double hermiticity_defect(const ModelParams& p, const TestFunction& phi,
                                 const TestFunction& psi) {
    return hermiticity_defect(p, phi, psi, p.gamma / p.beta - 1.0);
}

/// N_n with <N_n psi_n | N_n psi_n> = 1.
inline double normalization(const ModelParams& p, int n, int order = 256) {
    if (n < 0) throw RejectError(Reject::Level, "level index must be non-negative");
    return 1.0 / std::sqrt(eigen_inner_product(p, n, n, order).real());
}

/// The relation that does hold level to level for nonzero vector coupling:
/// <psi_m | (E_m + E_n - 2 mu x) | psi_n> = 0 for m != n. Returned normalized
/// by the norms and the energy scale.
inline double pencil_orthogonality_defect(const ModelParams& p, int m, int n, int order = 256) {
    double Em = kg_energy(p, m), En = kg_energy(p, n);
    ComplexFn fm = [&](double mom) { return psi(p, Em, m, mom); };
    ComplexFn fn = [&](double mom) { return psi(p, En, n, mom); };
    ComplexFn xfn = [&](double mom) {
        std::complex<double> i(0.0, 1.0);
        return i * p.hbar *
               ((1.0 + p.beta * mom * mom) * psi_derivative(p, En, n, mom) +
                p.gamma * mom * psi(p, En, n, mom));
    };
    auto plain = inner_product(p, fm, fn, order);
    auto xterm = inner_product(p, fm, xfn, order);
    auto val = (Em + En) * plain - 2.0 * p.mu * xterm;
    double nm = std::sqrt(inner_product(p, fm, fm, order).real());
    double nn = std::sqrt(inner_product(p, fn, fn, order).real());
    return std::abs(val) / (nm * nn * (Em + En));
}

}  // namespace kgml
