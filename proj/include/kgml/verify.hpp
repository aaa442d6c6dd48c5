#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "kgml/algebraic.hpp"
#include "kgml/closed_form.hpp"
#include "kgml/deformed_measure.hpp"
#include "kgml/model.hpp"
#include "kgml/numeric_solver.hpp"
#include "kgml/transform.hpp"

namespace kgml {

enum class Suite { All, ClosedForm, Numeric, Ladder, Measure, Expansion };

inline const char* suite_name(Suite s) {
    switch (s) {
        case Suite::All: return "all";
        case Suite::ClosedForm: return "closedform";
        case Suite::Numeric: return "numeric";
        case Suite::Ladder: return "ladder";
        case Suite::Measure: return "measure";
        case Suite::Expansion: return "expansion";
    }
    return "?";
}

inline Suite suite_from_name(const std::string& s) {
    for (Suite v : {Suite::All, Suite::ClosedForm, Suite::Numeric, Suite::Ladder, Suite::Measure,
                    Suite::Expansion})
        if (s == suite_name(v)) return v;
    throw RejectError(Reject::Domain, "unknown suite '" + s + "'");
}

/// One named check: pass iff measured <= tolerance (every measure below is
/// oriented as a defect, so smaller is better).
struct CheckResult {
    std::string name;
    bool passed;
    double measured;
    double tolerance;
    std::string detail;
    double seconds = 0.0;  // wall time; diagnostics only, never serialized
};

namespace checks {

/// Deterministic valid parameter bundles for property-style checks.
inline RawParams random_bundle(std::mt19937_64& rng, bool measure_friendly = false) {
    auto uni = [&](double a, double b) {
        return a + (b - a) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    };
    RawParams r;
    r.hbar = uni(0.5, 2.0);
    r.c = uni(0.5, 2.0);
    r.mass = rng() % 10 == 0 ? 0.0 : uni(0.1, 2.0);
    r.beta = measure_friendly ? uni(0.05, 0.5) : std::exp(uni(std::log(0.01), std::log(0.5)));
    r.lambda = uni(0.5, 3.0);
    r.mu = r.lambda * uni(-0.9, 0.9);
    r.gamma = measure_friendly ? uni(0.0, r.beta) : 0.0;
    return r;
}

inline CheckResult defining_quadratic(const ModelParams& base) {
    std::mt19937_64 rng(101);
    double worst = 0.0;
    auto probe = [&](const ModelParams& p) {
        auto sf = potential_strength(p);
        double sb = std::sqrt(p.beta);
        worst = std::max(worst, std::fabs(sf.a_coeff * (sf.a_coeff - sb) - sf.v0) / sf.v0);
    };
    probe(base);
    for (int i = 0; i < 1000; ++i) probe(ModelParams::validate(random_bundle(rng)));
    return {"closedform.defining_quadratic", worst <= 1e-14, worst, 1e-14,
            "max rel |A(A-sqrt(beta)) - v0| over 1000 random bundles"};
}

inline CheckResult route_equivalence(const ModelParams& base) {
    std::mt19937_64 rng(102);
    double worst = 0.0;
    auto probe = [&](const ModelParams& p) {
        for (int n = 0; n <= 10; ++n) {
            double direct = kg_energy(p, n);
            double mapped = kg_from_schrodinger(p, schrodinger_energy(p, n));
            worst = std::max(worst, std::fabs(direct - mapped) / std::fabs(direct));
        }
    };
    probe(base);
    for (int i = 0; i < 100; ++i) probe(ModelParams::validate(random_bundle(rng)));
    return {"closedform.route_equivalence", worst <= 1e-12, worst, 1e-12,
            "printed energy formula vs inverted energy map, n <= 10"};
}

inline CheckResult monotonicity(const ModelParams& base) {
    std::mt19937_64 rng(103);
    double min_gap = 1e300;
    auto probe = [&](const ModelParams& p) {
        double prev = kg_energy(p, 0);
        for (int n = 1; n <= 50; ++n) {
            double cur = kg_energy(p, n);
            min_gap = std::min(min_gap, cur - prev);
            prev = cur;
        }
    };
    probe(base);
    for (int i = 0; i < 50; ++i) probe(ModelParams::validate(random_bundle(rng)));
    return {"closedform.monotonicity", min_gap > 0.0, -min_gap, 0.0,
            "levels must increase strictly; measured is -min(E_{n+1}-E_n)"};
}

inline CheckResult gamma_invariance_spectrum(const ModelParams& base) {
    double worst = 0.0;
    RawParams raw{base.mass, base.c, base.hbar, base.lambda, base.mu, base.beta, 0.0};
    auto ref = ModelParams::validate(raw);
    for (double g : {0.25, 0.5}) {
        raw.gamma = g;
        auto p = ModelParams::validate(raw);
        for (int n = 0; n <= 10; ++n)
            worst = std::max(worst, std::fabs(kg_energy(p, n) - kg_energy(ref, n)));
    }
    return {"closedform.gamma_invariance", worst <= 1e-12, worst, 1e-12,
            "E_n for gamma in {0, 0.25, 0.5}"};
}

inline CheckResult gauge_factorization(const ModelParams& p) {
    // psi_n(p) must equal gauge_factor * phi_n(q(p)) up to one global
    // constant per level; the constant here is exactly 1.
    double worst = 0.0;
    for (int n = 0; n <= 4; ++n) {
        double energy = kg_energy(p, n);
        for (int i = -20; i <= 20; ++i) {
            double mom = 0.35 * i;
            auto direct = psi(p, energy, n, mom);
            auto routed = gauge_factor(p, energy, mom) * phi(p, n, q_map(p, mom));
            double scale = std::max(std::abs(direct), 1e-30);
            worst = std::max(worst, std::abs(direct - routed) / scale);
        }
    }
    return {"closedform.gauge_factorization", worst <= 1e-10, worst, 1e-10,
            "psi vs rho * phi(q(p)) pointwise, n <= 4"};
}

inline std::vector<double> expansion_slopes(const ModelParams& base, double* c1_rel_worst) {
    const double betas[3] = {1e-5, 1e-4, 1e-3};
    std::vector<double> slopes;
    if (c1_rel_worst) *c1_rel_worst = 0.0;
    for (int n = 0; n <= 2; ++n) {
        double err[3], diff[3];
        RawParams raw{base.mass, base.c, base.hbar, base.lambda, base.mu, 1.0, base.gamma};
        for (int i = 0; i < 3; ++i) {
            raw.beta = betas[i];
            auto p = ModelParams::validate(raw);
            auto terms = kg_energy_expansion(p, n);
            double exact = kg_energy(p, n);
            err[i] = std::fabs(exact - terms.e0 - terms.c1 * betas[i]);
            diff[i] = exact - terms.e0;
        }
        slopes.push_back(std::log(err[2] / err[0]) / std::log(betas[2] / betas[0]));
        if (c1_rel_worst) {
            // two-parameter least squares (C1, C2) on diff = C1 b + C2 b^2
            double s11 = 0, s12 = 0, s22 = 0, r1 = 0, r2 = 0;
            for (int i = 0; i < 3; ++i) {
                double b = betas[i], b2 = b * b;
                s11 += b * b;
                s12 += b * b2;
                s22 += b2 * b2;
                r1 += b * diff[i];
                r2 += b2 * diff[i];
            }
            double det = s11 * s22 - s12 * s12;
            double c1_fit = (s22 * r1 - s12 * r2) / det;
            RawParams r0 = raw;
            r0.beta = 1e-4;
            double c1_true = kg_energy_expansion(ModelParams::validate(r0), n).c1;
            *c1_rel_worst =
                std::max(*c1_rel_worst, std::fabs(c1_fit - c1_true) / std::fabs(c1_true));
        }
    }
    return slopes;
}

inline CheckResult expansion_error_scaling(const ModelParams& base) {
    auto slopes = expansion_slopes(base, nullptr);
    double worst = 0.0;
    for (double s : slopes) worst = std::max(worst, std::fabs(s - 2.0));
    return {"expansion.error_scaling", worst <= 0.05, worst, 0.05,
            "log-log slope of the two-term remainder vs 2.0, n in {0,1,2}"};
}

inline CheckResult expansion_first_order(const ModelParams& base) {
    double c1_rel = 0.0;
    expansion_slopes(base, &c1_rel);
    return {"expansion.first_order_coefficient", c1_rel <= 0.005, c1_rel, 0.005,
            "fitted beta coefficient vs closed form, n in {0,1,2}"};
}

inline CheckResult numeric_agreement(const ModelParams& p, double* order_out = nullptr) {
    GridSpec grids[3] = {GridSpec::for_params(p, 2048), GridSpec::for_params(p, 4096),
                         GridSpec::for_params(p, 8192)};
    auto res = refine(p, 6, grids);
    double worst = 0.0;
    for (int n = 0; n < 6; ++n) {
        double exact = schrodinger_energy(p, n);
        worst = std::max(worst, std::fabs(res.e_values[n] - exact) / exact);
    }
    if (order_out) *order_out = res.order_estimate;
    return {"numeric.spectrum_agreement", worst <= 1e-7, worst, 1e-7,
            "Richardson-extrapolated eigenvalues vs (A + sqrt(beta) n)^2, n <= 5"};
}

inline CheckResult numeric_order(const ModelParams& p) {
    double order = 0.0;
    numeric_agreement(p, &order);
    return {"numeric.convergence_order", std::fabs(order - 2.0) <= 0.05,
            std::fabs(order - 2.0), 0.05, "observed order of the 3-point scheme vs 2.0"};
}

inline CheckResult energy_map_roundtrip(const ModelParams& p) {
    double worst = 0.0;
    double mc2 = std::max(p.rest_energy(), 0.1);
    for (int i = 0; i <= 100; ++i) {
        double E = 10.0 * mc2 * i / 100.0;
        double back = energy_from_e(p, schrodinger_from_kg(p, E));
        worst = std::max(worst, std::fabs(back - E) / std::max(1.0, std::fabs(E)));
    }
    return {"numeric.energy_map_roundtrip", worst <= 1e-13, worst, 1e-13,
            "energy_from_e after the forward map on E in [0, 10 m c^2]"};
}

inline CheckResult no_states_below_floor(const ModelParams& p) {
    auto op = discretize(p, GridSpec::for_params(p, 4096));
    int count = sturm_count(op, potential_strength(p).v0);
    return {"numeric.no_states_below_floor", count == 0, double(count), 0.0,
            "Sturm count below the potential floor v0"};
}

inline double residual_norm(const ModelParams& p, int n, int count) {
    auto samples = sample_eigenfunction(p, n, count);
    double energy = kg_energy(p, n);
    auto applied = apply_raw_operator(p, energy, samples);
    double eps = raw_eigenvalue(p, energy);
    // deformed-norm ratio through the q substitution (trapezoid on the grid)
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i + 1 < samples.size(); ++i) {
        double w0 = weight(p, samples.coords[i]);
        double w1 = weight(p, samples.coords[i + 1]);
        double dp = samples.coords[i + 1] - samples.coords[i];
        auto r0 = applied.values[i] - eps * samples.values[i];
        auto r1 = applied.values[i + 1] - eps * samples.values[i + 1];
        num += 0.5 * dp * (std::norm(r0) * w0 + std::norm(r1) * w1);
        den += 0.5 * dp *
               (std::norm(samples.values[i]) * w0 + std::norm(samples.values[i + 1]) * w1);
    }
    return std::sqrt(num / den);
}

inline CheckResult eigen_residual(const ModelParams& p) {
    double worst = 0.0;
    for (int n = 0; n <= 5; ++n) worst = std::max(worst, residual_norm(p, n, 8001));
    return {"numeric.eigen_residual", worst <= 1e-8, worst, 1e-8,
            "deformed-norm residual of the raw operator on psi_n, n <= 5"};
}

inline CheckResult eigen_residual_order(const ModelParams& p) {
    // order measured on the coarser grid pair, where truncation still
    // dominates rounding
    double worst_order_defect = 0.0, min_order = 1e9;
    for (int n = 0; n <= 5; ++n) {
        double r1 = residual_norm(p, n, 2001);
        double r2 = residual_norm(p, n, 4001);
        double order = std::log2(r1 / r2);
        min_order = std::min(min_order, order);
        worst_order_defect = std::max(worst_order_defect, 3.8 - order);
    }
    return {"numeric.eigen_residual_order", min_order >= 3.8,
            std::max(0.0, worst_order_defect), 0.0,
            "shortfall of the observed stencil order below 3.8"};
}

inline CheckResult ladder_identity(const ModelParams& base) {
    std::mt19937_64 rng(104);
    double worst = 0.0;
    auto probe = [&](const ModelParams& p) {
        for (int n = 0; n <= 10; ++n) {
            double a = ladder_energy(p, n), b = kg_energy(p, n);
            worst = std::max(worst, std::fabs(a - b) / std::fabs(b));
        }
    };
    probe(base);
    for (int i = 0; i < 100; ++i) probe(ModelParams::validate(random_bundle(rng)));
    return {"ladder.spectrum_identity", worst <= 1e-12, worst, 1e-12,
            "shape-invariance partial sums vs closed form, n <= 10"};
}

inline CheckResult superpotential_identity(const ModelParams& base) {
    std::mt19937_64 rng(105);
    double worst = 0.0;
    auto probe = [&](const ModelParams& p) {
        double c2 = LadderState(p, kg_energy(p, 0)).c2();
        double other = std::sqrt(p.beta) * potential_strength(p).a_coeff;
        worst = std::max(worst, std::fabs(c2 - other) / other);
    };
    probe(base);
    for (int i = 0; i < 1000; ++i) probe(ModelParams::validate(random_bundle(rng)));
    return {"ladder.superpotential_identity", worst <= 1e-14, worst, 1e-14,
            "c2 vs sqrt(beta) A over 1000 random bundles"};
}

inline double annihilation_norm(const ModelParams& p, int count) {
    auto samples = sample_eigenfunction(p, 0, count);
    double E0 = kg_energy(p, 0);
    auto applied = apply_ladder_op(p, E0, LadderOp::B, samples);
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i + 1 < samples.size(); ++i) {
        double dp = samples.coords[i + 1] - samples.coords[i];
        num += 0.5 * dp * (std::norm(applied.values[i]) + std::norm(applied.values[i + 1]));
        den += 0.5 * dp * (std::norm(samples.values[i]) + std::norm(samples.values[i + 1]));
    }
    return std::sqrt(num / den);
}

inline CheckResult ground_state_annihilation(const ModelParams& p) {
    double r1 = annihilation_norm(p, 1001);
    double r2 = annihilation_norm(p, 2001);
    double r3 = annihilation_norm(p, 4001);
    double order = std::log2(r1 / r2);
    double order2 = std::log2(r2 / r3);
    bool ok = r3 <= 1e-8 && std::min(order, order2) >= 3.8;
    return {"ladder.ground_state_annihilation", ok, r3, 1e-8,
            "||B psi_0||/||psi_0|| at the finest grid; observed orders " +
                std::to_string(order) + ", " + std::to_string(order2)};
}

inline CheckResult shape_invariance(const ModelParams& p) {
    double E0 = kg_energy(p, 0);
    std::vector<SampledFunction> battery;
    for (int variant = 0; variant < 3; ++variant) {
        SampledFunction u;
        int count = 8001;
        u.coords.resize(count);
        u.values.resize(count);
        for (int i = 0; i < count; ++i) {
            double x = -10.0 + 20.0 * i / (count - 1);
            u.coords[i] = x;
            double env = std::exp(-0.5 * x * x);
            if (variant == 0) u.values[i] = env;
            else if (variant == 1) u.values[i] = env * (1.0 + 0.3 * x);
            else u.values[i] = env * std::complex<double>(std::cos(0.2 * x), std::sin(0.2 * x));
        }
        battery.push_back(std::move(u));
    }
    double worst = std::max(shape_invariance_check(p, E0, 1, battery),
                            shape_invariance_check(p, E0, 2, battery));
    return {"ladder.shape_invariance", worst <= 1e-8, worst, 1e-8,
            "B(s_i)C(s_i) vs C(s_{i+1})B(s_{i+1}) + R_i on smooth test functions"};
}

inline CheckResult riccati(const ModelParams& p) {
    double E0 = kg_energy(p, 0);
    double worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
        double mom = -10.0 + 0.1 * i;
        worst = std::max(worst, std::fabs(riccati_residual(p, E0, mom)));
    }
    return {"ladder.riccati_residual", worst <= 1e-12, worst, 1e-12,
            "pointwise Riccati closure on p in [-10, 10]"};
}

inline CheckResult orthogonality(const ModelParams& base) {
    std::mt19937_64 rng(106);
    double worst = gram(base, 7).max_off_diagonal();
    for (int i = 0; i < 3; ++i) {
        auto p = ModelParams::validate(random_bundle(rng, true));
        worst = std::max(worst, gram(p, 7).max_off_diagonal());
    }
    return {"measure.orthogonality", worst <= 1e-8, worst, 1e-8,
            "normalized Gram off-diagonals, m,n <= 6, given + 3 random bundles"};
}

inline CheckResult orthogonality_stability(const ModelParams& p) {
    auto g1 = gram(p, 7, 256);
    auto g2 = gram(p, 7, 512);
    double worst = 0.0;
    for (size_t i = 0; i < g1.entries.size(); ++i)
        worst = std::max(worst, std::abs(g1.entries[i] - g2.entries[i]));
    return {"measure.orthogonality_stability", worst <= 1e-10, worst, 1e-10,
            "Gram entries under quadrature-order doubling (256 vs 512)"};
}

/// Deterministic smooth decaying pairs used by the hermiticity checks.
inline std::vector<std::pair<TestFunction, TestFunction>> hermiticity_pairs(int count,
                                                                            unsigned seed) {
    std::mt19937_64 rng(seed);
    auto uni = [&](double a, double b) {
        return a + (b - a) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    };
    auto make = [&]() {
        double a0 = uni(0.5, 1.5) * (rng() % 2 ? 1 : -1);
        double a1 = uni(0.5, 1.5) * (rng() % 2 ? 1 : -1);
        double a2 = uni(0.5, 1.5) * (rng() % 2 ? 1 : -1);
        double s = uni(0.3, 1.0);
        double th = uni(0.3, 1.0) * (rng() % 2 ? 1 : -1);
        TestFunction t;
        t.f = [=](double x) {
            return (a0 + a1 * x + a2 * x * x) * std::exp(-0.5 * s * x * x) *
                   std::polar(1.0, th * x);
        };
        t.df = [=](double x) {
            std::complex<double> poly(a0 + a1 * x + a2 * x * x);
            std::complex<double> dlog(-s * x, th);
            return ((a1 + 2.0 * a2 * x) + poly * dlog) * std::exp(-0.5 * s * x * x) *
                   std::polar(1.0, th * x);
        };
        return t;
    };
    std::vector<std::pair<TestFunction, TestFunction>> out;
    for (int i = 0; i < count; ++i) out.emplace_back(make(), make());
    return out;
}

inline CheckResult hermiticity_canonical(const ModelParams& p) {
    double worst = 0.0;
    for (auto& [f, g] : hermiticity_pairs(20, 107))
        worst = std::max(worst, hermiticity_defect(p, f, g));
    return {"measure.hermiticity_canonical", worst <= 1e-10, worst, 1e-10,
            "x-symmetry defect at the exponent gamma/beta - 1, 20 random pairs"};
}

inline CheckResult hermiticity_discrimination(const ModelParams& p) {
    double least = 1e300;
    for (auto& [f, g] : hermiticity_pairs(20, 107))
        least = std::min(least, hermiticity_defect(p, f, g, p.gamma / p.beta - 2.0));
    bool ok = least >= 1e-2;
    return {"measure.hermiticity_discrimination", ok, ok ? 0.0 : 1e-2 - least, 0.0,
            "shortfall of the perturbed-exponent defect below 1e-2; min defect " +
                std::to_string(least)};
}

inline CheckResult gamma_invariance_gram(const ModelParams& base) {
    RawParams raw{base.mass, base.c, base.hbar, base.lambda, base.mu, base.beta, 0.0};
    auto ref = gram(ModelParams::validate(raw), 5);
    double worst = 0.0;
    for (double g : {0.25, 0.5}) {
        raw.gamma = g;
        auto cur = gram(ModelParams::validate(raw), 5);
        for (size_t i = 0; i < ref.entries.size(); ++i)
            worst = std::max(worst, std::abs(cur.entries[i] - ref.entries[i]));
    }
    return {"measure.gamma_invariance_gram", worst <= 1e-10, worst, 1e-10,
            "Gram entries for gamma in {0, 0.25, 0.5}"};
}

}  // namespace checks

/// Runs the named suite at the given parameters; results sorted by name.
inline std::vector<CheckResult> run_suite(const ModelParams& p, Suite suite) {
    std::vector<CheckResult> out;
    auto add = [&](auto&& fn) {
        auto t0 = std::chrono::steady_clock::now();
        CheckResult r = fn(p);
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(std::move(r));
    };
    bool all = suite == Suite::All;
    if (all || suite == Suite::ClosedForm) {
        add(checks::defining_quadratic);
        add(checks::route_equivalence);
        add(checks::monotonicity);
        add(checks::gamma_invariance_spectrum);
        add(checks::gauge_factorization);
    }
    if (all || suite == Suite::Numeric) {
        add([](const ModelParams& q) { return checks::numeric_agreement(q); });
        add(checks::numeric_order);
        add(checks::energy_map_roundtrip);
        add(checks::no_states_below_floor);
        add(checks::eigen_residual);
        add(checks::eigen_residual_order);
    }
    if (all || suite == Suite::Ladder) {
        add(checks::ladder_identity);
        add(checks::superpotential_identity);
        add(checks::ground_state_annihilation);
        add(checks::shape_invariance);
        add(checks::riccati);
    }
    if (all || suite == Suite::Measure) {
        add(checks::orthogonality);
        add(checks::orthogonality_stability);
        add(checks::hermiticity_canonical);
        add(checks::hermiticity_discrimination);
        add(checks::gamma_invariance_gram);
    }
    if (all || suite == Suite::Expansion) {
        add(checks::expansion_error_scaling);
        add(checks::expansion_first_order);
    }
    std::sort(out.begin(), out.end(),
              [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
    return out;
}

inline bool all_passed(const std::vector<CheckResult>& rs) {
    for (const auto& r : rs)
        if (!r.passed) return false;
    return true;
}

}  // namespace kgml
