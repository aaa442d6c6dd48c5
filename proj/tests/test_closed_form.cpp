#include "test_support.hpp"

#include <cmath>
#include <complex>

#include "kgml/closed_form.hpp"
#include "kgml/transform.hpp"

using namespace kgml;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

// Non-recursive Jacobi oracle: the explicit binomial sum
// P_n^(a,b)(x) = sum_s C(n+a, n-s) C(n+b, s) ((x-1)/2)^s ((x+1)/2)^(n-s).
static double jacobi_sum(int n, double a, double b, double x) {
    auto gbinom = [](double top, int k) {
        return std::tgamma(top + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(top - k + 1.0));
    };
    double acc = 0.0;
    for (int s = 0; s <= n; ++s)
        acc += gbinom(n + a, n - s) * gbinom(n + b, s) * std::pow(0.5 * (x - 1.0), s) *
               std::pow(0.5 * (x + 1.0), n - s);
    return acc;
}

TEST_CASE("jacobi recurrence") {
    CHECK(jacobi_eval(0, 0.3, -0.2, 0.7) == 1.0);
    CHECK_THAT(jacobi_eval(1, 1.2, 1.2, -0.4), WithinRel(2.2 * -0.4, 1e-15));
    CHECK_THAT(jacobi_eval(2, 1.5, 1.5, 0.3), WithinRel(oracle::jacobi_2_15_15_03, 1e-14));

    SECTION("matches the explicit binomial sum") {
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> par(-0.4, 3.0), arg(-1.0, 1.0);
        for (int i = 0; i < 200; ++i) {
            double a = par(rng), b = par(rng), x = arg(rng);
            int n = 1 + int(rng() % 4);
            CHECK_THAT(jacobi_eval(n, a, b, x), WithinAbs(jacobi_sum(n, a, b, x), 1e-11));
        }
    }
    SECTION("domain rejections") {
        CHECK_THROWS_AS(jacobi_eval(-1, 0.5, 0.5, 0.0), RejectError);
        CHECK_THROWS_AS(jacobi_eval(2, -1.0, 0.5, 0.0), RejectError);
        CHECK_THROWS_AS(jacobi_eval(2, 0.5, -1.5, 0.0), RejectError);
    }
}

TEST_CASE("potential strength and the defining quadratic") {
    auto p = reference_params();
    auto sf = potential_strength(p);
    CHECK_THAT(sf.v0, WithinRel(oracle::v0, 1e-15));
    CHECK_THAT(sf.a_coeff, WithinRel(oracle::a_coeff, 1e-14));
    CHECK_THAT(sf.box_half_width, WithinRel(oracle::box_half, 1e-15));
    CHECK_THAT(sf.a_coeff * (sf.a_coeff - std::sqrt(p.beta)), WithinRel(sf.v0, 1e-14));
    CHECK(sf.a_coeff > std::sqrt(p.beta));

    SECTION("degenerate coupling") {
        CHECK_THAT(a_from_v0(0.37, 0.0), WithinRel(std::sqrt(0.37), 1e-15));
    }
    SECTION("random bundles") {
        std::mt19937_64 rng(33);
        for (int i = 0; i < 1000; ++i) {
            auto q = ModelParams::validate(random_valid(rng));
            auto s = potential_strength(q);
            double sb = std::sqrt(q.beta);
            CHECK_THAT(s.a_coeff * (s.a_coeff - sb), WithinRel(s.v0, 1e-14));
        }
    }
}

TEST_CASE("schrodinger energies") {
    auto p = reference_params();
    CHECK_THAT(schrodinger_energy(p, 0), WithinRel(oracle::e0, 1e-14));
    CHECK_THAT(schrodinger_energy(p, 1), WithinRel(oracle::e1, 1e-14));
    CHECK_THAT(schrodinger_energy(p, 5), WithinRel(oracle::e5, 1e-14));
    CHECK_THROWS_AS(schrodinger_energy(p, -1), RejectError);

    auto sf = potential_strength(p);
    double sb = std::sqrt(p.beta);
    // e_0 - v0 = beta/2 + sqrt(beta)/2 * sqrt(beta + 4 v0)
    CHECK_THAT(schrodinger_energy(p, 0) - sf.v0,
               WithinRel(0.5 * p.beta + 0.5 * sb * std::sqrt(p.beta + 4.0 * sf.v0), 1e-13));
    for (int n = 0; n <= 50; ++n) CHECK(schrodinger_energy(p, n) > sf.v0);
}

TEST_CASE("bound-state energies") {
    auto p = reference_params();
    CHECK_THAT(kg_energy(p, 0), WithinRel(oracle::E0, 1e-14));
    CHECK_THAT(kg_energy(p, 1), WithinRel(oracle::E1, 1e-14));
    CHECK_THAT(kg_energy(p, 5), WithinRel(oracle::E5, 1e-14));
    CHECK_THROWS_AS(kg_energy(p, -1), RejectError);

    SECTION("route equivalence with the inverted energy map") {
        std::mt19937_64 rng(35);
        for (int i = 0; i < 200; ++i) {
            auto q = ModelParams::validate(random_valid(rng));
            for (int n = 0; n <= 10; ++n)
                CHECK_THAT(kg_from_schrodinger(q, schrodinger_energy(q, n)),
                           WithinRel(kg_energy(q, n), 1e-12));
        }
    }
    SECTION("mu = 0 reduction") {
        RawParams r;
        r.mu = 0.0;
        auto q = ModelParams::validate(r);
        for (int n = 0; n <= 5; ++n) {
            double inner =
                q.beta * (double(n) * n + n + 0.5) +
                q.beta * (n + 0.5) *
                    std::sqrt(1.0 + 4.0 * q.c * q.c /
                                        (q.hbar * q.hbar * q.beta * q.beta * q.lambda * q.lambda));
            CHECK_THAT(kg_energy(q, n),
                       WithinRel(q.hbar * q.lambda * std::sqrt(inner), 1e-14));
        }
    }
    SECTION("strictly increasing in n") {
        std::mt19937_64 rng(36);
        for (int i = 0; i < 50; ++i) {
            auto q = ModelParams::validate(random_valid(rng));
            double prev = kg_energy(q, 0);
            for (int n = 1; n <= 50; ++n) {
                double cur = kg_energy(q, n);
                CHECK(cur > prev);
                prev = cur;
            }
        }
    }
    SECTION("gamma never enters the spectrum") {
        for (double g : {0.25, 0.5}) {
            auto q = reference_params(g);
            for (int n = 0; n <= 10; ++n) CHECK(kg_energy(q, n) == kg_energy(p, n));
        }
    }
}

TEST_CASE("small-beta expansion") {
    auto p = reference_params();

    SECTION("printed coefficients") {
        auto t0 = kg_energy_expansion(p, 0);
        auto t1 = kg_energy_expansion(p, 1);
        auto t2 = kg_energy_expansion(p, 2);
        CHECK_THAT(t0.e0, WithinRel(oracle::exp_e0_n0, 1e-13));
        CHECK_THAT(t1.e0, WithinRel(oracle::exp_e0_n1, 1e-13));
        CHECK_THAT(t2.e0, WithinRel(oracle::exp_e0_n2, 1e-13));
        CHECK_THAT(t0.c1, WithinRel(oracle::exp_c1_n0, 1e-13));
        CHECK_THAT(t1.c1, WithinRel(oracle::exp_c1_n1, 1e-13));
        CHECK_THAT(t2.c1, WithinRel(oracle::exp_c1_n2, 1e-13));
        CHECK_THROWS_AS(kg_energy_expansion(p, -1), RejectError);
    }
    SECTION("massless bundles carry no rest shift") {
        RawParams r;
        r.mass = 0.0;
        auto q = ModelParams::validate(r);
        auto t = kg_energy_expansion(q, 3);
        double bare = std::sqrt(q.hbar * q.c / (q.lambda * q.lambda)) *
                      std::pow(q.lambda2_minus_mu2(), 0.75) * std::sqrt(7.0);
        CHECK_THAT(t.e0, WithinRel(bare, 1e-14));
    }
    SECTION("remainder scales as beta^2 with stable coefficient") {
        for (int n = 0; n <= 2; ++n) {
            double k_first = 0.0, k_last = 0.0;
            for (double b : {1e-3, 1e-4, 1e-5}) {
                RawParams r;
                r.beta = b;
                auto q = ModelParams::validate(r);
                auto t = kg_energy_expansion(q, n);
                double k = std::fabs(kg_energy(q, n) - t.e0 - t.c1 * b) / (b * b);
                if (b == 1e-3) k_first = k;
                if (b == 1e-5) k_last = k;
            }
            CHECK(k_first / k_last > 0.9);
            CHECK(k_first / k_last < 1.1);
        }
    }
    SECTION("beta to zero recovers the leading term") {
        RawParams r;
        r.beta = 1e-10;
        auto q = ModelParams::validate(r);
        auto t = kg_energy_expansion(q, 0);
        CHECK_THAT(kg_energy(q, 0), WithinAbs(t.e0, 2.0 * t.c1 * 1e-10));
    }
}

TEST_CASE("box eigenfunctions phi_n") {
    auto p = reference_params();
    CHECK_THAT(phi(p, 0, 1.0), WithinRel(oracle::phi0_at_1, 1e-13));
    CHECK(phi(p, 1, 0.0) == 0.0);
    CHECK(phi(p, 3, 0.0) == 0.0);
    CHECK_THROWS_AS(phi(p, 0, oracle::box_half), RejectError);
    CHECK_THROWS_AS(phi(p, 0, -6.0), RejectError);
    CHECK_THROWS_AS(phi(p, -1, 0.0), RejectError);

    SECTION("parity") {
        for (int n = 0; n <= 4; ++n)
            for (int i = 1; i <= 12; ++i) {
                double q = 0.37 * i;
                double sign = n % 2 == 0 ? 1.0 : -1.0;
                CHECK_THAT(phi(p, n, -q), WithinAbs(sign * phi(p, n, q), 1e-13));
            }
    }
    SECTION("vanishes toward the walls") {
        CHECK(std::fabs(phi(p, 0, oracle::box_half * (1 - 1e-9))) < 1e-50);
    }
}

TEST_CASE("momentum-space eigenfunctions psi_n") {
    auto p = reference_params();
    double E0 = kg_energy(p, 0);

    SECTION("frozen point value") {
        auto v = psi(p, E0, 0, 2.0);
        CHECK_THAT(std::abs(v), WithinRel(oracle::abs_psi0_at_2, 1e-13));
        CHECK_THAT(v.real(), WithinAbs(oracle::psi0_at_2_re, 1e-14));
        CHECK_THAT(v.imag(), WithinAbs(oracle::psi0_at_2_im, 1e-14));
    }
    SECTION("phase is one at p = 0") {
        auto v = psi(p, E0, 0, 0.0);
        CHECK(v.imag() == 0.0);
        CHECK(v.real() == 1.0);
    }
    SECTION("modulus is even in p") {
        for (int n = 0; n <= 3; ++n) {
            double En = kg_energy(p, n);
            for (int i = 1; i <= 15; ++i) {
                double mom = 0.45 * i;
                CHECK_THAT(std::abs(psi(p, En, n, -mom)),
                           WithinRel(std::abs(psi(p, En, n, mom)) + 1e-300, 1e-12));
            }
        }
    }
    SECTION("equals gauge factor times phi(q(p)), also at nonzero gamma") {
        for (double g : {0.0, 0.25}) {
            auto q = reference_params(g);
            for (int n = 0; n <= 4; ++n) {
                double En = kg_energy(q, n);
                for (int i = -14; i <= 14; ++i) {
                    double mom = 0.5 * i + 0.21;
                    auto direct = psi(q, En, n, mom);
                    auto routed = gauge_factor(q, En, mom) * phi(q, n, q_map(q, mom));
                    CHECK_THAT(std::abs(direct - routed),
                               WithinAbs(0.0, 1e-13 * std::max(1.0, std::abs(direct))));
                }
            }
        }
    }
    SECTION("derivative matches a central difference") {
        for (int n = 0; n <= 2; ++n) {
            double En = kg_energy(p, n);
            for (double mom : {-1.7, 0.3, 2.5}) {
                double h = 1e-5;
                auto num = (psi(p, En, n, mom + h) - psi(p, En, n, mom - h)) / (2.0 * h);
                CHECK_THAT(std::abs(psi_derivative(p, En, n, mom) - num), WithinAbs(0.0, 1e-8));
            }
        }
    }
}

TEST_CASE("spectrum table") {
    auto p = reference_params();
    auto rows = spectrum(p, 5);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].n == 0);
    CHECK_THAT(rows[0].eps_n, WithinAbs(oracle::eps0, 1e-14));
    CHECK_THAT(rows[5].E_n, WithinRel(oracle::E5, 1e-14));
    CHECK_THROWS_AS(spectrum(p, -1), RejectError);
}
