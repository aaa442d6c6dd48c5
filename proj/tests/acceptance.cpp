// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exit code is the number of failures.
//
// Usage: kgml_acceptance [path-to-cli-binary]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "kgml/algebraic.hpp"
#include "kgml/closed_form.hpp"
#include "kgml/deformed_measure.hpp"
#include "kgml/model.hpp"
#include "kgml/numeric_solver.hpp"
#include "kgml/transform.hpp"
#include "kgml/verify.hpp"

using namespace kgml;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& what, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", criterion, what.c_str(),
                detail.c_str());
    if (!ok) ++g_failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

ModelParams p1() {
    return ModelParams::validate(RawParams{});  // mass=c=hbar=1, lambda=2, mu=1, beta=0.1, gamma=0
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. three-route spectrum agreement at P1, n = 0..5
void criterion_1() {
    auto t0 = std::chrono::steady_clock::now();
    auto p = p1();
    double ladder_dev = 0.0;
    for (int n = 0; n <= 5; ++n) {
        double closed = kg_energy(p, n);
        ladder_dev = std::max(ladder_dev, std::fabs(ladder_energy(p, n) - closed) /
                                              std::fabs(closed));
    }
    GridSpec grids[3] = {GridSpec::for_params(p, 2048), GridSpec::for_params(p, 4096),
                         GridSpec::for_params(p, 8192)};
    auto res = refine(p, 6, grids);
    double numeric_dev = 0.0;
    for (int n = 0; n <= 5; ++n) {
        double closed = kg_energy(p, n);
        double mapped = energy_from_e(p, res.e_values[n]);
        numeric_dev = std::max(numeric_dev, std::fabs(mapped - closed) / std::fabs(closed));
    }
    double dt = seconds_since(t0);
    bool ok = ladder_dev <= 1e-12 && numeric_dev <= 1e-7 && dt < 30.0;
    report(1, ok, "three-route spectrum agreement, n <= 5",
           "ladder vs closed " + fmt(ladder_dev) + " <= 1e-12; numeric vs closed " +
               fmt(numeric_dev) + " <= 1e-7; " + fmt(dt) + " s < 30 s");
}

// 2. defining quadratic and cross-module identity over 1000 random bundles
void criterion_2() {
    auto t0 = std::chrono::steady_clock::now();
    auto quad = checks::defining_quadratic(p1());
    auto c2id = checks::superpotential_identity(p1());
    double dt = seconds_since(t0);
    bool ok = quad.passed && c2id.passed && dt < 1.0;
    report(2, ok, "A(A - sqrt(beta)) = v0 and c2 = sqrt(beta) A over 1000 random bundles",
           "quadratic " + fmt(quad.measured) + ", c2 identity " + fmt(c2id.measured) +
               " <= 1e-14; " + fmt(dt) + " s < 1 s");
}

// 3. small-beta expansion: slope 2.0 +- 0.05 and first-order coefficient to 0.5%
void criterion_3() {
    auto scaling = checks::expansion_error_scaling(p1());
    auto coeff = checks::expansion_first_order(p1());
    report(3, scaling.passed && coeff.passed,
           "small-beta remainder slope and first-order coefficient, n in {0,1,2}",
           "|slope - 2| " + fmt(scaling.measured) + " <= 0.05; coefficient rel dev " +
               fmt(coeff.measured) + " <= 0.005");
}

// 4. plain-weighted Gram orthogonality at P1 and 3 random bundles
void criterion_4() {
    auto orth = checks::orthogonality(p1());
    auto stab = checks::orthogonality_stability(p1());
    report(4, orth.passed && stab.passed,
           "Gram off-diagonals under the deformed measure, m,n <= 6",
           "max off-diagonal " + fmt(orth.measured) +
               " <= 1e-8; doubling stability " + fmt(stab.measured) + " <= 1e-10");
}

// 5. hermiticity discrimination on 20 random smooth pairs
void criterion_5() {
    auto canon = checks::hermiticity_canonical(p1());
    auto discr = checks::hermiticity_discrimination(p1());
    report(5, canon.passed && discr.passed, "x-symmetry defect discriminates the exponent",
           "canonical " + fmt(canon.measured) + " <= 1e-10; " + discr.detail);
}

// 6. raw-operator eigen-residual for n <= 5 with observed order >= 3.8
void criterion_6() {
    auto resid = checks::eigen_residual(p1());
    auto order = checks::eigen_residual_order(p1());
    report(6, resid.passed && order.passed, "momentum-space eigen-residual, n <= 5",
           "residual " + fmt(resid.measured) + " <= 1e-8; order shortfall " +
               fmt(order.measured) + " (need >= 3.8)");
}

// 7. ladder-operator identities
void criterion_7() {
    auto annih = checks::ground_state_annihilation(p1());
    auto shape = checks::shape_invariance(p1());
    auto ricc = checks::riccati(p1());
    report(7, annih.passed && shape.passed && ricc.passed, "ladder-operator identities",
           "annihilation " + fmt(annih.measured) + " <= 1e-8 at order 4; shape invariance " +
               fmt(shape.measured) + " <= 1e-8; riccati " + fmt(ricc.measured) + " <= 1e-12");
}

// 8. gamma invariance of the spectrum and the Gram entries
void criterion_8() {
    auto spec = checks::gamma_invariance_spectrum(p1());
    auto gramg = checks::gamma_invariance_gram(p1());
    report(8, spec.passed && gramg.passed, "gamma invariance across {0, 0.25, 0.5}",
           "spectrum " + fmt(spec.measured) + " <= 1e-12; gram entries " + fmt(gramg.measured) +
               " <= 1e-10");
}

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& cli, const std::string& args, const std::string& tag) {
    std::string out_file = "acceptance_" + tag + ".out";
    std::string cmd = cli + " " + args + " > " + out_file + " 2> /dev/null";
    int rc = std::system(cmd.c_str());
    std::ifstream f(out_file, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    RunResult r{rc == -1 ? -1 : WEXITSTATUS(rc), os.str()};
    std::remove(out_file.c_str());
    return r;
}

// 9. CLI contract: verify --suite all exit code, runtime, determinism, and
// malformed-input behavior
void criterion_9(const std::string& cli) {
    auto t0 = std::chrono::steady_clock::now();
    auto first = run_cli(cli, "verify --suite all", "v1");
    double dt = seconds_since(t0);
    auto second = run_cli(cli, "verify --suite all", "v2");
    auto malformed = run_cli(cli, "verify --lambda 1 --mu 1", "v3");

    bool exit_zero = first.exit_code == 0;
    bool fast = dt < 60.0;
    bool identical = first.out == second.out;
    bool malformed_ok = malformed.exit_code == 2 && malformed.out.empty();
    bool ok = exit_zero && fast && identical && malformed_ok;
    report(9, ok, "CLI contract for verify --suite all at P1",
           std::string("exit ") + std::to_string(first.exit_code) + " (want 0); " + fmt(dt) +
               " s < 60 s; reruns byte-identical: " + (identical ? "yes" : "no") +
               "; malformed input exit " + std::to_string(malformed.exit_code) +
               " with no partial output: " + (malformed_ok ? "yes" : "no"));
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli = argc > 1 ? argv[1] : "./tools/kgml";
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9(cli);
    std::printf("%d of 9 criteria passed\n", 9 - g_failures);
    return g_failures;
}
