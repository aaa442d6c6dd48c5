// Command-line front end: spectrum and wavefunction tables, the independent
// finite-difference route, the shape-invariance ladder, the small-beta
// expansion, and the cross-validation suite. CSV goes to --out (default
// stdout) with 17 significant digits; verify emits a JSON report.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "kgml/algebraic.hpp"
#include "kgml/closed_form.hpp"
#include "kgml/deformed_measure.hpp"
#include "kgml/model.hpp"
#include "kgml/numeric_solver.hpp"
#include "kgml/params_io.hpp"
#include "kgml/transform.hpp"
#include "kgml/verify.hpp"

namespace {

using kgml::detail::fmt17;

struct ParamArgs {
    std::string file;
    kgml::RawParams flags;
    bool has_mass = false, has_c = false, has_hbar = false, has_lambda = false, has_mu = false,
         has_beta = false, has_gamma = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--params", file, "parameter file (key=value lines)");
        cmd->add_option("--mass", flags.mass, "rest mass")->each([this](const std::string&) {
            has_mass = true;
        });
        cmd->add_option("--c", flags.c, "speed of light")->each([this](const std::string&) {
            has_c = true;
        });
        cmd->add_option("--hbar", flags.hbar, "reduced Planck constant")
            ->each([this](const std::string&) { has_hbar = true; });
        cmd->add_option("--lambda", flags.lambda, "scalar potential slope")
            ->each([this](const std::string&) { has_lambda = true; });
        cmd->add_option("--mu", flags.mu, "vector potential slope")
            ->each([this](const std::string&) { has_mu = true; });
        cmd->add_option("--beta", flags.beta, "deformation parameter")
            ->each([this](const std::string&) { has_beta = true; });
        cmd->add_option("--gamma", flags.gamma, "representation parameter")
            ->each([this](const std::string&) { has_gamma = true; });
    }

    kgml::ModelParams resolve() const {
        kgml::RawParams raw;  // defaults
        if (!file.empty()) kgml::read_params_file(file, raw);
        if (has_mass) raw.mass = flags.mass;
        if (has_c) raw.c = flags.c;
        if (has_hbar) raw.hbar = flags.hbar;
        if (has_lambda) raw.lambda = flags.lambda;
        if (has_mu) raw.mu = flags.mu;
        if (has_beta) raw.beta = flags.beta;
        if (has_gamma) raw.gamma = flags.gamma;
        return kgml::ModelParams::validate(raw);
    }
};

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw kgml::RejectError(kgml::Reject::Units, "cannot open '" + out_path + "'");
    f << text;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        char* end = nullptr;
        double v = std::strtod(item.c_str(), &end);
        if (end == item.c_str() || *end != '\0')
            throw kgml::RejectError(kgml::Reject::Domain, "bad number '" + item + "' in list");
        out.push_back(v);
    }
    if (out.empty()) throw kgml::RejectError(kgml::Reject::Domain, "empty list");
    return out;
}

std::string cmd_spectrum(const kgml::ModelParams& p, int n_max) {
    std::ostringstream os;
    os << "n,e_n,E_n,E0_term,beta_term\n";
    for (const auto& row : kgml::spectrum(p, n_max)) {
        auto terms = kgml::kg_energy_expansion(p, row.n);
        os << row.n << ',' << fmt17(row.e_n) << ',' << fmt17(row.E_n) << ',' << fmt17(terms.e0)
           << ',' << fmt17(terms.c1 * p.beta) << '\n';
    }
    return os.str();
}

std::string cmd_wavefunction(const kgml::ModelParams& p, int n, const std::string& space,
                             int samples, double p_max) {
    kgml::SampledFunction f;
    f.coords.resize(samples);
    f.values.resize(samples);
    if (space == "q") {
        double qmax = kgml::potential_strength(p).box_half_width * (1.0 - 1e-6);
        for (int i = 0; i < samples; ++i) {
            double q = -qmax + 2.0 * qmax * i / (samples - 1);
            f.coords[i] = q;
            f.values[i] = kgml::phi(p, n, q);
        }
    } else {
        double energy = kgml::kg_energy(p, n);
        if (p_max <= 0) {
            auto sf = kgml::potential_strength(p);
            double sigma = p.gamma / (2.0 * p.beta) + sf.a_coeff / (2.0 * std::sqrt(p.beta));
            p_max = std::min(1e6, std::sqrt((std::pow(10.0, 12.0 / sigma) - 1.0) / p.beta));
        }
        for (int i = 0; i < samples; ++i) {
            double mom = -p_max + 2.0 * p_max * i / (samples - 1);
            f.coords[i] = mom;
            f.values[i] = kgml::psi(p, energy, n, mom);
        }
    }
    std::ostringstream os;
    f.write_csv(os);
    return os.str();
}

std::string cmd_ladder(const kgml::ModelParams& p, int n_max) {
    if (n_max < 0) throw kgml::RejectError(kgml::Reject::Level, "n-max must be non-negative");
    kgml::LadderState st(p, kgml::kg_energy(p, 0));
    std::ostringstream os;
    os << "n,S_n,E_n\n";
    for (int n = 0; n <= n_max; ++n)
        os << n << ',' << fmt17(st.partial_sum(n)) << ',' << fmt17(kgml::ladder_energy(p, n))
           << '\n';
    return os.str();
}

std::string cmd_numeric(const kgml::ModelParams& p, int n_max, const std::string& grid_list) {
    if (n_max < 0) throw kgml::RejectError(kgml::Reject::Level, "n-max must be non-negative");
    std::vector<kgml::GridSpec> grids;
    for (double g : parse_double_list(grid_list))
        grids.push_back(kgml::GridSpec::for_params(p, static_cast<int>(g)));
    auto res = kgml::refine(p, n_max + 1, grids);
    std::ostringstream os;
    os << "n,e_n,E_n,order_estimate\n";
    for (int n = 0; n <= n_max; ++n)
        os << n << ',' << fmt17(res.e_values[n]) << ','
           << fmt17(kgml::energy_from_e(p, res.e_values[n])) << ','
           << fmt17(res.order_estimate) << '\n';
    return os.str();
}

std::string cmd_expand(const kgml::ModelParams& p, int n_max, const std::string& beta_list) {
    if (n_max < 0) throw kgml::RejectError(kgml::Reject::Level, "n-max must be non-negative");
    auto betas = parse_double_list(beta_list);
    for (double b : betas)
        if (!(b > 0)) throw kgml::RejectError(kgml::Reject::Deformation, "beta must be positive");
    std::ostringstream os;
    os << "n,beta,E_exact,E_two_term,abs_error\n";
    for (int n = 0; n <= n_max; ++n)
        for (double b : betas) {
            kgml::RawParams raw{p.mass, p.c, p.hbar, p.lambda, p.mu, b, p.gamma};
            auto pb = kgml::ModelParams::validate(raw);
            double exact = kgml::kg_energy(pb, n);
            auto terms = kgml::kg_energy_expansion(pb, n);
            double two = terms.e0 + terms.c1 * b;
            os << n << ',' << fmt17(b) << ',' << fmt17(exact) << ',' << fmt17(two) << ','
               << fmt17(std::fabs(exact - two)) << '\n';
        }
    return os.str();
}

int cmd_verify(const kgml::ModelParams& p, const std::string& suite_str,
               const std::string& out_path) {
    auto suite = kgml::suite_from_name(suite_str);
    auto results = kgml::run_suite(p, suite);
    nlohmann::ordered_json doc;
    doc["suite"] = suite_str;
    doc["params"] = {{"mass", p.mass},     {"c", p.c},   {"hbar", p.hbar}, {"lambda", p.lambda},
                     {"mu", p.mu},         {"beta", p.beta}, {"gamma", p.gamma}};
    doc["checks"] = nlohmann::ordered_json::array();
    for (const auto& r : results) {
        doc["checks"].push_back({{"name", r.name},
                                 {"status", r.passed ? "pass" : "fail"},
                                 {"measured", r.measured},
                                 {"tolerance", r.tolerance},
                                 {"detail", r.detail}});
        std::fprintf(stderr, "%-40s %s  %.3fs\n", r.name.c_str(), r.passed ? "pass" : "FAIL",
                     r.seconds);
    }
    bool ok = kgml::all_passed(results);
    doc["overall"] = ok ? "pass" : "fail";
    emit(out_path, doc.dump(2) + "\n");
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bound states of the linear-potential Klein-Gordon problem on a "
                 "minimal-length deformed algebra"};
    app.require_subcommand(1);

    ParamArgs params;
    std::string out_path;
    int n_max = 5, level = 0, samples = 512;
    std::string space = "p", suite = "all";
    std::string grids = "2048,4096,8192", betas = "1e-5,1e-4,1e-3";
    double p_max = 0.0;

    auto add_common = [&](CLI::App* cmd) {
        params.attach(cmd);
        cmd->add_option("--out", out_path, "output file (default stdout)");
    };

    auto* sp = app.add_subcommand("spectrum", "closed-form levels as CSV");
    add_common(sp);
    sp->add_option("--n-max", n_max, "highest level")->check(CLI::NonNegativeNumber);

    auto* wf = app.add_subcommand("wavefunction", "eigenfunction samples as CSV");
    add_common(wf);
    wf->add_option("--n", level, "level index")->check(CLI::NonNegativeNumber);
    wf->add_option("--space", space, "p or q")->check(CLI::IsMember({"p", "q"}));
    wf->add_option("--samples", samples, "sample count (>= 9)")
        ->check(CLI::Range(9, 100000000));
    wf->add_option("--p-max", p_max, "momentum half-range (default: auto)");

    auto* la = app.add_subcommand("ladder", "shape-invariance route as CSV");
    add_common(la);
    la->add_option("--n-max", n_max, "highest level")->check(CLI::NonNegativeNumber);

    auto* nu = app.add_subcommand("numeric", "finite-difference route as CSV");
    add_common(nu);
    nu->add_option("--n-max", n_max, "highest level")->check(CLI::NonNegativeNumber);
    nu->add_option("--grids", grids, "comma list of doubling interior point counts");

    auto* ex = app.add_subcommand("expand", "small-beta comparison as CSV");
    add_common(ex);
    ex->add_option("--n-max", n_max, "highest level")->check(CLI::NonNegativeNumber);
    ex->add_option("--beta-list", betas, "comma list of beta values");

    auto* ve = app.add_subcommand("verify", "cross-validation suite, JSON report");
    add_common(ve);
    ve->add_option("--suite", suite, "all|closedform|numeric|ladder|measure|expansion");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        auto p = params.resolve();
        if (sp->parsed()) emit(out_path, cmd_spectrum(p, n_max));
        else if (wf->parsed()) emit(out_path, cmd_wavefunction(p, level, space, samples, p_max));
        else if (la->parsed()) emit(out_path, cmd_ladder(p, n_max));
        else if (nu->parsed()) emit(out_path, cmd_numeric(p, n_max, grids));
        else if (ex->parsed()) emit(out_path, cmd_expand(p, n_max, betas));
        else if (ve->parsed()) return cmd_verify(p, suite, out_path);
    } catch (const kgml::RejectError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
