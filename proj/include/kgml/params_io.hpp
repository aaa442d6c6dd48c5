#pragma once

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <string>

#include "kgml/model.hpp"

namespace kgml {

namespace detail {
inline std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}
}  // namespace detail

/// Reads a flat key=value parameter file into `into`, overriding only the
/// keys present. Keys: mass, c, hbar, lambda, mu, beta, gamma. Values are
/// decimal or scientific floats, one pair per line, '#' starts a comment.
inline void read_params(std::istream& in, RawParams& into) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw RejectError(Reject::Units, "parameter file line " + std::to_string(lineno) +
                                                 ": expected key=value");
        std::string key = detail::trim(line.substr(0, eq));
        std::string val = detail::trim(line.substr(eq + 1));
        char* end = nullptr;
        double x = std::strtod(val.c_str(), &end);
        if (end == val.c_str() || *end != '\0')
            throw RejectError(Reject::Units, "parameter file line " + std::to_string(lineno) +
                                                 ": bad number '" + val + "'");
        if (key == "mass") into.mass = x;
        else if (key == "c") into.c = x;
        else if (key == "hbar") into.hbar = x;
        else if (key == "lambda") into.lambda = x;
        else if (key == "mu") into.mu = x;
        else if (key == "beta") into.beta = x;
        else if (key == "gamma") into.gamma = x;
        else
            throw RejectError(Reject::Units, "parameter file line " + std::to_string(lineno) +
                                                 ": unknown key '" + key + "'");
    }
}

inline void read_params_file(const std::string& path, RawParams& into) {
    std::ifstream f(path);
    if (!f) throw RejectError(Reject::Units, "cannot open parameter file '" + path + "'");
    read_params(f, into);
}

}  // namespace kgml
