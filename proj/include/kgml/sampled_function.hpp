#pragma once

#include <complex>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "kgml/model.hpp"

namespace kgml {

namespace detail {
/// Shortest-exact decimal for a binary64: 17 significant digits round-trip.
inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}
}  // namespace detail

/// Complex-valued function samples on a strictly increasing coordinate grid
/// (p-space or q-space). Immutable snapshot semantics: operations return new
/// values and never mutate their inputs.
struct SampledFunction {
    std::vector<double> coords;
    std::vector<std::complex<double>> values;

    size_t size() const { return coords.size(); }

    bool grid_is_strictly_increasing() const {
        for (size_t i = 1; i < coords.size(); ++i)
            if (!(coords[i] > coords[i - 1])) return false;
        return true;
    }

    /// CSV schema shared with the CLI: header `coord,re,im`, one row per
    /// sample, 17 significant digits.
    void write_csv(std::ostream& out) const {
        out << "coord,re,im\n";
        for (size_t i = 0; i < coords.size(); ++i)
            out << detail::fmt17(coords[i]) << ',' << detail::fmt17(values[i].real()) << ','
                << detail::fmt17(values[i].imag()) << '\n';
    }

    static SampledFunction read_csv(std::istream& in) {
        SampledFunction f;
        std::string line;
        if (!std::getline(in, line) || line.find("coord") != 0)
            throw RejectError(Reject::Grid, "missing coord,re,im header");
        int lineno = 1;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            const char* s = line.c_str();
            char* end = nullptr;
            double c = std::strtod(s, &end);
            if (end == s || *end != ',')
                throw RejectError(Reject::Grid, "bad csv row at line " + std::to_string(lineno));
            s = end + 1;
            double re = std::strtod(s, &end);
            if (end == s || *end != ',')
                throw RejectError(Reject::Grid, "bad csv row at line " + std::to_string(lineno));
            s = end + 1;
            double im = std::strtod(s, &end);
            if (end == s)
                throw RejectError(Reject::Grid, "bad csv row at line " + std::to_string(lineno));
            f.coords.push_back(c);
            f.values.emplace_back(re, im);
        }
        if (!f.grid_is_strictly_increasing())
            throw RejectError(Reject::Grid, "coordinates must be strictly increasing");
        return f;
    }
};

}  // namespace kgml
