#pragma once

#include <complex>
#include <span>
#include <vector>

#include "kgml/model.hpp"

namespace kgml::fd {

/// Fornberg weights: coefficients w such that sum_i w[i] f(x[i]) approximates
/// f^(order)(z) for arbitrary distinct nodes x. Exact for polynomials of
/// degree x.size()-1.
inline std::vector<double> weights(double z, std::span<const double> x, int order) {
    const int n = static_cast<int>(x.size()) - 1;
    const int m = order;
    std::vector<double> cm((n + 1) * (m + 1), 0.0);
    auto C = [&](int i, int k) -> double& { return cm[i * (m + 1) + k]; };
    double c1 = 1.0, c4 = x[0] - z;
    C(0, 0) = 1.0;
    for (int i = 1; i <= n; ++i) {
        int mn = i < m ? i : m;
        double c2 = 1.0, c5 = c4;
        c4 = x[i] - z;
        for (int j = 0; j < i; ++j) {
            double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    C(i, k) = c1 * (k * C(i - 1, k - 1) - c5 * C(i - 1, k)) / c2;
                C(i, 0) = -c1 * c5 * C(i - 1, 0) / c2;
            }
            for (int k = mn; k >= 1; --k) C(j, k) = (c4 * C(j, k) - k * C(j, k - 1)) / c3;
            C(j, 0) = c4 * C(j, 0) / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n + 1);
    for (int i = 0; i <= n; ++i) w[i] = C(i, m);
    return w;
}

/// Derivative of complex samples on an arbitrary strictly increasing grid.
/// Interior rows use centered 5-point stencils (4th order on smooth grids);
/// the outermost two rows on each side use one-sided 6-point stencils so the
/// boundary does not drop below 4th order for the second derivative.
inline std::vector<std::complex<double>> derivative(std::span<const double> x,
                                                    std::span<const std::complex<double>> y,
                                                    int order) {
    const int n = static_cast<int>(x.size());
    if (n < 9) throw RejectError(Reject::Grid, "need at least 9 samples");
    for (int i = 1; i < n; ++i)
        if (!(x[i] > x[i - 1])) throw RejectError(Reject::Grid, "grid must be strictly increasing");

    std::vector<std::complex<double>> out(n);
    auto apply = [&](int row, int lo, int width) {
        auto w = weights(x[row], x.subspan(lo, width), order);
        std::complex<double> acc = 0.0;
        for (int k = 0; k < width; ++k) acc += w[k] * y[lo + k];
        out[row] = acc;
    };
    for (int i = 0; i < 2; ++i) apply(i, 0, 6);
    for (int i = 2; i < n - 2; ++i) apply(i, i - 2, 5);
    for (int i = n - 2; i < n; ++i) apply(i, n - 6, 6);
    return out;
}

}  // namespace kgml::fd
