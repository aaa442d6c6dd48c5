#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "kgml/closed_form.hpp"
#include "kgml/model.hpp"

namespace kgml {

/// Dirichlet discretization of the q box, inset from the singular walls by a
/// small fractional margin. Interior spacing h = 2 L (1 - margin)/(N + 1).
struct GridSpec {
    int n_points;       // interior point count N
    double half_width;  // pi/(2 sqrt(beta))
    double margin;      // fractional inset from the walls

    static GridSpec for_params(const ModelParams& p, int n, double margin = 1e-6) {
        GridSpec g{n, potential_strength(p).box_half_width, margin};
        g.check();
        return g;
    }

    void check() const {
        if (n_points < 64) throw RejectError(Reject::Grid, "need at least 64 interior points");
        if (!(margin > 0.0 && margin <= 1e-3))
            throw RejectError(Reject::Grid, "margin must lie in (0, 1e-3]");
        if (!(half_width > 0)) throw RejectError(Reject::Grid, "half width must be positive");
    }

    double spacing() const { return 2.0 * half_width * (1.0 - margin) / (n_points + 1); }
    double node(int i) const { return -half_width * (1.0 - margin) + spacing() * (i + 1); }
};

/// Symmetric tridiagonal operator: diag[i] on the diagonal, off[i] between
/// rows i and i+1.
struct TridiagonalOperator {
    std::vector<double> diag;
    std::vector<double> off;
};

/// 3-point Laplacian plus the sampled sec^2 potential, Dirichlet walls.
inline TridiagonalOperator discretize(const ModelParams& p, const GridSpec& grid) {
    grid.check();
    auto sf = potential_strength(p);
    double h = grid.spacing();
    double sb = std::sqrt(p.beta);
    TridiagonalOperator op;
    op.diag.resize(grid.n_points);
    op.off.assign(grid.n_points - 1, -1.0 / (h * h));
    for (int i = 0; i < grid.n_points; ++i) {
        double cq = std::cos(sb * grid.node(i));
        op.diag[i] = 2.0 / (h * h) + sf.v0 / (cq * cq);
    }
    return op;
}

/// Number of eigenvalues of op strictly below x (Sturm sequence count).
inline int sturm_count(const TridiagonalOperator& op, double x) {
    int count = 0;
    double d = 1.0;
    for (size_t i = 0; i < op.diag.size(); ++i) {
        double sq = i == 0 ? 0.0 : op.off[i - 1] * op.off[i - 1];
        d = op.diag[i] - x - sq / d;
        if (d == 0.0) d = -1e-300;
        if (d < 0.0) ++count;
    }
    return count;
}

/// The k algebraically smallest eigenvalues by bisection on Sturm counts.
/// Deterministic; each eigenvalue is bracketed to width 1e-12 * max(1, |e|).
inline std::vector<double> eigen_lowest(const TridiagonalOperator& op, int k) {
    const int n = static_cast<int>(op.diag.size());
    if (k < 1 || k > n) throw RejectError(Reject::Count, "need 1 <= k <= N");
    double lo = op.diag[0], hi = op.diag[0];
    for (int i = 0; i < n; ++i) {
        double r = (i > 0 ? std::fabs(op.off[i - 1]) : 0.0) +
                   (i + 1 < n ? std::fabs(op.off[i]) : 0.0);
        lo = std::min(lo, op.diag[i] - r);
        hi = std::max(hi, op.diag[i] + r);
    }
    std::vector<double> out(k);
    for (int j = 0; j < k; ++j) {
        double a = lo, b = hi;
        while (b - a > 1e-12 * std::max(1.0, std::max(std::fabs(a), std::fabs(b)))) {
            double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break;  // interval at rounding resolution
            if (sturm_count(op, mid) > j) b = mid;
            else a = mid;
        }
        out[j] = 0.5 * (a + b);
        lo = out[j];  // eigenvalues are returned in ascending order
    }
    return out;
}

/// Positive-branch map back to the Klein-Gordon energy,
/// E = [-mu m c^2 + hbar (lambda^2 - mu^2) sqrt(e - v0)]/lambda.
inline double energy_from_e(const ModelParams& p, double e) {
    return kg_from_schrodinger(p, e);  // throws RejectBranch when e <= v0
}

struct EigenResult {
    std::vector<double> e_values;
    GridSpec grid;           // finest grid used
    double order_estimate;   // observed convergence order
};

/// Richardson extrapolation over a ladder of at least three doubling grids.
/// The order is estimated from the last grid triple, the extrapolated values
/// from the finest pair with the exact spacing ratio.
inline EigenResult refine(const ModelParams& p, int k, std::span<const GridSpec> grids) {
    if (grids.size() < 3) throw RejectError(Reject::Grid, "need at least 3 grids");
    for (size_t i = 0; i + 1 < grids.size(); ++i) {
        if (grids[i + 1].n_points != 2 * grids[i].n_points)
            throw RejectError(Reject::Grid, "grids must double the interior point count");
        if (grids[i + 1].half_width != grids[i].half_width ||
            grids[i + 1].margin != grids[i].margin)
            throw RejectError(Reject::Grid, "grids must share the box and margin");
    }

    std::vector<std::vector<double>> levels;
    levels.reserve(grids.size());
    for (const auto& g : grids) levels.push_back(eigen_lowest(discretize(p, g), k));

    const auto& g1 = grids[grids.size() - 3];
    const auto& g2 = grids[grids.size() - 2];
    const auto& g3 = grids[grids.size() - 1];
    const auto& y1 = levels[grids.size() - 3];
    const auto& y2 = levels[grids.size() - 2];
    const auto& y3 = levels[grids.size() - 1];

    EigenResult res;
    res.grid = g3;
    res.e_values.resize(k);
    double order_sum = 0.0;
    double r = g3.spacing() / g2.spacing();
    for (int j = 0; j < k; ++j) {
        order_sum += std::log((y1[j] - y2[j]) / (y2[j] - y3[j])) /
                     std::log(g1.spacing() / g2.spacing());
        res.e_values[j] = (y3[j] - r * r * y2[j]) / (1.0 - r * r);
    }
    res.order_estimate = order_sum / k;
    return res;
}

}  // namespace kgml
