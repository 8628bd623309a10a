#include "plap/operators.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace plap {

void StencilOp::apply(const std::vector<double>& x, std::vector<double>& y) const {
    assert(x.size() == cols_);
    y.assign(rows_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
        double acc = 0;
        for (const auto& [c, a] : entries_[r]) acc += a * x[c];
        y[r] = acc;
    }
}

void StencilOp::apply_transpose_add(const std::vector<double>& x,
                                    std::vector<double>& y) const {
    assert(x.size() == rows_ && y.size() == cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        const double xr = x[r];
        if (xr == 0.0) continue;
        for (const auto& [c, a] : entries_[r]) y[c] += a * xr;
    }
}

namespace {

// Fills one grid line (indices idx(t), t = 0..m) with d/dt stencils of spacing
// h: central inside, first-order one-sided at the ends. Together with the
// trapezoid weights this is the classical summation-by-parts pair, so discrete
// weak forms extract boundary fluxes with the continuum coefficients.
template <typename IndexFn>
void fill_line(StencilOp& op, int m, double h, IndexFn idx) {
    op.add(idx(0), idx(0), -1.0 / h);
    op.add(idx(0), idx(1), 1.0 / h);
    for (int t = 1; t < m; ++t) {
        op.add(idx(t), idx(t - 1), -0.5 / h);
        op.add(idx(t), idx(t + 1), 0.5 / h);
    }
    op.add(idx(m), idx(m), 1.0 / h);
    op.add(idx(m), idx(m - 1), -1.0 / h);
}

}  // namespace

std::vector<StencilOp> gradient_ops(const Grid& grid) {
    const std::size_t n = grid.size();
    std::vector<StencilOp> ops;
    if (grid.coord_dim() == 1) {
        StencilOp op(n, n);
        op.reserve_rows();
        fill_line(op, grid.nx() - 1, grid.spacing_x(),
                  [](int t) { return static_cast<std::size_t>(t); });
        ops.push_back(std::move(op));
        return ops;
    }
    StencilOp gx(n, n), gy(n, n);
    gx.reserve_rows();
    gy.reserve_rows();
    for (int j = 0; j < grid.ny(); ++j)
        fill_line(gx, grid.nx() - 1, grid.spacing_x(),
                  [&](int t) { return grid.index(t, j); });
    for (int i = 0; i < grid.nx(); ++i)
        fill_line(gy, grid.ny() - 1, grid.spacing_y(),
                  [&](int t) { return grid.index(i, t); });
    ops.push_back(std::move(gx));
    ops.push_back(std::move(gy));
    return ops;
}

std::vector<std::vector<double>> nodal_gradient(const Grid& grid,
                                                const std::vector<double>& u) {
    auto ops = gradient_ops(grid);
    std::vector<std::vector<double>> g(ops.size());
    for (std::size_t a = 0; a < ops.size(); ++a) ops[a].apply(u, g[a]);
    return g;
}

double normal_derivative(const Grid& grid, const std::vector<double>& u,
                         std::size_t idx, const std::array<double, 2>& normal) {
    // The supported normals are axis-aligned (radial grids and rectangle edges).
    const int nx = grid.nx(), ny = grid.ny();
    const int i = static_cast<int>(idx) / ny;
    const int j = static_cast<int>(idx) % ny;
    auto one_sided = [&](int di, int dj, double h) {
        // derivative along +(di,dj) direction: (3u0 - 4u1 + u2) / (2h) toward outside
        const double u0 = u[grid.index(i, j)];
        const double u1 = u[grid.index(i - di, j - dj)];
        const double u2 = u[grid.index(i - 2 * di, j - 2 * dj)];
        return (3.0 * u0 - 4.0 * u1 + u2) / (2.0 * h);
    };
    if (std::abs(normal[0]) > 0.5) {
        const int di = normal[0] > 0 ? 1 : -1;
        if ((di > 0 && i != nx - 1) || (di < 0 && i != 0))
            throw std::invalid_argument("normal does not point out of the grid");
        return one_sided(di, 0, grid.spacing_x());
    }
    const int dj = normal[1] > 0 ? 1 : -1;
    if ((dj > 0 && j != ny - 1) || (dj < 0 && j != 0))
        throw std::invalid_argument("normal does not point out of the grid");
    return one_sided(0, dj, grid.spacing_y());
}

}  // namespace plap
