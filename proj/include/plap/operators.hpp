#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "plap/geometry.hpp"

namespace plap {

/// Sparse row-major stencil matrix with an explicit adjoint apply.
class StencilOp {
public:
    explicit StencilOp(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

    void add(std::size_t row, std::size_t col, double coeff) {
        entries_[row].emplace_back(col, coeff);
    }
    void reserve_rows() { entries_.resize(rows_); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    void apply(const std::vector<double>& x, std::vector<double>& y) const;
    /// y += A^T x accumulated into y (y must be pre-sized to cols()).
    void apply_transpose_add(const std::vector<double>& x, std::vector<double>& y) const;

private:
    std::size_t cols_, rows_;
    std::vector<std::vector<std::pair<std::size_t, double>>> entries_;
};

/// Per-axis difference operators for a grid: central in the interior,
/// second-order one-sided at the first/last index of each line.
/// Radial grids get one operator; rectangles get two (x then y).
std::vector<StencilOp> gradient_ops(const Grid& grid);

/// Nodal gradient components; g[axis][i] = (d_axis u)(x_i).
std::vector<std::vector<double>> nodal_gradient(const Grid& grid,
                                                const std::vector<double>& u);

/// Second-order one-sided derivative of u along the outward normal at a
/// boundary point (normal is one of grid.normals(idx)).
double normal_derivative(const Grid& grid, const std::vector<double>& u,
                         std::size_t idx, const std::array<double, 2>& normal);

}  // namespace plap
