#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace plap {

enum class DomainKind { Interval, Ball, Shell, Rectangle };

std::string to_string(DomainKind kind);

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

/// Parametric domain with closed-form measure, perimeter and boundary distance.
///
/// Interval(a,b) is the 1D case; Ball/Shell are n-dimensional (n >= 2) and are
/// discretized radially; Rectangle is a 2D tensor-product domain.
class Domain {
public:
    static Domain interval(double a, double b);
    static Domain ball(int n, double radius);
    static Domain shell(int n, double inner, double outer);
    static Domain rectangle(double width, double height);

    DomainKind kind() const { return kind_; }
    /// Ambient dimension n (1 for Interval, 2 for Rectangle).
    int dim() const { return dim_; }
    /// Number of coordinates a grid point carries (1 for radial grids, 2 for Rectangle).
    int coord_dim() const { return kind_ == DomainKind::Rectangle ? 2 : 1; }

    double volume() const;
    double perimeter() const;

    // Parameter accessors; only the ones matching kind() are meaningful.
    double a() const { return p1_; }
    double b() const { return p2_; }
    double radius() const { return p2_; }
    double inner_radius() const { return p1_; }
    double outer_radius() const { return p2_; }
    double width() const { return p1_; }
    double height() const { return p2_; }

    std::string describe() const;

private:
    Domain(DomainKind kind, int dim, double p1, double p2)
        : kind_(kind), dim_(dim), p1_(p1), p2_(p2) {}

    DomainKind kind_;
    int dim_;
    double p1_;
    double p2_;
};

/// P(Omega) / |Omega|, in closed form.
double perimeter_volume_ratio(const Domain& domain);

/// Maximum mean curvature of the boundary w.r.t. the outward normal.
/// Defined for Ball (1/R) and Shell (max(1/R, -1/r) = 1/R); the inner sphere of a
/// shell has negative mean curvature under this convention. Throws for
/// Interval/Rectangle where corners/endpoints leave it undefined.
double max_mean_curvature(const Domain& domain);

enum class PointRole { Interior, Boundary };

/// Structured grid over a Domain: radial line for Interval/Ball/Shell, tensor
/// product for Rectangle. Immutable after construction.
class Grid {
public:
    const Domain& domain() const { return domain_; }
    int resolution() const { return resolution_; }
    std::size_t size() const { return roles_.size(); }
    int coord_dim() const { return domain_.coord_dim(); }

    /// Nominal spacing (max over axes for non-square rectangles).
    double spacing() const { return spacing_; }
    double spacing_x() const { return hx_; }
    double spacing_y() const { return hy_; }

    /// Tensor extents; ny() == 1 for radial grids. index = i*ny + j.
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * ny_ + j; }

    std::array<double, 2> point(std::size_t idx) const {
        return {coords_[2 * idx], coords_[2 * idx + 1]};
    }
    PointRole role(std::size_t idx) const { return roles_[idx]; }
    bool is_boundary(std::size_t idx) const { return roles_[idx] == PointRole::Boundary; }

    double volume_weight(std::size_t idx) const { return volume_weights_[idx]; }
    /// Zero for interior points.
    double boundary_weight(std::size_t idx) const { return boundary_weights_[idx]; }

    /// Outward unit normals at a boundary point. Rectangle corners carry two
    /// (one per adjacent edge); everything else carries one.
    std::vector<std::array<double, 2>> normals(std::size_t idx) const;

    double volume_weight_sum() const;
    double boundary_weight_sum() const;

private:
    friend std::shared_ptr<const Grid> make_grid(const Domain&, int);
    explicit Grid(Domain d) : domain_(std::move(d)) {}

    Domain domain_;
    int resolution_ = 0;
    int nx_ = 0, ny_ = 1;
    double spacing_ = 0, hx_ = 0, hy_ = 0;
    std::vector<double> coords_;  // 2 per point; second slot 0 for radial grids
    std::vector<PointRole> roles_;
    std::vector<double> volume_weights_;
    std::vector<double> boundary_weights_;
    std::vector<std::array<double, 2>> normal_a_;
    std::vector<std::array<double, 2>> normal_b_;  // NaN unless a rectangle corner
};

/// Builds a grid with trapezoid quadrature weights. resolution >= 4 is the
/// number of subdivisions (per axis for Rectangle).
std::shared_ptr<const Grid> make_grid(const Domain& domain, int resolution);

/// Nodal values attached to a grid.
struct ScalarField {
    std::shared_ptr<const Grid> grid;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(std::shared_ptr<const Grid> g, double fill = 0.0)
        : grid(std::move(g)), values(grid->size(), fill) {}

    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }
    std::size_t size() const { return values.size(); }
};

/// Exact Euclidean distance to the boundary, evaluated per grid point.
ScalarField distance_field(const std::shared_ptr<const Grid>& grid);

/// Distance to the boundary for an arbitrary point of the domain.
double boundary_distance(const Domain& domain, const std::array<double, 2>& x);

}  // namespace plap
