#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "plap/geometry.hpp"

namespace plap {

enum class Branch { Eikonal, Infinity };

/// Pointwise residuals of the min-form limit PDE. Every grid point is
/// classified exactly once: included interior, boundary, or excluded
/// (the distance function's ridge set plus a 2h safety band).
struct ViscosityReport {
    std::vector<std::size_t> interior_points;
    std::vector<double> interior_residuals;
    std::vector<Branch> active_branch;

    std::vector<std::size_t> boundary_points;
    std::vector<double> boundary_residuals;

    std::vector<std::size_t> excluded_points;

    double worst_interior = 0;
    double worst_boundary = 0;
    double tol = 0;
    bool pass = false;
};

/// Residual tolerance tol(h) = C sqrt(h) with C fixed so the exact interval
/// profile at resolution 64 passes with at least a 2x margin.
double residual_tolerance(double h);

/// Discrete infinity Laplacian <D^2u grad u, grad u> by central differences.
/// For radial grids this is u'' (u')^2, which equals the n-dimensional
/// operator on radial functions. Returns nullopt when the point is not
/// interior or the stencil is incomplete.
std::optional<double> infinity_laplacian(const ScalarField& field, std::size_t idx);

/// Checks  -min{ |grad u| - beta u, Delta_inf u } = 0  in the interior and
/// min{ |grad u| - beta u, du/dnu } = 0 on the boundary, pointwise off the
/// ridge set. Rectangle corners are tested against both edge normals and the
/// worse residual is kept. Throws on non-positive fields.
ViscosityReport check_limit_pde(const ScalarField& field, double beta);

/// Residual of the log-transformed interior equation
///   -min{ |grad v| - lambda, Delta_inf v + |grad v|^4 } = 0,  v = log u.
/// Interior-only: boundary points are classified but carry no residual.
ViscosityReport log_transform_check(const ScalarField& field, double lambda);

struct BarrierResult {
    bool lower_ok = false;
    bool upper_ok = false;
    double lower_margin = 0;  ///< min over the grid of v - v(x0) - g_{eps,gamma}
    double upper_margin = 0;  ///< min over the band of v(x0) + h_eps - v
};

/// Comparison against the distance-function barriers
///   g_{eps,gamma} = -(lambda+eps) d + gamma d^2   (from below, everywhere)
///   h_eps         = -(lambda-eps) d               (from above, on d <= R/4)
/// with v = log(field / sup field) and x0 the boundary argmax of v.
/// Requires gamma < eps / (2R) where R = max distance over the grid.
BarrierResult barrier_compare(const ScalarField& field, double lambda, double eps,
                              double gamma);

struct EigenvalueBracket {
    bool found = false;
    double lambda_low = 0;
    double lambda_high = 0;
};

/// Scans lambda in [0.2 beta, 2.5 beta] and returns the extremes for which
/// barrier_compare passes both directions at every eps of the grid (with
/// gamma = eps/(4R)). found == false reports an empty pass set.
EigenvalueBracket eigenvalue_bracket(const ScalarField& field, double beta,
                                     const std::vector<double>& eps_grid);

}  // namespace plap
