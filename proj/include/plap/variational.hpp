#pragma once

#include <optional>
#include <vector>

#include "plap/geometry.hpp"

namespace plap {

struct SolveDiagnostics {
    int iterations = 0;
    double final_gradient_norm = 0;
    int quotient_history_length = 0;
};

/// Discrete minimizer of the Rayleigh quotient: lambda < 0, u > 0, and u is
/// normalized to unit discrete L^p norm on the boundary.
struct EigenPair {
    double lambda = 0;
    ScalarField u;
    double p = 2;
    double beta = 1;
    SolveDiagnostics diagnostics;
};

/// Discrete Rayleigh quotient
///   [ sum_vol |grad_h w|^p - beta^p sum_bdy |w|^p ] / sum_vol |w|^p
/// with central/one-sided differences and the grid's trapezoid weights.
/// p-th powers are accumulated in log space so large p stays finite.
/// Throws when the denominator vanishes.
double rayleigh_quotient(double p, double beta, const Grid& grid,
                         const std::vector<double>& w);

/// Exact gradient of rayleigh_quotient with respect to the nodal values.
/// A positive eps regularizes |grad w|^{p-2} as (|grad w|^2 + eps^2)^{(p-2)/2}
/// (used inside the optimizer; the default is the exact gradient).
std::vector<double> quotient_gradient(double p, double beta, const Grid& grid,
                                      const std::vector<double>& w, double eps = 0.0);

struct MinimizeOptions {
    int max_iters = 200000;
    double tolerance = 1e-9;        ///< gradient-norm stop
    double plateau_rel = 1e-10;     ///< relative quotient change over plateau_span
    int plateau_span = 5;
    bool throw_on_max_iters = true; ///< otherwise return the best iterate
};

/// Minimizes the quotient by descent on the nodal values: Barzilai-Borwein
/// trial step, backtracking until the quotient decreases, then renormalization
/// to unit L^p boundary norm. Iterates are clamped positive. Deterministic.
/// init must be positive when supplied; by default starts from
/// exp(-beta d(x)). Throws ConvergenceError when the iteration budget runs out
/// (carrying the best quotient and gradient norm).
EigenPair minimize(double p, double beta, const std::shared_ptr<const Grid>& grid,
                   const std::optional<ScalarField>& init = std::nullopt,
                   const MinimizeOptions& opts = {});

/// Continuation driver: solves at p = 2 first (or at the target when it is
/// close), then steps p multiplicatively by 1.5 reusing each minimizer as the
/// next initial guess.
EigenPair solve_variational(double p, double beta,
                            const std::shared_ptr<const Grid>& grid,
                            const MinimizeOptions& opts = {});

/// Sup over nodal hat functions of the discrete weak-form residual
///   | int |grad u|^{p-2} grad u . grad phi - lambda int |u|^{p-2}u phi
///     - beta^p bdyint |u|^{p-2}u phi |,
/// normalized by the discrete L^p mass of u.
double euler_lagrange_residual(const EigenPair& pair, const Grid& grid);

/// Discrete norms used by the solver; exposed for the energy-identity checks.
struct QuotientParts {
    double grad_energy = 0;  ///< sum_vol |grad_h w|^p
    double boundary_mass = 0;///< sum_bdy |w|^p
    double volume_mass = 0;  ///< sum_vol |w|^p
};
QuotientParts quotient_parts(double p, const Grid& grid, const std::vector<double>& w);

}  // namespace plap
