#pragma once

#include <string>
#include <vector>

#include "plap/geometry.hpp"
#include "plap/radial.hpp"
#include "plap/variational.hpp"

namespace plap {

enum class SolverKind { Radial, Variational };

std::string to_string(SolverKind kind);

/// One entry of a p-sweep toward the p -> infinity limit.
struct SweepRecord {
    double p = 0;
    double lambda = 0;
    double root = 0;         ///< (-lambda)^{1/p}
    double profile_gap = 0;  ///< sup |u_norm - exp(-beta d)| after sup-normalization
    SolverKind solver = SolverKind::Radial;

    double energy_rel_err = 0;   ///< |((-lambda)||u||_p^p + ||grad u||_p^p) / beta^p ||u||_{p,bdy}^p - 1|
    bool max_on_boundary = false;
    /// beta ||u||_p <= (-lambda)^{1/p} ||u||_p <= beta under the boundary
    /// normalization, to 1e-6 (the lower half needs P/|Omega| >= 1).
    bool sandwich_ok = false;
};

struct SweepEntry {
    double p = 0;
    bool ok = false;
    std::string error;
    SweepRecord record;
    ScalarField field;  ///< eigenfunction on the sweep grid, sup-normalized
};

struct SweepOptions {
    int resolution = 256;  ///< grid used for profile comparison (and the
                           ///< variational solve, when selected)
    SolverKind solver = SolverKind::Radial;
    RadialEigenOptions radial;
    MinimizeOptions minimize;
};

struct SweepResult {
    std::shared_ptr<const Grid> grid;
    ScalarField limit;  ///< exp(-beta d) on the grid
    std::vector<SweepEntry> entries;
};

/// Runs the solver for each p (increasing, all > 1) and records
/// (-lambda)^{1/p} together with the sup-norm gap to the limit profile.
/// Per-entry solver failures are recorded without aborting the sweep.
SweepResult sweep_p(const Domain& domain, double beta, const std::vector<double>& p_list,
                    const SweepOptions& opts = {});

/// beta -> infinity expansion bookkeeping:
///   lambda = -(p-1) beta^{p^2/(p-1)} - (n-1) H_max beta^p + o(beta^p).
struct ExpansionRecord {
    double beta = 0;
    bool ok = false;
    std::string error;
    double lambda = 0;
    double leading = 0;          ///< -(p-1) beta^{p^2/(p-1)}
    double curvature_coeff = 0;  ///< (lambda - leading) / beta^p
};

/// Solves the radial problem along an increasing beta list on a Ball or Shell;
/// curvature_coeff should trend to -(n-1) H_max. Failed entries are flagged.
std::vector<ExpansionRecord> beta_expansion_check(const Domain& domain, double p,
                                                  const std::vector<double>& beta_list,
                                                  const RadialEigenOptions& opts = {});

struct ShellVsBall {
    double lambda_ball = 0;
    double lambda_shell = 0;
    bool shell_larger = false;
    double ball_radius = 0;
    double shell_outer = 0;
};

/// Compares the ball of the given volume against the shell with inner radius r
/// and the same volume, at (p, beta). The paper's expansion predicts
/// lambda_shell > lambda_ball once beta^p is large.
ShellVsBall shell_vs_ball(int n, double volume, double inner_radius, double p,
                          double beta, const RadialEigenOptions& opts = {});

struct LimitEstimate {
    ScalarField u_inf;                ///< largest-p normalized eigenfunction
    std::vector<double> cauchy_gaps;  ///< successive sup-norm gaps
    bool gaps_decreasing = false;
    bool max_on_boundary = false;
};

/// Takes >= 3 successful sweep entries on a common grid and returns the
/// largest-p field as the u_infinity estimate plus the successive gaps.
/// Non-monotone gap sequences are flagged, not rejected.
LimitEstimate extrapolate_limit(const SweepResult& sweep);

}  // namespace plap
