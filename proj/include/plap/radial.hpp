#pragma once

#include <vector>

#include "plap/geometry.hpp"

namespace plap {

/// Radial solution sampled on the ODE nodes. For Interval the coordinate is the
/// distance s from the midpoint (the first eigenfunction is even); for
/// Ball/Shell it is the radius.
struct RadialProfile {
    std::vector<double> nodes;
    std::vector<double> values;
    std::vector<double> derivatives;
    double p = 2;
    double lambda = 0;
    double beta = 1;

    /// Linear interpolation of the stored values.
    double value_at(double s) const;
};

/// One shot of the radial ODE (s^{n-1}|u'|^{p-2}u')' = (-lambda)|u|^{p-2}u s^{n-1}.
struct ShootResult {
    RadialProfile profile;   ///< initial-condition frame: u = 1 at the starting end
    double mismatch = 0;     ///< |u'(R)|^{p-2}u'(R) - beta^p u(R)^{p-1}, rescaled frame
    double log_scale = 0;    ///< accumulated log of the positive rescale factor on u
    bool crossed = false;    ///< solution hit u <= 0; mismatch reported as -inf
    int steps = 0;

    // Quadrature carried along the integration (rescaled frame, full-domain
    // weights): integral of |u|^p dx and of |u'|^p dx, and the boundary
    // integral of |u|^p dH^{n-1}.
    double mass_integral = 0;
    double grad_integral = 0;
    double boundary_integral = 0;

    // Overflow-safe view of the profile: log u, log|u'| and sign(u') per node.
    std::vector<double> profile_log_values;
    std::vector<double> profile_log_derivatives;
    std::vector<double> profile_derivative_signs;
};

/// Integrates the radial eigenvalue ODE from the inner end with fixed-step RK4
/// on the flux variable q = |u'|^{p-2}u'. Initial data: u = 1, u' = 0 at the
/// center (Ball/Interval) or the inner Robin slope u'(r) = -beta^{p/(p-1)}
/// (Shell). The mismatch and the carried integrals are reported in a frame
/// rescaled by exp(log_scale) to keep doubles finite; signs and zeros match the
/// true mismatch. Blow-up through u <= 0 is reported as mismatch = -inf rather
/// than an error.
ShootResult integrate_radial(double p, double lambda, double beta,
                             const Domain& domain, int steps);

struct RadialEigenOptions {
    int steps = 0;               ///< 0 = automatic: max(2000, 100p, 40*ceil(kappa*L))
    double rel_tol = 1e-13;      ///< bisection width tolerance, relative to |lambda|
    double scan_ratio = 1.5;     ///< geometric scan factor for the bracketing window
    int max_bisection = 200;
};

struct RadialEigenPair {
    double lambda = 0;
    RadialProfile profile;       ///< normalized so the largest boundary value is 1
    double mismatch = 0;         ///< residual mismatch at the accepted lambda
    int steps = 0;
    int evaluations = 0;         ///< number of ODE shots spent

    // Scale-invariant energy pieces of the accepted solution:
    // (-lambda)*mass + grad = beta^p * boundary holds up to integrator accuracy.
    double mass_integral = 0;
    double grad_integral = 0;
    double boundary_integral = 0;
};

/// First eigenvalue by shooting: scans the window
/// [-(2beta)^{p^2/(p-1)} - 10, -beta^p P/|Omega|] geometrically for a sign
/// change of the mismatch (solutions that lose positivity count as the
/// negative side, which pins the search to the positive first eigenfunction),
/// then bisects. Throws BracketError when the window has no sign change.
RadialEigenPair solve_eigen_radial(double p, double beta, const Domain& domain,
                                   const RadialEigenOptions& opts = {});

/// The p -> infinity profile exp(-beta d(x, boundary)), normalized to 1 on the
/// boundary.
ScalarField limit_profile(double beta, const std::shared_ptr<const Grid>& grid);

/// Evaluates a radial profile at an arbitrary point of its domain (by the
/// radial coordinate for Ball/Shell, by |x - midpoint| for Interval).
double eval_radial(const RadialProfile& profile, const Domain& domain,
                   const std::array<double, 2>& x);

}  // namespace plap
