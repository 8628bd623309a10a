#include "plap/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "plap/errors.hpp"

namespace plap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct RadialSetup {
    double s0, s1;
    int n;             // dimension in the jacobian s^{n-1}
    bool from_center;  // u(s0)=1, u'(s0)=0 start vs inner Robin start
    double jac_coef;   // n*omega_n (1 for interval half-line)
    double sym_factor; // 2 for the interval (two symmetric halves), else 1
};

RadialSetup radial_setup(const Domain& d) {
    switch (d.kind()) {
        case DomainKind::Interval:
            return {0.0, 0.5 * (d.b() - d.a()), 1, true, 1.0, 2.0};
        case DomainKind::Ball:
            return {0.0, d.radius(), d.dim(), true,
                    d.dim() * unit_ball_volume(d.dim()), 1.0};
        case DomainKind::Shell:
            return {d.inner_radius(), d.outer_radius(), d.dim(), false,
                    d.dim() * unit_ball_volume(d.dim()), 1.0};
        default:
            throw std::invalid_argument("radial solver supports interval/ball/shell only");
    }
}

double sgn_pow(double x, double e) {
    return x >= 0 ? std::pow(x, e) : -std::pow(-x, e);
}

struct Rhs {
    double mlam, p, pexp;  // pexp = 1/(p-1)
    int n;

    void operator()(double s, double u, double q, double& du, double& dq,
                    double& dmass, double& dgrad) const {
        du = sgn_pow(q, pexp);
        const double up = std::pow(std::abs(u), p - 2.0) * u;
        dq = mlam * up - (n - 1) * q / s;
        const double jac = std::pow(s, n - 1);
        dmass = std::pow(std::abs(u), p) * jac;
        dgrad = std::pow(std::abs(q), p * pexp) * jac;
    }
};

}  // namespace

double RadialProfile::value_at(double s) const {
    if (nodes.size() < 2) return values.empty() ? 0.0 : values.front();
    const double s0 = nodes.front(), s1 = nodes.back();
    const double h = (s1 - s0) / (nodes.size() - 1);
    double t = (std::clamp(s, s0, s1) - s0) / h;
    const std::size_t i = std::min(static_cast<std::size_t>(t), nodes.size() - 2);
    t -= i;
    return (1.0 - t) * values[i] + t * values[i + 1];
}

ShootResult integrate_radial(double p, double lambda, double beta,
                             const Domain& domain, int steps) {
    if (!(p > 1)) throw std::invalid_argument("p must be > 1");
    if (!(lambda < 0)) throw std::invalid_argument("lambda must be negative");
    if (!(beta > 0)) throw std::invalid_argument("beta must be positive");
    if (steps < 16) throw std::invalid_argument("steps must be >= 16");

    const RadialSetup set = radial_setup(domain);
    const double mlam = -lambda;
    const double pexp = 1.0 / (p - 1.0);
    const double h = (set.s1 - set.s0) / steps;
    const Rhs rhs{mlam, p, pexp, set.n};

    ShootResult out;
    out.steps = steps;
    RadialProfile& prof = out.profile;
    prof.p = p;
    prof.lambda = lambda;
    prof.beta = beta;
    prof.nodes.reserve(steps + 1);
    std::vector<double> log_u;      // log of the true u at each node
    std::vector<double> du_signed;  // true u' sign, magnitude as log
    std::vector<double> log_du;
    log_u.reserve(steps + 1);
    log_du.reserve(steps + 1);
    du_signed.reserve(steps + 1);

    double u = 1.0, q = 0.0, mass = 0.0, grad = 0.0;
    double log_scale = 0.0;
    int first = 0;

    auto record = [&](double s) {
        prof.nodes.push_back(s);
        log_u.push_back(std::log(u) + log_scale);
        if (q == 0.0) {
            du_signed.push_back(0.0);
            log_du.push_back(-kInf);
        } else {
            du_signed.push_back(q > 0 ? 1.0 : -1.0);
            log_du.push_back(pexp * std::log(std::abs(q)) + log_scale);
        }
    };

    if (set.from_center) {
        // The flux map u' = |q|^{1/(p-1)} is not Lipschitz at q = 0, so the
        // first step away from the center uses the local series
        //   q ~ (-lambda) s / n,   u ~ 1 + c s^{p/(p-1)} (p-1)/p,
        // with c = ((-lambda)/n)^{1/(p-1)}; RK4 takes over on smooth ground.
        record(set.s0);
        const double c = std::exp((std::log(mlam) - std::log(double(set.n))) * pexp);
        const double spow = std::pow(h, p * pexp);
        u = 1.0 + c * spow * (p - 1.0) / p;
        q = mlam * h / set.n;
        mass = std::pow(h, set.n) / set.n;
        grad = std::pow(c, p) * std::pow(h, p * pexp + set.n) / (p * pexp + set.n);
        record(set.s0 + h);
        first = 1;
    } else {
        q = -std::pow(beta, p);  // inner Robin: |u'|^{p-2}u'(r) = -beta^p
        record(set.s0);
    }

    const double u_cap = std::exp(std::min(200.0, 450.0 / (p - 1.0)));
    double k1u, k1q, k1m, k1g, k2u, k2q, k2m, k2g, k3u, k3q, k3m, k3g, k4u, k4q, k4m, k4g;
    for (int i = first; i < steps; ++i) {
        const double s = set.s0 + i * h;
        rhs(s, u, q, k1u, k1q, k1m, k1g);
        rhs(s + h / 2, u + h / 2 * k1u, q + h / 2 * k1q, k2u, k2q, k2m, k2g);
        rhs(s + h / 2, u + h / 2 * k2u, q + h / 2 * k2q, k3u, k3q, k3m, k3g);
        rhs(s + h, u + h * k3u, q + h * k3q, k4u, k4q, k4m, k4g);
        u += h / 6 * (k1u + 2 * k2u + 2 * k3u + k4u);
        q += h / 6 * (k1q + 2 * k2q + 2 * k3q + k4q);
        mass += h / 6 * (k1m + 2 * k2m + 2 * k3m + k4m);
        grad += h / 6 * (k1g + 2 * k2g + 2 * k3g + k4g);
        if (!(u > 0.0)) {
            out.crossed = true;
            out.mismatch = -kInf;
            out.log_scale = log_scale;
            return out;
        }
        if (!std::isfinite(u) || !std::isfinite(q)) {
            out.mismatch = q > 0 || u > 0 ? kInf : -kInf;
            out.log_scale = log_scale;
            return out;
        }
        if (u > u_cap) {
            const double lm = std::log(u);
            if (q != 0.0) {
                const double qs = q > 0 ? 1.0 : -1.0;
                q = qs * std::exp(std::log(std::abs(q)) - (p - 1.0) * lm);
            }
            mass = mass > 0 ? std::exp(std::log(mass) - p * lm) : 0.0;
            grad = grad > 0 ? std::exp(std::log(grad) - p * lm) : 0.0;
            log_scale += lm;
            u = 1.0;
        }
        record(s + h);
    }

    out.log_scale = log_scale;
    out.mismatch = q - std::pow(beta, p) * std::pow(u, p - 1.0);
    out.mass_integral = mass * set.jac_coef * set.sym_factor;
    out.grad_integral = grad * set.jac_coef * set.sym_factor;
    {
        const double outer = std::pow(u, p) * set.jac_coef *
                             std::pow(set.s1, set.n - 1) * set.sym_factor;
        double inner = 0.0;
        if (!set.from_center)  // shell: u(r) = 1 in the initial frame
            inner = std::exp(-p * log_scale) * set.jac_coef * std::pow(set.s0, set.n - 1);
        out.boundary_integral = outer + inner;
    }

    // Profile in the initial-condition frame; may overflow to inf for extreme
    // parameters (solve_eigen_radial re-normalizes from the log values).
    prof.values.resize(prof.nodes.size());
    prof.derivatives.resize(prof.nodes.size());
    for (std::size_t i = 0; i < prof.nodes.size(); ++i) {
        prof.values[i] = std::exp(log_u[i]);
        prof.derivatives[i] = du_signed[i] * std::exp(log_du[i]);
    }
    // Stash the log values for the solver's normalization pass.
    out.profile_log_values = std::move(log_u);
    out.profile_log_derivatives = std::move(log_du);
    out.profile_derivative_signs = std::move(du_signed);
    return out;
}

namespace {

int auto_steps(double p, double beta, const RadialSetup& set) {
    const double kappa = std::pow(2.0 * beta, p / (p - 1.0));
    const double len = set.s1 - set.s0;
    double steps = std::max({2000.0, 100.0 * p, 40.0 * std::ceil(kappa * len)});
    return static_cast<int>(std::min(steps, 4.0e6));
}

}  // namespace

RadialEigenPair solve_eigen_radial(double p, double beta, const Domain& domain,
                                   const RadialEigenOptions& opts) {
    if (!(p > 1)) throw std::invalid_argument("p must be > 1");
    if (!(beta > 0)) throw std::invalid_argument("beta must be positive");
    const RadialSetup set = radial_setup(domain);
    const int steps = opts.steps > 0 ? opts.steps : auto_steps(p, beta, set);

    const double lam_hi = -std::pow(beta, p) * perimeter_volume_ratio(domain);
    const double lam_lo = -(std::pow(2.0 * beta, p * p / (p - 1.0)) + 10.0);

    int evals = 0;
    // Positive side of the search: the solution stayed positive and over-shoots
    // the outer Robin flux. Crossing solutions (u <= 0 somewhere) belong to the
    // negative side; this keeps the bisection on the first eigenvalue, below
    // which every shot is positive with positive mismatch.
    auto positive_side = [&](double lam) {
        ++evals;
        const ShootResult r = integrate_radial(p, lam, beta, domain, steps);
        return !r.crossed && r.mismatch > 0;
    };

    if (positive_side(lam_hi)) {
        std::ostringstream os;
        os << "bracket failure: mismatch already positive at the variational bound "
           << lam_hi << " (window [" << lam_lo << ", " << lam_hi << "])";
        throw BracketError(os.str(), lam_lo, lam_hi);
    }
    double neg = lam_hi, pos = lam_hi;
    bool found = false;
    for (int scan = 0; scan < 400 && pos > lam_lo; ++scan) {
        const double next = std::max(pos * opts.scan_ratio, lam_lo);
        if (positive_side(next)) {
            found = true;
            pos = next;
            break;
        }
        neg = next;
        pos = next;
        if (next == lam_lo) break;
    }
    if (!found) {
        std::ostringstream os;
        os << "bracket failure: no sign change of the shooting mismatch in the window ["
           << lam_lo << ", " << lam_hi << "] (" << evals << " shots)";
        throw BracketError(os.str(), lam_lo, lam_hi);
    }

    for (int it = 0; it < opts.max_bisection; ++it) {
        const double mid = 0.5 * (pos + neg);
        if (positive_side(mid)) pos = mid;
        else neg = mid;
        if (neg - pos < opts.rel_tol * std::max(1.0, std::abs(mid))) break;
    }
    const double lambda = 0.5 * (pos + neg);

    ShootResult fin = integrate_radial(p, lambda, beta, domain, steps);
    ++evals;

    RadialEigenPair pair;
    pair.lambda = lambda;
    pair.mismatch = fin.mismatch;
    pair.steps = steps;
    pair.evaluations = evals;
    pair.mass_integral = fin.mass_integral;
    pair.grad_integral = fin.grad_integral;
    pair.boundary_integral = fin.boundary_integral;

    // Normalize so the largest boundary value is 1 (the outer end for
    // interval/ball; for shells the inner end starts at 1 in the IC frame).
    RadialProfile& prof = pair.profile;
    prof = std::move(fin.profile);
    const auto& lu = fin.profile_log_values;
    double log_top = lu.back();
    if (!set.from_center) log_top = std::max(log_top, lu.front());
    for (std::size_t i = 0; i < prof.values.size(); ++i) {
        prof.values[i] = std::max(std::exp(lu[i] - log_top),
                                  std::numeric_limits<double>::min());
        prof.derivatives[i] = fin.profile_derivative_signs[i] *
                              std::exp(fin.profile_log_derivatives[i] - log_top);
    }
    return pair;
}

ScalarField limit_profile(double beta, const std::shared_ptr<const Grid>& grid) {
    if (!(beta > 0)) throw std::invalid_argument("beta must be positive");
    ScalarField f(grid);
    for (std::size_t i = 0; i < grid->size(); ++i)
        f[i] = std::exp(-beta * boundary_distance(grid->domain(), grid->point(i)));
    return f;
}

double eval_radial(const RadialProfile& profile, const Domain& domain,
                   const std::array<double, 2>& x) {
    double s = x[0];
    if (domain.kind() == DomainKind::Interval)
        s = std::abs(x[0] - 0.5 * (domain.a() + domain.b()));
    return profile.value_at(s);
}

}  // namespace plap
