#include "plap/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace plap {

std::string to_string(SolverKind kind) {
    return kind == SolverKind::Radial ? "radial" : "variational";
}

namespace {

void sup_normalize(std::vector<double>& v) {
    double sup = 0;
    for (double x : v) sup = std::max(sup, std::abs(x));
    if (sup > 0)
        for (double& x : v) x /= sup;
}

bool field_max_on_boundary(const Grid& grid, const std::vector<double>& v) {
    double best = -std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] > best) {
            best = v[i];
            arg = i;
        }
    }
    return grid.is_boundary(arg);
}

SweepEntry solve_entry(const Domain& domain, double beta, double p,
                       const std::shared_ptr<const Grid>& grid,
                       const ScalarField& limit, const SweepOptions& opts) {
    SweepEntry entry;
    entry.p = p;
    SweepRecord& rec = entry.record;
    rec.p = p;
    rec.solver = opts.solver;

    entry.field = ScalarField(grid);
    double mass = 0, boundary = 0;
    if (opts.solver == SolverKind::Radial) {
        RadialEigenPair pair = solve_eigen_radial(p, beta, domain, opts.radial);
        rec.lambda = pair.lambda;
        for (std::size_t i = 0; i < grid->size(); ++i)
            entry.field[i] = eval_radial(pair.profile, domain, grid->point(i));
        const double lhs = (-pair.lambda) * pair.mass_integral + pair.grad_integral;
        const double rhs = std::pow(beta, p) * pair.boundary_integral;
        rec.energy_rel_err = std::abs(lhs / rhs - 1.0);
        mass = pair.mass_integral;
        boundary = pair.boundary_integral;
    } else {
        EigenPair pair = solve_variational(p, beta, grid, opts.minimize);
        rec.lambda = pair.lambda;
        entry.field.values = pair.u.values;
        const QuotientParts parts = quotient_parts(p, *grid, pair.u.values);
        const double lhs = (-pair.lambda) * parts.volume_mass + parts.grad_energy;
        const double rhs = std::pow(beta, p) * parts.boundary_mass;
        rec.energy_rel_err = std::abs(lhs / rhs - 1.0);
        mass = parts.volume_mass;
        boundary = parts.boundary_mass;
    }
    const double bp = std::pow(beta, p);
    rec.sandwich_ok = bp <= (-rec.lambda) * (1 + 1e-6) &&
                      (-rec.lambda) * mass <= bp * boundary * (1 + 1e-6);
    rec.root = std::exp(std::log(-rec.lambda) / p);
    sup_normalize(entry.field.values);
    rec.max_on_boundary = field_max_on_boundary(*grid, entry.field.values);
    double gap = 0;
    for (std::size_t i = 0; i < grid->size(); ++i)
        gap = std::max(gap, std::abs(entry.field[i] - limit[i]));
    rec.profile_gap = gap;
    entry.ok = true;
    return entry;
}

}  // namespace

SweepResult sweep_p(const Domain& domain, double beta, const std::vector<double>& p_list,
                    const SweepOptions& opts) {
    if (p_list.empty()) throw std::invalid_argument("p_list must be non-empty");
    for (std::size_t i = 0; i < p_list.size(); ++i) {
        if (!(p_list[i] > 1)) throw std::invalid_argument("all p must be > 1");
        if (i > 0 && !(p_list[i] > p_list[i - 1]))
            throw std::invalid_argument("p_list must be increasing");
    }
    SweepResult result;
    result.grid = make_grid(domain, opts.resolution);
    result.limit = limit_profile(beta, result.grid);

    for (double p : p_list) {
        try {
            result.entries.push_back(
                solve_entry(domain, beta, p, result.grid, result.limit, opts));
        } catch (const std::exception& e) {
            SweepEntry bad;
            bad.p = p;
            bad.ok = false;
            bad.error = e.what();
            result.entries.push_back(std::move(bad));
        }
    }
    return result;
}

std::vector<ExpansionRecord> beta_expansion_check(const Domain& domain, double p,
                                                  const std::vector<double>& beta_list,
                                                  const RadialEigenOptions& opts) {
    if (domain.kind() != DomainKind::Ball && domain.kind() != DomainKind::Shell)
        throw std::invalid_argument("expansion check needs a ball or shell");
    if (beta_list.empty()) throw std::invalid_argument("beta_list must be non-empty");
    for (std::size_t i = 1; i < beta_list.size(); ++i)
        if (!(beta_list[i] > beta_list[i - 1]))
            throw std::invalid_argument("beta_list must be increasing");

    std::vector<ExpansionRecord> out;
    for (double beta : beta_list) {
        ExpansionRecord rec;
        rec.beta = beta;
        rec.leading = -(p - 1) * std::pow(beta, p * p / (p - 1));
        try {
            RadialEigenPair pair = solve_eigen_radial(p, beta, domain, opts);
            rec.lambda = pair.lambda;
            rec.curvature_coeff = (rec.lambda - rec.leading) / std::pow(beta, p);
            rec.ok = true;
        } catch (const std::exception& e) {
            rec.error = e.what();
        }
        out.push_back(rec);
    }
    return out;
}

ShellVsBall shell_vs_ball(int n, double volume, double inner_radius, double p,
                          double beta, const RadialEigenOptions& opts) {
    if (!(volume > 0)) throw std::invalid_argument("volume must be positive");
    if (!(inner_radius > 0)) throw std::invalid_argument("inner radius must be positive");
    const double wn = unit_ball_volume(n);
    ShellVsBall cmp;
    cmp.ball_radius = std::pow(volume / wn, 1.0 / n);
    cmp.shell_outer = std::pow(volume / wn + std::pow(inner_radius, n), 1.0 / n);

    const Domain ball = Domain::ball(n, cmp.ball_radius);
    const Domain shell = Domain::shell(n, inner_radius, cmp.shell_outer);
    cmp.lambda_ball = solve_eigen_radial(p, beta, ball, opts).lambda;
    cmp.lambda_shell = solve_eigen_radial(p, beta, shell, opts).lambda;
    cmp.shell_larger = cmp.lambda_shell > cmp.lambda_ball;
    return cmp;
}

LimitEstimate extrapolate_limit(const SweepResult& sweep) {
    std::vector<const SweepEntry*> good;
    for (const SweepEntry& e : sweep.entries)
        if (e.ok) good.push_back(&e);
    if (good.size() < 3)
        throw std::invalid_argument("extrapolate_limit needs >= 3 successful records");
    for (const SweepEntry* e : good)
        if (e->field.grid.get() != sweep.grid.get())
            throw std::invalid_argument("sweep fields live on mismatched grids");

    LimitEstimate est;
    est.u_inf = good.back()->field;
    for (std::size_t k = 1; k < good.size(); ++k) {
        double gap = 0;
        for (std::size_t i = 0; i < est.u_inf.size(); ++i)
            gap = std::max(gap, std::abs(good[k]->field[i] - good[k - 1]->field[i]));
        est.cauchy_gaps.push_back(gap);
    }
    est.gaps_decreasing = true;
    for (std::size_t k = 1; k < est.cauchy_gaps.size(); ++k)
        if (est.cauchy_gaps[k] >= est.cauchy_gaps[k - 1]) est.gaps_decreasing = false;
    est.max_on_boundary = field_max_on_boundary(*sweep.grid, est.u_inf.values);
    return est;
}

}  // namespace plap
