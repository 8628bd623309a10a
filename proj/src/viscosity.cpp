#include "plap/viscosity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "plap/operators.hpp"

namespace plap {

namespace {

double sq(double x) { return x * x; }

/// Distance from a grid point to the ridge of the distance function
/// (center / midpoint / mid-sphere / rectangle medial axis).
double ridge_distance(const Grid& grid, std::size_t idx) {
    const Domain& dom = grid.domain();
    const auto x = grid.point(idx);
    switch (dom.kind()) {
        case DomainKind::Interval:
            return std::abs(x[0] - 0.5 * (dom.a() + dom.b()));
        case DomainKind::Ball: return x[0];
        case DomainKind::Shell:
            return std::abs(x[0] - 0.5 * (dom.inner_radius() + dom.outer_radius()));
        case DomainKind::Rectangle: {
            // Two smallest of the four edge distances; the tie locus is the
            // medial axis. Perpendicular pairs meet along 45-degree segments,
            // opposite pairs along the central segment.
            const double d[4] = {x[0], dom.width() - x[0], x[1], dom.height() - x[1]};
            double best = std::numeric_limits<double>::infinity();
            const double dmin = std::min(std::min(d[0], d[1]), std::min(d[2], d[3]));
            for (int a = 0; a < 4; ++a) {
                for (int b = a + 1; b < 4; ++b) {
                    if (std::min(d[a], d[b]) > dmin + 1e-15) continue;
                    const bool opposite = (a / 2) == (b / 2);
                    const double gap = std::abs(d[a] - d[b]);
                    best = std::min(best, opposite ? gap / 2 : gap / std::sqrt(2.0));
                }
            }
            return best;
        }
    }
    return 0;
}

struct Stencil2D {
    double gx, gy, uxx, uyy, uxy;
};

bool central_stencil(const ScalarField& f, std::size_t idx, double& g1, double& upp,
                     Stencil2D* s2) {
    const Grid& grid = *f.grid;
    const int ny = grid.ny();
    const int i = static_cast<int>(idx) / ny;
    const int j = static_cast<int>(idx) % ny;
    if (grid.coord_dim() == 1) {
        if (i <= 0 || i >= grid.nx() - 1) return false;
        const double h = grid.spacing_x();
        g1 = (f[idx + 1] - f[idx - 1]) / (2 * h);
        upp = (f[idx + 1] - 2 * f[idx] + f[idx - 1]) / (h * h);
        return true;
    }
    if (i <= 0 || i >= grid.nx() - 1 || j <= 0 || j >= grid.ny() - 1) return false;
    const double hx = grid.spacing_x(), hy = grid.spacing_y();
    const auto at = [&](int di, int dj) { return f[grid.index(i + di, j + dj)]; };
    s2->gx = (at(1, 0) - at(-1, 0)) / (2 * hx);
    s2->gy = (at(0, 1) - at(0, -1)) / (2 * hy);
    s2->uxx = (at(1, 0) - 2 * at(0, 0) + at(-1, 0)) / (hx * hx);
    s2->uyy = (at(0, 1) - 2 * at(0, 0) + at(0, -1)) / (hy * hy);
    s2->uxy = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4 * hx * hy);
    return true;
}

}  // namespace

double residual_tolerance(double h) { return 0.5 * std::sqrt(h); }

std::optional<double> infinity_laplacian(const ScalarField& field, std::size_t idx) {
    if (!field.grid || idx >= field.size()) return std::nullopt;
    if (field.grid->is_boundary(idx)) return std::nullopt;
    double g1 = 0, upp = 0;
    Stencil2D s2{};
    if (!central_stencil(field, idx, g1, upp, &s2)) return std::nullopt;
    if (field.grid->coord_dim() == 1) return upp * g1 * g1;
    return s2.uxx * sq(s2.gx) + 2 * s2.uxy * s2.gx * s2.gy + s2.uyy * sq(s2.gy);
}

namespace {

/// Shared classification + interior residual pass. The interior operator is
/// supplied as a callback on (|grad u|, Delta_inf u, u).
template <typename InteriorFn, typename BoundaryFn>
ViscosityReport run_pointwise(const ScalarField& field, InteriorFn interior_res,
                              BoundaryFn boundary_res, bool record_boundary) {
    const Grid& grid = *field.grid;
    const double h = grid.spacing();
    ViscosityReport rep;
    rep.tol = residual_tolerance(h);
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
        // The ridge of the distance function is off limits for boundary points
        // too: the rectangle's diagonals terminate in the corners, where the
        // edge-aligned stencils cannot see the interior growth.
        const bool near_ridge = ridge_distance(grid, idx) <= 2 * h + 1e-12;
        if (grid.is_boundary(idx)) {
            if (near_ridge) {
                rep.excluded_points.push_back(idx);
                continue;
            }
            rep.boundary_points.push_back(idx);
            if (record_boundary) {
                const double r = boundary_res(idx);
                rep.boundary_residuals.push_back(r);
                rep.worst_boundary = std::max(rep.worst_boundary, std::abs(r));
            }
            continue;
        }
        double g1 = 0, upp = 0;
        Stencil2D s2{};
        const bool ok = central_stencil(field, idx, g1, upp, &s2);
        if (!ok || near_ridge) {
            rep.excluded_points.push_back(idx);
            continue;
        }
        double gm, dinf;
        if (grid.coord_dim() == 1) {
            gm = std::abs(g1);
            dinf = upp * g1 * g1;
        } else {
            gm = std::sqrt(sq(s2.gx) + sq(s2.gy));
            dinf = s2.uxx * sq(s2.gx) + 2 * s2.uxy * s2.gx * s2.gy + s2.uyy * sq(s2.gy);
        }
        const auto [r, branch] = interior_res(gm, dinf, field[idx]);
        rep.interior_points.push_back(idx);
        rep.interior_residuals.push_back(r);
        rep.active_branch.push_back(branch);
        rep.worst_interior = std::max(rep.worst_interior, std::abs(r));
    }
    rep.pass = std::max(rep.worst_interior, rep.worst_boundary) <= rep.tol;
    return rep;
}

void require_positive(const ScalarField& field) {
    if (!field.grid) throw std::invalid_argument("field has no grid");
    for (double v : field.values)
        if (!(v > 0)) throw std::invalid_argument("field must be positive");
}

}  // namespace

ViscosityReport check_limit_pde(const ScalarField& field, double beta) {
    require_positive(field);
    if (!(beta > 0)) throw std::invalid_argument("beta must be positive");
    const Grid& grid = *field.grid;
    const auto g = nodal_gradient(grid, field.values);

    auto interior = [beta](double gm, double dinf, double u) {
        const double eik = gm - beta * u;
        const Branch br = eik <= dinf ? Branch::Eikonal : Branch::Infinity;
        return std::pair<double, Branch>(-std::min(eik, dinf), br);
    };
    auto boundary = [&](std::size_t idx) {
        double gm2 = 0;
        for (const auto& comp : g) gm2 += sq(comp[idx]);
        const double eik = std::sqrt(gm2) - beta * field[idx];
        double worst = 0;
        for (const auto& nu : grid.normals(idx)) {
            const double dnu = normal_derivative(grid, field.values, idx, nu);
            const double r = std::min(eik, dnu);
            if (std::abs(r) > std::abs(worst)) worst = r;
        }
        return worst;
    };
    return run_pointwise(field, interior, boundary, true);
}

ViscosityReport log_transform_check(const ScalarField& field, double lambda) {
    require_positive(field);
    ScalarField v(field.grid);
    for (std::size_t i = 0; i < field.size(); ++i) v[i] = std::log(field[i]);

    auto interior = [lambda](double gm, double dinf, double) {
        const double eik = gm - lambda;
        const double inf_branch = dinf + gm * gm * gm * gm;
        const Branch br = eik <= inf_branch ? Branch::Eikonal : Branch::Infinity;
        return std::pair<double, Branch>(-std::min(eik, inf_branch), br);
    };
    auto boundary = [](std::size_t) { return 0.0; };
    return run_pointwise(v, interior, boundary, false);
}

BarrierResult barrier_compare(const ScalarField& field, double lambda, double eps,
                              double gamma) {
    require_positive(field);
    if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
    if (!(gamma > 0)) throw std::invalid_argument("gamma must be positive");
    const Grid& grid = *field.grid;
    const ScalarField dist = distance_field(field.grid);
    double radius = 0;
    for (std::size_t i = 0; i < dist.size(); ++i) radius = std::max(radius, dist[i]);
    if (!(gamma < eps / (2 * radius)))
        throw std::invalid_argument("gamma must be < eps / (2R)");

    double sup = 0;
    for (double v : field.values) sup = std::max(sup, v);
    // v = log of the sup-normalized field; x0 = boundary argmax of v.
    double v0 = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < field.size(); ++i)
        if (grid.is_boundary(i)) v0 = std::max(v0, std::log(field[i] / sup));

    const double band = radius / 4;
    const double slack = 1e-9;
    BarrierResult res;
    res.lower_margin = std::numeric_limits<double>::infinity();
    res.upper_margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < field.size(); ++i) {
        const double v = std::log(field[i] / sup);
        const double d = dist[i];
        const double g = -(lambda + eps) * d + gamma * d * d;
        res.lower_margin = std::min(res.lower_margin, v - (v0 + g));
        if (d <= band) {
            const double hbar = -(lambda - eps) * d;
            res.upper_margin = std::min(res.upper_margin, (v0 + hbar) - v);
        }
    }
    res.lower_ok = res.lower_margin >= -slack;
    res.upper_ok = res.upper_margin >= -slack;
    return res;
}

EigenvalueBracket eigenvalue_bracket(const ScalarField& field, double beta,
                                     const std::vector<double>& eps_grid) {
    require_positive(field);
    if (eps_grid.empty()) throw std::invalid_argument("eps grid must be non-empty");
    double min_eps = eps_grid.front();
    for (double e : eps_grid) {
        if (!(e > 0)) throw std::invalid_argument("eps values must be positive");
        min_eps = std::min(min_eps, e);
    }
    const ScalarField dist = distance_field(field.grid);
    double radius = 0;
    for (std::size_t i = 0; i < dist.size(); ++i) radius = std::max(radius, dist[i]);

    auto admissible = [&](double lam) {
        for (double e : eps_grid) {
            const BarrierResult r = barrier_compare(field, lam, e, e / (4 * radius));
            if (!r.lower_ok || !r.upper_ok) return false;
        }
        return true;
    };

    const double lo = 0.2 * beta, hi = 2.5 * beta;
    const double step = min_eps / 10;
    EigenvalueBracket out;
    for (double lam = lo; lam <= hi + 1e-12; lam += step) {
        if (!admissible(lam)) continue;
        if (!out.found) {
            out.found = true;
            out.lambda_low = lam;
        }
        out.lambda_high = lam;
    }
    return out;
}

}  // namespace plap
