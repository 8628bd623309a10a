#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "plap/radial.hpp"
#include "plap/viscosity.hpp"

using namespace plap;

namespace {

/// p = 64 interval eigenfunction sampled onto a grid, sup-normalized.
ScalarField sweep_field(const std::shared_ptr<const Grid>& grid, double beta) {
    const RadialEigenPair pair = solve_eigen_radial(64.0, beta, grid->domain());
    ScalarField f(grid);
    double sup = 0;
    for (std::size_t i = 0; i < grid->size(); ++i) {
        f[i] = eval_radial(pair.profile, grid->domain(), grid->point(i));
        sup = std::max(sup, f[i]);
    }
    for (double& v : f.values) v /= sup;
    return f;
}

}  // namespace

TEST_CASE("infinity_laplacian: constants, affine and exponential fields") {
    auto grid1 = make_grid(Domain::interval(0, 1), 64);
    auto grid2 = make_grid(Domain::rectangle(1, 1), 16);

    ScalarField c(grid1, 3.0);
    CHECK(infinity_laplacian(c, 32).value() == doctest::Approx(0.0));

    ScalarField affine(grid2);
    for (std::size_t i = 0; i < grid2->size(); ++i) affine[i] = grid2->point(i)[0];
    CHECK(infinity_laplacian(affine, grid2->index(8, 8)).value() ==
          doctest::Approx(0.0).epsilon(1e-12));

    // e^{beta x}: (u')^2 u'' = beta^4 e^{3 beta x}
    const double beta = 1.3;
    ScalarField expf(grid1);
    for (std::size_t i = 0; i < grid1->size(); ++i)
        expf[i] = std::exp(beta * grid1->point(i)[0]);
    const std::size_t mid = 32;
    const double x = grid1->point(mid)[0];
    const double expected = std::pow(beta, 4) * std::exp(3 * beta * x);
    CHECK(infinity_laplacian(expf, mid).value() ==
          doctest::Approx(expected).epsilon(1e-3));

    // quadratic fields are differentiated exactly
    ScalarField quad(grid2);
    for (std::size_t i = 0; i < grid2->size(); ++i) {
        const auto p = grid2->point(i);
        quad[i] = 2 * p[0] * p[0] + p[0] * p[1] - p[1] * p[1] + 0.5 * p[0];
    }
    const auto idx = grid2->index(7, 9);
    const auto pt = grid2->point(idx);
    const double gx = 4 * pt[0] + pt[1] + 0.5, gy = pt[0] - 2 * pt[1];
    CHECK(infinity_laplacian(quad, idx).value() ==
          doctest::Approx(4 * gx * gx + 2 * gx * gy - 2 * gy * gy).epsilon(1e-12));
}

TEST_CASE("infinity_laplacian routes incomplete stencils to the caller") {
    auto grid = make_grid(Domain::interval(0, 1), 16);
    ScalarField f(grid, 1.0);
    CHECK_FALSE(infinity_laplacian(f, 0).has_value());   // boundary
    CHECK_FALSE(infinity_laplacian(f, 16).has_value());  // boundary
    auto ball = make_grid(Domain::ball(2, 1), 16);
    ScalarField g(ball, 1.0);
    CHECK_FALSE(infinity_laplacian(g, 0).has_value());   // center: no left neighbor
}

TEST_CASE("check_limit_pde: exact profile passes on all domains") {
    const double beta = 1.0;
    for (const Domain& dom : {Domain::interval(-1, 1), Domain::ball(2, 1),
                              Domain::shell(2, 1, 2), Domain::rectangle(1, 1)}) {
        CAPTURE(dom.describe());
        for (int res : {64, 128}) {
            auto grid = make_grid(dom, res);
            const ScalarField u = limit_profile(beta, grid);
            const ViscosityReport rep = check_limit_pde(u, beta);
            CAPTURE(res);
            CHECK(rep.pass);
            CHECK(rep.worst_interior < rep.tol);
            CHECK(rep.worst_boundary < rep.tol);
        }
    }
}

TEST_CASE("check_limit_pde: eikonal branch is active on the exact profile") {
    auto grid = make_grid(Domain::interval(-1, 1), 64);
    const ScalarField u = limit_profile(1.0, grid);
    const ViscosityReport rep = check_limit_pde(u, 1.0);
    REQUIRE(!rep.interior_points.empty());
    for (std::size_t k = 0; k < rep.interior_points.size(); ++k) {
        CHECK(rep.active_branch[k] == Branch::Eikonal);
        // the infinity branch value is beta^4 u^3 > 0 here, so the minimum
        // (the eikonal branch) carries a near-zero residual
        CHECK(std::abs(rep.interior_residuals[k]) < rep.tol);
    }
}

TEST_CASE("check_limit_pde: constant field fails with residual beta") {
    auto grid = make_grid(Domain::interval(-1, 1), 64);
    const double beta = 1.0;
    ScalarField ones(grid, 1.0);
    const ViscosityReport rep = check_limit_pde(ones, beta);
    CHECK_FALSE(rep.pass);
    CHECK(rep.worst_interior == doctest::Approx(beta));
}

TEST_CASE("check_limit_pde rejects non-positive fields") {
    auto grid = make_grid(Domain::interval(0, 1), 16);
    ScalarField f(grid, 1.0);
    f[7] = 0.0;
    CHECK_THROWS_AS(check_limit_pde(f, 1.0), std::invalid_argument);
}

TEST_CASE("classification covers every grid point exactly once") {
    for (const Domain& dom : {Domain::interval(-1, 1), Domain::ball(2, 1),
                              Domain::rectangle(2, 1)}) {
        auto grid = make_grid(dom, 32);
        const ViscosityReport rep = check_limit_pde(limit_profile(1.0, grid), 1.0);
        std::set<std::size_t> seen;
        for (auto i : rep.interior_points) seen.insert(i);
        for (auto i : rep.boundary_points) seen.insert(i);
        for (auto i : rep.excluded_points) seen.insert(i);
        CHECK(seen.size() == grid->size());
        CHECK(rep.interior_points.size() + rep.boundary_points.size() +
                  rep.excluded_points.size() ==
              grid->size());
    }
}

TEST_CASE("excluded set hugs the ridge for ball and interval") {
    for (const Domain& dom : {Domain::interval(-1, 1), Domain::ball(2, 1)}) {
        CAPTURE(dom.describe());
        auto grid = make_grid(dom, 64);
        const double h = grid->spacing();
        const ViscosityReport rep = check_limit_pde(limit_profile(1.0, grid), 1.0);
        const double mid = dom.kind() == DomainKind::Interval ? 0.0 : 0.0;
        for (auto i : rep.excluded_points) {
            const double ridge_dist = dom.kind() == DomainKind::Interval
                                          ? std::abs(grid->point(i)[0] - mid)
                                          : grid->point(i)[0];
            CHECK(ridge_dist <= 2 * h + 1e-12);
        }
        // and no included point sits inside the 2h band
        for (auto i : rep.interior_points) {
            const double ridge_dist = dom.kind() == DomainKind::Interval
                                          ? std::abs(grid->point(i)[0] - mid)
                                          : grid->point(i)[0];
            CHECK(ridge_dist > 2 * h);
        }
    }
}

TEST_CASE("exact profile residual is O(h) with a common constant") {
    for (const Domain& dom : {Domain::interval(-1, 1), Domain::ball(2, 1)}) {
        CAPTURE(dom.describe());
        const double C = 1.0;
        for (int res : {32, 64, 128}) {
            auto grid = make_grid(dom, res);
            const ViscosityReport rep = check_limit_pde(limit_profile(1.0, grid), 1.0);
            const double worst = std::max(rep.worst_interior, rep.worst_boundary);
            CHECK(worst <= C * grid->spacing());
        }
    }
}

TEST_CASE("sweep eigenfunction passes the limit PDE check") {
    const double beta = 1.0;
    double coarse = -1;
    for (int res : {32, 128, 256}) {
        auto grid = make_grid(Domain::interval(-1, 1), res);
        const ScalarField f = sweep_field(grid, beta);
        const ViscosityReport rep = check_limit_pde(f, beta);
        CAPTURE(res);
        if (res >= 128) CHECK(rep.pass);
        const double worst = std::max(rep.worst_interior, rep.worst_boundary);
        if (coarse < 0) coarse = worst;
        else CHECK(worst <= coarse);  // refinement does not inflate the residual
    }
}

TEST_CASE("log_transform_check: exact profile and constants") {
    const double beta = 1.0;
    auto grid = make_grid(Domain::interval(-1, 1), 64);
    const ScalarField u = limit_profile(beta, grid);
    const ViscosityReport good = log_transform_check(u, beta);
    CHECK(good.pass);
    CHECK(good.worst_interior < good.tol);

    // v = log(e) = 1: first branch = -lambda < 0, second = 0, residual = lambda
    ScalarField e_field(grid, std::exp(1.0));
    const ViscosityReport bad = log_transform_check(e_field, 1.0);
    CHECK_FALSE(bad.pass);
    CHECK(bad.worst_interior == doctest::Approx(1.0));
}

TEST_CASE("log transform agrees with the direct check on the sweep field") {
    const double beta = 1.0;
    auto grid = make_grid(Domain::interval(-1, 1), 128);
    const ScalarField f = sweep_field(grid, beta);
    const ViscosityReport direct = check_limit_pde(f, beta);
    const ViscosityReport logrep = log_transform_check(f, beta);
    CHECK(direct.pass == logrep.pass);
}

TEST_CASE("barrier_compare: exact profile mechanics") {
    const double beta = 1.0;
    auto grid = make_grid(Domain::interval(-1, 1), 128);
    const ScalarField u = limit_profile(beta, grid);
    const double R = 1.0;

    SUBCASE("passes at lambda = beta") {
        const BarrierResult r = barrier_compare(u, beta, 0.1, 0.1 / (4 * R));
        CHECK(r.lower_ok);
        CHECK(r.upper_ok);
    }
    SUBCASE("detects a doubled eigenvalue through the upper barrier") {
        const BarrierResult r = barrier_compare(u, 2 * beta, 0.1 * beta,
                                                0.1 * beta / (4 * R));
        CHECK_FALSE(r.upper_ok);
    }
    SUBCASE("theorem mechanism: pass at beta, fail beyond 2 eps both ways") {
        for (double eps : {0.05, 0.1, 0.2}) {
            CAPTURE(eps);
            const double gamma = eps / (4 * R);
            CHECK(barrier_compare(u, beta, eps, gamma).lower_ok);
            CHECK(barrier_compare(u, beta, eps, gamma).upper_ok);
            const BarrierResult hi = barrier_compare(u, beta + 2 * eps, eps, gamma);
            const bool hi_pass = hi.lower_ok && hi.upper_ok;
            CHECK_FALSE(hi_pass);
            const BarrierResult lo = barrier_compare(u, beta - 2 * eps, eps, gamma);
            const bool lo_pass = lo.lower_ok && lo.upper_ok;
            CHECK_FALSE(lo_pass);
        }
    }
    SUBCASE("gamma constraint is enforced") {
        CHECK_THROWS_AS(barrier_compare(u, beta, 0.1, 0.1), std::invalid_argument);
    }
}

TEST_CASE("barrier_compare accepts the p=64 eigenfunction at all eps") {
    const double beta = 1.0;
    auto grid = make_grid(Domain::interval(-1, 1), 256);
    const ScalarField f = sweep_field(grid, beta);
    for (double eps : {0.2, 0.1, 0.05}) {
        CAPTURE(eps);
        const BarrierResult r = barrier_compare(f, beta, eps, eps / 4);
        CHECK(r.lower_ok);
        CHECK(r.upper_ok);
    }
}

TEST_CASE("eigenvalue_bracket: exact profile and sweep field") {
    const double beta = 1.0;
    const std::vector<double> eps_grid{0.2, 0.1};

    auto grid = make_grid(Domain::interval(-1, 1), 128);
    const EigenvalueBracket exact = eigenvalue_bracket(limit_profile(beta, grid), beta,
                                                       eps_grid);
    REQUIRE(exact.found);
    CHECK(exact.lambda_low >= 0.8);
    CHECK(exact.lambda_high <= 1.2);
    CHECK(exact.lambda_low <= beta);
    CHECK(exact.lambda_high >= beta);
    CHECK(exact.lambda_high - exact.lambda_low <= 2 * 0.1);

    const EigenvalueBracket swept =
        eigenvalue_bracket(sweep_field(grid, beta), beta, eps_grid);
    REQUIRE(swept.found);
    CHECK(swept.lambda_low <= beta);
    CHECK(swept.lambda_high >= beta);

    ScalarField ones(grid, 1.0);
    const EigenvalueBracket none = eigenvalue_bracket(ones, beta, eps_grid);
    CHECK_FALSE(none.found);
}
