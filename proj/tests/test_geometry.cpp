#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "plap/geometry.hpp"

using namespace plap;
using std::numbers::pi;

TEST_CASE("domain invariants are enforced") {
    CHECK_THROWS_AS(Domain::interval(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Domain::interval(2.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(Domain::ball(1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Domain::ball(2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Domain::shell(2, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Domain::shell(2, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Domain::rectangle(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("closed-form measures") {
    CHECK(Domain::interval(0, 1).volume() == doctest::Approx(1.0));
    CHECK(Domain::interval(0, 1).perimeter() == doctest::Approx(2.0));
    CHECK(Domain::ball(2, 1).volume() == doctest::Approx(pi));
    CHECK(Domain::ball(2, 1).perimeter() == doctest::Approx(2 * pi));
    CHECK(Domain::ball(3, 2).volume() == doctest::Approx(4.0 / 3 * pi * 8));
    CHECK(Domain::ball(3, 2).perimeter() == doctest::Approx(4 * pi * 4));
    CHECK(Domain::shell(2, 1, 2).volume() == doctest::Approx(3 * pi));
    CHECK(Domain::shell(2, 1, 2).perimeter() == doctest::Approx(6 * pi));
    CHECK(Domain::rectangle(2, 3).volume() == doctest::Approx(6.0));
    CHECK(Domain::rectangle(2, 3).perimeter() == doctest::Approx(10.0));
}

TEST_CASE("perimeter_volume_ratio examples") {
    CHECK(perimeter_volume_ratio(Domain::interval(-1, 1)) == doctest::Approx(1.0));
    CHECK(perimeter_volume_ratio(Domain::ball(2, 1)) == doctest::Approx(2.0));
    CHECK(perimeter_volume_ratio(Domain::shell(2, 1, 2)) == doctest::Approx(2.0));
}

TEST_CASE("max_mean_curvature sign convention") {
    CHECK(max_mean_curvature(Domain::ball(2, 1)) == doctest::Approx(1.0));
    CHECK(max_mean_curvature(Domain::ball(3, 2)) == doctest::Approx(0.5));
    CHECK(max_mean_curvature(Domain::shell(2, 1, 2)) == doctest::Approx(0.5));
    CHECK_THROWS_AS(max_mean_curvature(Domain::interval(0, 1)), std::invalid_argument);
    CHECK_THROWS_AS(max_mean_curvature(Domain::rectangle(1, 1)), std::invalid_argument);

    // shell inherits the outer sphere's curvature for every hole size
    for (double r : {0.1, 0.5, 0.9, 1.5}) {
        CHECK(max_mean_curvature(Domain::shell(3, r, 2)) ==
              doctest::Approx(max_mean_curvature(Domain::ball(3, 2))));
    }
}

TEST_CASE("make_grid: interval example") {
    auto grid = make_grid(Domain::interval(0, 1), 10);
    CHECK(grid->size() == 11);
    CHECK(grid->spacing() == doctest::Approx(0.1));
    CHECK(grid->volume_weight_sum() == doctest::Approx(1.0));
    CHECK(grid->boundary_weight_sum() == doctest::Approx(2.0));
    CHECK(grid->is_boundary(0));
    CHECK(grid->is_boundary(10));
    CHECK_FALSE(grid->is_boundary(5));
    CHECK(grid->normals(0).at(0)[0] == doctest::Approx(-1.0));
    CHECK(grid->normals(10).at(0)[0] == doctest::Approx(1.0));
}

TEST_CASE("make_grid: rectangle example") {
    auto grid = make_grid(Domain::rectangle(1, 1), 10);
    CHECK(grid->size() == 121);
    CHECK(grid->boundary_weight_sum() == doctest::Approx(4.0));
    CHECK(grid->volume_weight_sum() == doctest::Approx(1.0));

    // corners carry both adjacent edge normals, both unit
    const auto corner = grid->normals(grid->index(0, 0));
    REQUIRE(corner.size() == 2);
    for (const auto& nu : corner)
        CHECK(std::hypot(nu[0], nu[1]) == doctest::Approx(1.0));
    const auto edge = grid->normals(grid->index(0, 5));
    REQUIRE(edge.size() == 1);
    CHECK(edge[0][0] == doctest::Approx(-1.0));
}

TEST_CASE("make_grid: ball quadrature vs closed form") {
    auto grid = make_grid(Domain::ball(2, 1), 100);
    CHECK(grid->size() == 101);
    CHECK(std::abs(grid->volume_weight_sum() - pi) < 1e-3);
    CHECK(grid->boundary_weight_sum() == doctest::Approx(2 * pi));
    CHECK_FALSE(grid->is_boundary(0));  // the center is interior
    CHECK(grid->is_boundary(100));
}

TEST_CASE("make_grid rejects bad input") {
    CHECK_THROWS_AS(make_grid(Domain::interval(0, 1), 3), std::invalid_argument);
}

TEST_CASE("quadrature consistency under refinement") {
    const Domain domains[] = {Domain::interval(-1, 1), Domain::ball(3, 1.3),
                              Domain::shell(3, 0.5, 1.7), Domain::rectangle(2, 1)};
    for (const Domain& dom : domains) {
        CAPTURE(dom.describe());
        double prev_vol_err = -1, prev_per_err = -1;
        for (int res : {8, 16, 32, 64}) {
            auto grid = make_grid(dom, res);
            const double vol_err = std::abs(grid->volume_weight_sum() - dom.volume());
            const double per_err =
                std::abs(grid->boundary_weight_sum() - dom.perimeter());
            const double h = grid->spacing();
            CHECK(vol_err <= 2.0 * h);
            CHECK(per_err <= 2.0 * h);
            if (prev_vol_err >= 0) {
                CHECK(vol_err <= 0.5 * prev_vol_err + 1e-12);
                CHECK(per_err <= 0.5 * prev_per_err + 1e-12);
            }
            prev_vol_err = vol_err;
            prev_per_err = per_err;
        }
    }
}

TEST_CASE("boundary normals are unit") {
    for (const Domain& dom : {Domain::interval(0, 2), Domain::ball(3, 1),
                              Domain::shell(2, 1, 2), Domain::rectangle(1, 2)}) {
        auto grid = make_grid(dom, 12);
        for (std::size_t i = 0; i < grid->size(); ++i) {
            if (!grid->is_boundary(i)) {
                CHECK(grid->normals(i).empty());
                continue;
            }
            const auto normals = grid->normals(i);
            REQUIRE(!normals.empty());
            for (const auto& nu : normals)
                CHECK(std::hypot(nu[0], nu[1]) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("distance_field examples") {
    {
        auto grid = make_grid(Domain::interval(0, 1), 10);
        const ScalarField d = distance_field(grid);
        CHECK(d[5] == doctest::Approx(0.5));
        CHECK(d[0] == doctest::Approx(0.0));
        CHECK(d[10] == doctest::Approx(0.0));
    }
    {
        auto grid = make_grid(Domain::ball(2, 1), 100);
        const ScalarField d = distance_field(grid);
        CHECK(d[25] == doctest::Approx(0.75));  // |x| = 0.25
        CHECK(d[100] == doctest::Approx(0.0));
    }
    {
        auto grid = make_grid(Domain::rectangle(1, 1), 10);
        const ScalarField d = distance_field(grid);
        CHECK(d[grid->index(3, 5)] == doctest::Approx(0.3));
    }
}

TEST_CASE("distance_field is 1-Lipschitz on grid neighbors") {
    for (const Domain& dom : {Domain::interval(-2, 1), Domain::ball(3, 1.5),
                              Domain::shell(2, 0.5, 2), Domain::rectangle(2, 1)}) {
        auto grid = make_grid(dom, 16);
        const ScalarField d = distance_field(grid);
        const int nx = grid->nx(), ny = grid->ny();
        for (int i = 0; i < nx; ++i) {
            for (int j = 0; j < ny; ++j) {
                const auto a = grid->index(i, j);
                if (i + 1 < nx) {
                    const auto b = grid->index(i + 1, j);
                    CHECK(std::abs(d[a] - d[b]) <= grid->spacing_x() + 1e-12);
                }
                if (j + 1 < ny) {
                    const auto b = grid->index(i, j + 1);
                    CHECK(std::abs(d[a] - d[b]) <= grid->spacing_y() + 1e-12);
                }
            }
        }
    }
}

TEST_CASE("boundary points sit at distance zero") {
    for (const Domain& dom : {Domain::interval(0, 1), Domain::shell(2, 1, 2),
                              Domain::rectangle(1, 2)}) {
        auto grid = make_grid(dom, 8);
        const ScalarField d = distance_field(grid);
        for (std::size_t i = 0; i < grid->size(); ++i)
            if (grid->is_boundary(i)) CHECK(d[i] == doctest::Approx(0.0));
    }
}
