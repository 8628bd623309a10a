#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "plap/config.hpp"
#include "plap/io.hpp"

using namespace plap;

TEST_CASE("fmt17 carries 17 significant digits") {
    const double x = 1.0 / 3.0;
    CHECK(std::stod(fmt17(x)) == x);
    CHECK(std::stod(fmt17(-1.4392288839891079)) == -1.4392288839891079);
}

TEST_CASE("domain json round trip") {
    for (const Domain& dom : {Domain::interval(-1, 1), Domain::ball(3, 1.5),
                              Domain::shell(2, 0.5, 2.0), Domain::rectangle(1, 2)}) {
        const Domain back = domain_from_json(domain_to_json(dom));
        CHECK(back.kind() == dom.kind());
        CHECK(back.volume() == doctest::Approx(dom.volume()));
        CHECK(back.perimeter() == doctest::Approx(dom.perimeter()));
    }
    CHECK_THROWS_AS(domain_from_json(nlohmann::json{{"kind", "torus"}}),
                    std::invalid_argument);
}

TEST_CASE("grid csv carries the declared columns") {
    auto grid = make_grid(Domain::rectangle(1, 1), 4);
    std::ostringstream os;
    write_grid_csv(os, *grid);
    std::istringstream is(os.str());
    std::string header;
    std::getline(is, header);
    CHECK(header == "index,x,y,role,volume_weight,boundary_weight,nu_x,nu_y");
    int rows = 0;
    for (std::string line; std::getline(is, line);) ++rows;
    CHECK(rows == 25);
}

TEST_CASE("field csv round trip") {
    auto grid = make_grid(Domain::interval(0, 1), 8);
    ScalarField f(grid);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::sin(0.3 + double(i));
    std::ostringstream os;
    write_field_csv(os, f);
    std::istringstream is(os.str());
    const ScalarField back = read_field_csv(is, grid);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(back[i] == f[i]);
}

TEST_CASE("read_field_csv rejects malformed input") {
    auto grid = make_grid(Domain::interval(0, 1), 8);
    {
        std::istringstream empty("");
        CHECK_THROWS_AS(read_field_csv(empty, grid), std::invalid_argument);
    }
    {
        std::istringstream garbage("index,x,u\nnot,a,number\n");
        CHECK_THROWS_AS(read_field_csv(garbage, grid), std::invalid_argument);
    }
    {
        std::istringstream short_file("index,x,u\n0,0.0,1.0\n");
        CHECK_THROWS_AS(read_field_csv(short_file, grid), std::invalid_argument);
    }
}

TEST_CASE("parse_domain_spec accepts the brace form") {
    const Domain a = parse_domain_spec("{ kind = interval, a = -1, b = 1 }");
    CHECK(a.kind() == DomainKind::Interval);
    const Domain b = parse_domain_spec("kind = ball, n = 2, R = 1");
    CHECK(b.kind() == DomainKind::Ball);
    CHECK(b.radius() == doctest::Approx(1.0));
    CHECK_THROWS_AS(parse_domain_spec("{ kind = cube, a = 1 }"), std::invalid_argument);
    CHECK_THROWS_AS(parse_domain_spec("{ kind = ball, n = 2 }"), std::invalid_argument);
    CHECK_THROWS_AS(parse_domain_spec("{ kind = ball, n = 2, R = 1, junk = 3 }"),
                    std::invalid_argument);
}

TEST_CASE("config file parsing and overrides") {
    const std::string path = "test_config_tmp.cfg";
    {
        std::ofstream out(path);
        out << "# comment line\n"
            << "domain = { kind = interval, a = -1, b = 1 }\n"
            << "p = 2\n"
            << "beta = 1\n"
            << "resolution = 100   # trailing comment\n";
    }
    RunConfig config;
    config.command = "solve";
    apply_config_entries(config, parse_config_file(path));
    CHECK(config.domain->kind() == DomainKind::Interval);
    CHECK(*config.p == 2.0);
    CHECK(config.resolution == 100);

    // flags win over the file
    apply_config_entries(config, {{"p", "3"}});
    CHECK(*config.p == 3.0);

    CHECK_THROWS_AS(apply_config_entries(config, {{"nonsense", "1"}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(apply_config_entries(config, {{"p", "two"}}),
                    std::invalid_argument);
    std::remove(path.c_str());

    CHECK_THROWS_AS(parse_config_file("does_not_exist.cfg"), std::invalid_argument);
}

TEST_CASE("validate_config enforces command preconditions") {
    RunConfig config;
    config.command = "solve";
    config.domain = Domain::interval(-1, 1);
    config.p = 2.0;
    config.beta = 1.0;
    CHECK_NOTHROW(validate_config(config));

    config.p = 0.5;  // p <= 1 is rejected before any computation
    CHECK_THROWS_AS(validate_config(config), std::invalid_argument);
    config.p = 2.0;

    config.command = "sweep";
    CHECK_THROWS_AS(validate_config(config), std::invalid_argument);  // empty p_list
    config.p_list = {2, 4};
    CHECK_NOTHROW(validate_config(config));
    config.p_list = {4, 2};
    CHECK_THROWS_AS(validate_config(config), std::invalid_argument);

    config.command = "expand";
    config.p_list.clear();
    config.beta_list = {2, 4};
    CHECK_THROWS_AS(validate_config(config), std::invalid_argument);  // needs ball/shell
    config.domain = Domain::ball(2, 1);
    CHECK_NOTHROW(validate_config(config));

    config.command = "check";
    config.domain = Domain::interval(-1, 1);
    config.field_source = "file";
    config.field_file = "";
    CHECK_THROWS_AS(validate_config(config), std::invalid_argument);

    config.command = "launch";
    CHECK_THROWS_AS(validate_config(config), std::invalid_argument);
}

TEST_CASE("RunConfig::to_json embeds the resolved parameters") {
    RunConfig config;
    config.command = "sweep";
    config.domain = Domain::ball(2, 1);
    config.p_list = {2, 4};
    config.beta = 1.5;
    config.resolution = 64;
    const nlohmann::json j = config.to_json();
    CHECK(j.at("command") == "sweep");
    CHECK(j.at("domain").at("kind") == "ball");
    CHECK(j.at("p_list").size() == 2);
    CHECK(j.at("beta") == 1.5);
    CHECK(j.at("resolution") == 64);
    CHECK(j.contains("solver"));
    CHECK(j.contains("tolerance"));
}
