#include "plap/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace plap {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

nlohmann::json domain_to_json(const Domain& domain) {
    nlohmann::json j;
    j["kind"] = to_string(domain.kind());
    switch (domain.kind()) {
        case DomainKind::Interval:
            j["a"] = domain.a();
            j["b"] = domain.b();
            break;
        case DomainKind::Ball:
            j["n"] = domain.dim();
            j["R"] = domain.radius();
            break;
        case DomainKind::Shell:
            j["n"] = domain.dim();
            j["r"] = domain.inner_radius();
            j["R"] = domain.outer_radius();
            break;
        case DomainKind::Rectangle:
            j["w"] = domain.width();
            j["h"] = domain.height();
            break;
    }
    return j;
}

Domain domain_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "interval") return Domain::interval(j.at("a"), j.at("b"));
    if (kind == "ball") return Domain::ball(j.at("n"), j.at("R"));
    if (kind == "shell") return Domain::shell(j.at("n"), j.at("r"), j.at("R"));
    if (kind == "rectangle") return Domain::rectangle(j.at("w"), j.at("h"));
    throw std::invalid_argument("unknown domain kind: " + kind);
}

nlohmann::json eigenpair_to_json(const EigenPair& pair, const Domain& domain) {
    return nlohmann::json{
        {"p", pair.p},
        {"beta", pair.beta},
        {"domain", domain_to_json(domain)},
        {"lambda", pair.lambda},
        {"diagnostics",
         {{"iterations", pair.diagnostics.iterations},
          {"final_gradient_norm", pair.diagnostics.final_gradient_norm},
          {"quotient_history_length", pair.diagnostics.quotient_history_length}}}};
}

nlohmann::json radial_pair_to_json(const RadialEigenPair& pair, const Domain& domain,
                                   double p, double beta) {
    return nlohmann::json{{"p", p},
                          {"beta", beta},
                          {"domain", domain_to_json(domain)},
                          {"lambda", pair.lambda},
                          {"norm", "max boundary value = 1"},
                          {"steps", pair.steps},
                          {"mismatch", pair.mismatch}};
}

nlohmann::json viscosity_report_to_json(const ViscosityReport& report) {
    return nlohmann::json{{"worst_interior", report.worst_interior},
                          {"worst_boundary", report.worst_boundary},
                          {"tol", report.tol},
                          {"pass", report.pass},
                          {"excluded_count", report.excluded_points.size()}};
}

namespace {

void write_coords(std::ostream& os, const Grid& grid, std::size_t i) {
    const auto x = grid.point(i);
    os << fmt17(x[0]);
    if (grid.coord_dim() == 2) os << ',' << fmt17(x[1]);
}

}  // namespace

void write_grid_csv(std::ostream& os, const Grid& grid) {
    const bool two = grid.coord_dim() == 2;
    os << (two ? "index,x,y,role,volume_weight,boundary_weight,nu_x,nu_y\n"
               : "index,x,role,volume_weight,boundary_weight,nu_x\n");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        os << i << ',';
        write_coords(os, grid, i);
        os << ',' << (grid.is_boundary(i) ? "boundary" : "interior") << ','
           << fmt17(grid.volume_weight(i)) << ',' << fmt17(grid.boundary_weight(i));
        const auto normals = grid.normals(i);
        const std::array<double, 2> nu = normals.empty() ? std::array<double, 2>{0, 0}
                                                         : normals.front();
        os << ',' << fmt17(nu[0]);
        if (two) os << ',' << fmt17(nu[1]);
        os << '\n';
    }
}

void write_field_csv(std::ostream& os, const ScalarField& field) {
    const Grid& grid = *field.grid;
    os << (grid.coord_dim() == 2 ? "index,x,y,u\n" : "index,x,u\n");
    for (std::size_t i = 0; i < field.size(); ++i) {
        os << i << ',';
        write_coords(os, grid, i);
        os << ',' << fmt17(field[i]) << '\n';
    }
}

void write_profile_csv(std::ostream& os, const RadialProfile& profile) {
    os << "s,u,du\n";
    for (std::size_t i = 0; i < profile.nodes.size(); ++i)
        os << fmt17(profile.nodes[i]) << ',' << fmt17(profile.values[i]) << ','
           << fmt17(profile.derivatives[i]) << '\n';
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepEntry>& entries) {
    os << "p,lambda,root,profile_gap,solver,ok\n";
    for (const SweepEntry& e : entries) {
        os << fmt17(e.p) << ',';
        if (e.ok)
            os << fmt17(e.record.lambda) << ',' << fmt17(e.record.root) << ','
               << fmt17(e.record.profile_gap) << ',' << to_string(e.record.solver);
        else
            os << ",,," << "error";
        os << ',' << (e.ok ? 1 : 0) << '\n';
    }
}

void write_expansion_csv(std::ostream& os, const std::vector<ExpansionRecord>& records) {
    os << "beta,lambda,leading,curvature_coeff,ok\n";
    for (const ExpansionRecord& r : records) {
        os << fmt17(r.beta) << ',';
        if (r.ok)
            os << fmt17(r.lambda) << ',' << fmt17(r.leading) << ','
               << fmt17(r.curvature_coeff);
        else
            os << ",,";
        os << ',' << (r.ok ? 1 : 0) << '\n';
    }
}

void write_viscosity_csv(std::ostream& os, const ViscosityReport& report,
                         const Grid& grid) {
    const bool two = grid.coord_dim() == 2;
    os << (two ? "index,x,y,class,residual,branch\n" : "index,x,class,residual,branch\n");
    auto row = [&](std::size_t idx, const char* cls, double r, const char* branch) {
        os << idx << ',';
        write_coords(os, grid, idx);
        os << ',' << cls << ',' << fmt17(r) << ',' << branch << '\n';
    };
    for (std::size_t k = 0; k < report.interior_points.size(); ++k)
        row(report.interior_points[k], "interior", report.interior_residuals[k],
            report.active_branch[k] == Branch::Eikonal ? "eikonal" : "infinity");
    for (std::size_t k = 0; k < report.boundary_points.size(); ++k)
        row(report.boundary_points[k], "boundary",
            k < report.boundary_residuals.size() ? report.boundary_residuals[k] : 0.0,
            "boundary");
    for (std::size_t idx : report.excluded_points) row(idx, "excluded", 0.0, "none");
}

ScalarField read_field_csv(std::istream& is, const std::shared_ptr<const Grid>& grid) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("field CSV: empty file");
    ScalarField field(grid);
    std::vector<bool> seen(field.size(), false);
    std::size_t count = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (cells.size() < 3)
            throw std::invalid_argument("field CSV: malformed row '" + line + "'");
        std::size_t idx;
        double value;
        try {
            idx = std::stoul(cells.front());
            value = std::stod(cells.back());
        } catch (const std::exception&) {
            throw std::invalid_argument("field CSV: malformed row '" + line + "'");
        }
        if (idx >= field.size())
            throw std::invalid_argument("field CSV: index out of range");
        if (seen[idx])
            throw std::invalid_argument("field CSV: duplicate index " +
                                        std::to_string(idx));
        seen[idx] = true;
        field[idx] = value;
        ++count;
    }
    if (count != field.size())
        throw std::invalid_argument("field CSV: row count does not match the grid");
    return field;
}

}  // namespace plap
