#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "plap/asymptotics.hpp"
#include "plap/geometry.hpp"
#include "plap/radial.hpp"
#include "plap/variational.hpp"
#include "plap/viscosity.hpp"

namespace plap {

/// All floating-point output carries 17 significant digits so downstream
/// comparisons are bit-faithful.
std::string fmt17(double x);

nlohmann::json domain_to_json(const Domain& domain);
Domain domain_from_json(const nlohmann::json& j);

nlohmann::json eigenpair_to_json(const EigenPair& pair, const Domain& domain);
nlohmann::json radial_pair_to_json(const RadialEigenPair& pair, const Domain& domain,
                                   double p, double beta);
nlohmann::json viscosity_report_to_json(const ViscosityReport& report);

/// CSV writers; each emits a declared header line first.
void write_grid_csv(std::ostream& os, const Grid& grid);
void write_field_csv(std::ostream& os, const ScalarField& field);
void write_profile_csv(std::ostream& os, const RadialProfile& profile);
void write_sweep_csv(std::ostream& os, const std::vector<SweepEntry>& entries);
void write_expansion_csv(std::ostream& os, const std::vector<ExpansionRecord>& records);
void write_viscosity_csv(std::ostream& os, const ViscosityReport& report,
                         const Grid& grid);

/// Reads a field CSV (as written by write_field_csv) back onto a grid built
/// from the given domain/resolution. Throws on malformed input or size
/// mismatch.
ScalarField read_field_csv(std::istream& is, const std::shared_ptr<const Grid>& grid);

}  // namespace plap
