#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "plap/geometry.hpp"

namespace plap {

/// Resolved run configuration for one CLI command. Built from an optional
/// key=value config file overlaid with command-line flags (flags win); every
/// key is validated before any computation starts and unknown keys are
/// rejected.
struct RunConfig {
    std::string command;

    std::optional<Domain> domain;
    std::optional<double> p;
    std::vector<double> p_list;
    std::optional<double> beta;
    std::vector<double> beta_list;
    int resolution = 256;
    std::string solver = "radial";  ///< radial | variational | both
    double tolerance = 1e-9;
    int max_iters = 200000;
    int steps = 0;                  ///< radial ODE steps; 0 = automatic
    std::string output_dir = ".";
    std::string field_source = "exact";  ///< exact | file
    std::string field_file;
    std::vector<double> eps_list = {0.2, 0.1};

    // shell-vs-ball comparison
    std::optional<int> n;
    std::optional<double> volume;
    std::optional<double> inner_radius;

    nlohmann::json to_json() const;
};

/// Parses `{ kind = ball, n = 2, R = 1 }` (also accepted without braces).
Domain parse_domain_spec(const std::string& spec);

/// Reads a plain key = value file ('#' starts a comment). Duplicate keys keep
/// the last value. Throws on syntax errors.
std::map<std::string, std::string> parse_config_file(const std::string& path);

/// Applies key/value pairs onto a config; unknown keys or malformed values
/// throw std::invalid_argument.
void apply_config_entries(RunConfig& config,
                          const std::map<std::string, std::string>& entries);

/// Checks that every parameter the command needs is present and valid; throws
/// std::invalid_argument otherwise.
void validate_config(const RunConfig& config);

std::vector<double> parse_number_list(const std::string& text);

}  // namespace plap
