// scenarios.hpp: canned scenario catalog and the key = value config loader
#pragma once

#include "qtt/sweep.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qtt {

struct ScenarioInfo {
    std::string name;
    std::string figure;       // figure family the output feeds (F1..F7, or "-")
    std::string description;
    bool identity_columns{false};
};

const std::vector<ScenarioInfo>& scenario_catalog();

// Machine-readable catalog (JSON) including the CSV column schema of each entry.
void write_catalog(std::ostream& os);

// Defaults of a canned scenario. Throws std::invalid_argument for an unknown name.
SweepConfig scenario_config(std::string_view name);

// 150 log-spaced points on [0.004, 0.8] plus 50 uniform points inside (0.10, 0.16).
std::vector<double> default_tb_grid();

inline const std::vector<double> kDefaultTimes{0.1, 0.3, 0.8, 3.0, 6.0, 10.0};

// "default" | "log:a:b:n" | "lin:a:b:n" | comma-separated numbers.
std::vector<double> parse_grid(std::string_view text);

// Overrides `cfg` with the keys found in an INI-style file:
//   [scenario] name
//   [model]    t_a t_c omega_ab omega_bc omega_ca kappa zero_frequency (ohmic-limit|drop)
//   [grid]     t_b times (grid syntax, or "steady" for times)
//   [states]   initial (comma-separated tokens)
//   [numerics] h dt
//   [run]      seed jobs out identity_columns
// Unknown keys are rejected.
void apply_config_file(SweepConfig& cfg, const std::filesystem::path& path);

}  // namespace qtt
