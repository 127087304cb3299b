#pragma once

#include <string>
#include <vector>

#include "kinetic/scenarios.hpp"

namespace kinetic {

// One run: a named scenario plus overrides, and where/how to write output.
// The solver is fully deterministic, so there is no seed.
struct RunConfig {
  std::string scenario;
  ScenarioOverrides overrides;
  std::string output_dir = ".";  // CLI-set; not a config-file key
  int cadence = 100;             // write every k steps (>= 1); CLI-set
  std::vector<std::string> outputs{"moments-csv"};  // ⊆ {moments-csv, field-vtk}
};

bool operator==(const RunConfig& a, const RunConfig& b);
inline bool operator!=(const RunConfig& a, const RunConfig& b) { return !(a == b); }

// Plain-text key-value format (TOML-compatible subset): `key = value` lines,
// `#` comments, dotted wall keys, strings, numbers, and flat arrays.
// Accepted keys: scenario, epsilon (alias: knudsen), nu, tau_prefactor,
// tau_omega, nx, ny, nv, vmax, dt | cfl, t_end, wall.<label>.kind,
// wall.<label>.alpha, wall.<label>.Tw, outputs.
// Throws config_parse_error (line/column) on malformed text and
// solver_error(validation_error) naming the offending key otherwise.
RunConfig parse_config(const std::string& text);

// Emits a config-file text that parses back to an equal RunConfig.
std::string serialize_config(const RunConfig& rc);

}  // namespace kinetic
