#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcoex/planner.hpp"
#include "qcoex/report.hpp"

namespace qcoex {

enum class Command {
  Leakage,          // per-channel background breakdown (or launch-power sweep)
  KeyRate,          // single-point key rate
  SweepDistance,    // key rate vs length
  SweepWavelength,  // key rate vs data-channel wavelength
  Plan,             // slot selection under the noise budget
};

Command parse_command(std::string_view name);
const char* to_string(Command command);

struct SweepSpec {
  std::vector<double> lengths_km;
  std::vector<double> wavelengths_nm;
  std::vector<double> launch_dbm;  // leakage command: rescale all channels per point
};

struct PlanSpec {
  double min_key_rate_bps = 0.0;
  std::vector<CandidateSlot> candidates;
};

/// A fully resolved run configuration: the JSON scenario with presets
/// expanded and every default filled in.
struct Scenario {
  LinkModel link;
  double length_km = 2.5;
  ClassicalFeasibility feasibility;
  std::optional<std::vector<double>> wavelength_grid_nm;
  SweepSpec sweep;
  std::optional<PlanSpec> plan;
};

/// Parses and validates scenario JSON. Unknown keys, bad types, out-of-range
/// values, slot collisions, and off-grid wavelengths all raise ParseError
/// with the JSON path in the message.
Scenario parse_scenario(const std::string& json_text);

/// Reads the file and delegates to parse_scenario. I/O failures raise
/// std::ios_base::failure.
Scenario load_scenario(const std::string& path);

/// Canonical compact-JSON form with all defaults explicit. Parsing the
/// resolved form and resolving again reproduces it byte for byte.
std::string resolved_scenario_json(const Scenario& scenario);

/// Executes the command against the scenario and assembles the report.
Report run_command(Command command, const Scenario& scenario);

}
