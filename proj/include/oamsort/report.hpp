#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oamsort/netlist.hpp"

namespace oamsort {

struct PortEntry {
  PortLabel port;
  double power = 0.0;
  std::optional<Complex> amp;  // analytic engine only
};

struct ModeResult {
  ModeIndex mode;
  std::vector<PortEntry> ports;  // ascending port order
  PortLabel bright_port;
  double total_power = 0.0;
};

// One simulation sweep: per-input-mode port distributions plus the settings
// that produced them. Row powers must sum to 1 within power_tolerance.
struct RunReport {
  std::string engine;  // "analytic" | "field"
  int depth = 0;
  std::optional<int> frft_depth;
  std::vector<StageOverride> overrides;
  double rand_err = 0.0;
  std::uint64_t seed = 0;
  std::optional<BeamGeometry> geometry;  // field engine only
  double power_tolerance = 1e-12;
  std::vector<ModeResult> rows;
  double max_power_deviation = 0.0;
  double elapsed_ms = 0.0;  // diagnostic; not serialized (outputs stay byte-stable)
};

ModeResult make_mode_result(ModeIndex m, const PortDistribution& dist);

// Deterministic serializations: fixed key order, ports ascending, rows in
// sweep order. CSV uses 12 significant digits and '.' decimals; the matrix
// has one row per input mode and one column per port.
std::string report_to_json(const RunReport& report);
std::string report_to_csv(const RunReport& report);

}  // namespace oamsort
