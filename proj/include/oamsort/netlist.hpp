#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "oamsort/sorter_tree.hpp"

namespace oamsort {

// One explicit `stage` line. Stages are auto-generated from the `tree` line;
// explicit lines exist to inject per-stage error offsets.
struct StageOverride {
  StageKind kind = StageKind::oam;
  int n = 0;
  int k = 0;
  double rot_err = 0.0;    // rotator angle offset (order-phase offset for frft)
  double phase_err = 0.0;  // shifter phase offset
  int line = 0;            // source line, for diagnostics
};

struct Netlist {
  int depth = 0;
  std::optional<int> frft_depth;
  std::vector<StageOverride> overrides;
};

// Line-oriented grammar:
//   tree depth=<D> [frft_depth=<F>]
//   stage kind=<oam|frft> n=<n> k=<k> [rot_err=<rad>] [phase_err=<rad>]
//   # comment
// Exactly one tree line; stage (kind, n, k) unique, k < 2^n, n within the
// declared depth. Throws NetlistParseError with a 1-based line:col position.
Netlist parse_netlist(std::string_view text);

// Canonical text: the tree line, then overrides with nonzero errors sorted
// by (kind, n, k). format(parse(x)) is a fixed point of parse-then-format.
std::string format_netlist(const Netlist& nl);

// Default-filled sorter with the override errors applied.
ExtendedSorter sorter_from_netlist(const Netlist& nl);

}  // namespace oamsort
