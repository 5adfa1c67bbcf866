#pragma once

#include <map>
#include <string>

#include "oamsort/mz_stage.hpp"

namespace oamsort {

inline constexpr int kMaxTreeDepth = 8;

// Complete binary branching network of depth D: stage (n, k) at level
// n = 0..D-1 for each residue 0 <= k < 2^n, 2^D - 1 stages in total. The
// keep output of (n, k) feeds (n+1, k), the offset output feeds (n+1, k+2^n);
// at the last level those indices are the port labels 0..2^D-1.
struct SorterTree {
  int depth = 0;
  std::vector<StageSpec> stages;  // index (2^n - 1) + k

  StageSpec& stage(int n, int k) { return stages[(1u << n) - 1 + k]; }
  const StageSpec& stage(int n, int k) const { return stages[(1u << n) - 1 + k]; }
  int port_count() const { return 1 << depth; }
};

// Error-free tree of default stages. Throws std::invalid_argument unless
// 1 <= depth <= kMaxTreeDepth.
SorterTree build_tree(int depth);

// Port that receives all power at zero error: l mod 2^depth (floor-mod).
int route(long long l, const SorterTree& tree);

// Output port of a sorter. `order` is the mode-order residue when an FRFT
// extension is attached, -1 otherwise.
struct PortLabel {
  int oam = 0;
  int order = -1;
  auto operator<=>(const PortLabel&) const = default;
  std::string str() const;
};

// Per-port complex amplitudes (and derived powers) for one input mode.
struct PortDistribution {
  std::map<PortLabel, Complex> amps;

  double power(PortLabel port) const;
  double total_power() const;
  PortLabel bright_port() const;  // argmax power
};

// Carry the input amplitude down both children of every stage and accumulate
// per-port complex amplitudes, so crosstalk under element errors is exact.
PortDistribution simulate_tree(ModeIndex m, const SorterTree& tree);

// OAM tree with a binary tree of FRFT-MZ stages appended to every OAM port,
// sorting mode order N mod 2^frft_depth. All ports share one set of FRFT
// stage specs (level j uses order phase pi/2^j). frft_depth == 0 means no
// extension.
struct ExtendedSorter {
  SorterTree oam_tree;
  int frft_depth = 0;
  std::vector<StageSpec> frft_stages;  // index (2^j - 1) + k

  StageSpec& frft_stage(int j, int k) { return frft_stages[(1u << j) - 1 + k]; }
  const StageSpec& frft_stage(int j, int k) const {
    return frft_stages[(1u << j) - 1 + k];
  }
};

ExtendedSorter append_frft_sorter(SorterTree tree, int frft_depth);

// Final ports are (l mod 2^depth, N mod 2^frft_depth).
PortDistribution simulate_tree(ModeIndex m, const ExtendedSorter& sorter);
PortLabel route(ModeIndex m, const ExtendedSorter& sorter);

}  // namespace oamsort
