#include "oamsort/sorter_tree.hpp"

#include <stdexcept>

namespace oamsort {

namespace {

// Amplitudes entering level n, bucket index = residue mod 2^n. Returns the
// 2^depth port amplitudes.
std::vector<Complex> propagate_levels(ModeIndex m,
                                      const std::vector<StageSpec>& stages,
                                      int depth, Complex input) {
  std::vector<Complex> amps{input};
  for (int n = 0; n < depth; ++n) {
    std::vector<Complex> next(amps.size() * 2, Complex{0.0, 0.0});
    for (int k = 0; k < static_cast<int>(amps.size()); ++k) {
      const StageSpec& s = stages[(1u << n) - 1 + k];
      StageOutput out = stage_transfer(m, s, amps[k]);
      next[k] += out.keep_amp;
      next[k + (1 << n)] += out.offset_amp;
    }
    amps = std::move(next);
  }
  return amps;
}

}  // namespace

SorterTree build_tree(int depth) {
  if (depth < 1 || depth > kMaxTreeDepth)
    throw std::invalid_argument("tree depth must be in [1, " +
                                std::to_string(kMaxTreeDepth) + "]");
  SorterTree tree;
  tree.depth = depth;
  tree.stages.reserve((1u << depth) - 1);
  for (int n = 0; n < depth; ++n)
    for (int k = 0; k < (1 << n); ++k)
      tree.stages.push_back(make_oam_stage(n, k));
  return tree;
}

int route(long long l, const SorterTree& tree) {
  return static_cast<int>(floor_mod(l, 1LL << tree.depth));
}

std::string PortLabel::str() const {
  return order < 0 ? std::to_string(oam)
                   : std::to_string(oam) + ":" + std::to_string(order);
}

double PortDistribution::power(PortLabel port) const {
  auto it = amps.find(port);
  return it == amps.end() ? 0.0 : std::norm(it->second);
}

double PortDistribution::total_power() const {
  double sum = 0.0;
  for (const auto& [port, amp] : amps) sum += std::norm(amp);
  return sum;
}

PortLabel PortDistribution::bright_port() const {
  if (amps.empty()) throw std::logic_error("empty port distribution");
  PortLabel best = amps.begin()->first;
  double best_power = std::norm(amps.begin()->second);
  for (const auto& [port, amp] : amps) {
    if (std::norm(amp) > best_power) {
      best = port;
      best_power = std::norm(amp);
    }
  }
  return best;
}

PortDistribution simulate_tree(ModeIndex m, const SorterTree& tree) {
  std::vector<Complex> amps =
      propagate_levels(m, tree.stages, tree.depth, Complex{1.0, 0.0});
  PortDistribution dist;
  for (int port = 0; port < static_cast<int>(amps.size()); ++port)
    dist.amps[PortLabel{port, -1}] = amps[port];
  return dist;
}

ExtendedSorter append_frft_sorter(SorterTree tree, int frft_depth) {
  if (frft_depth < 1 || frft_depth > kMaxTreeDepth)
    throw std::invalid_argument("frft_depth must be in [1, " +
                                std::to_string(kMaxTreeDepth) + "]");
  ExtendedSorter sorter;
  sorter.oam_tree = std::move(tree);
  sorter.frft_depth = frft_depth;
  sorter.frft_stages.reserve((1u << frft_depth) - 1);
  for (int j = 0; j < frft_depth; ++j)
    for (int k = 0; k < (1 << j); ++k)
      sorter.frft_stages.push_back(make_frft_stage(j, k));
  return sorter;
}

PortDistribution simulate_tree(ModeIndex m, const ExtendedSorter& sorter) {
  if (sorter.frft_depth == 0) return simulate_tree(m, sorter.oam_tree);
  std::vector<Complex> oam_amps = propagate_levels(
      m, sorter.oam_tree.stages, sorter.oam_tree.depth, Complex{1.0, 0.0});
  PortDistribution dist;
  for (int port = 0; port < static_cast<int>(oam_amps.size()); ++port) {
    std::vector<Complex> order_amps = propagate_levels(
        m, sorter.frft_stages, sorter.frft_depth, oam_amps[port]);
    for (int q = 0; q < static_cast<int>(order_amps.size()); ++q)
      dist.amps[PortLabel{port, q}] += order_amps[q];
  }
  return dist;
}

PortLabel route(ModeIndex m, const ExtendedSorter& sorter) {
  const int oam_port = route(m.l, sorter.oam_tree);
  if (sorter.frft_depth == 0) return PortLabel{oam_port, -1};
  const int order_port = static_cast<int>(
      floor_mod(mode_order(m), 1LL << sorter.frft_depth));
  return PortLabel{oam_port, order_port};
}

}  // namespace oamsort
