#include "oamsort/mz_stage.hpp"

#include <cmath>
#include <string>

namespace oamsort {

namespace {

constexpr int kMaxLevel = 30;

void check_stage(const StageSpec& s) {
  if (s.n < 0 || s.n > kMaxLevel || s.k < 0 || s.k >= (1 << s.n))
    throw InvalidStageError("invalid stage: need 0 <= k < 2^n, got n=" +
                            std::to_string(s.n) + " k=" + std::to_string(s.k));
}

StageSpec make_stage(StageKind kind, int n, int k) {
  StageSpec s;
  s.kind = kind;
  s.n = n;
  s.k = k;
  check_stage(s);
  const double alpha = stage_angle(n);
  if (kind == StageKind::oam)
    s.rotator.angle = alpha;
  else
    s.frft.order_phase = alpha;
  s.shifter.phase = k * alpha;
  return s;
}

}  // namespace

double stage_angle(int n) { return M_PI / (1 << n); }

StageSpec make_oam_stage(int n, int k) { return make_stage(StageKind::oam, n, k); }

StageSpec make_frft_stage(int n, int k) { return make_stage(StageKind::frft, n, k); }

StageOutput stage_transfer(ModeIndex m, const StageSpec& s, Complex input_amp) {
  check_stage(s);
  auto [sort_arm, ref_arm] = beamsplitter(input_amp, Complex{0.0, 0.0});
  sort_arm *= s.kind == StageKind::oam ? rotator_phase(m, s.rotator)
                                       : frft_phase(m, s.frft);
  ref_arm *= phase_shifter_phase(m, s.shifter);
  auto [offset, keep] = beamsplitter(sort_arm, ref_arm);
  return StageOutput{keep, offset};
}

Branch branch_predicate(long long l, const StageSpec& s) {
  check_stage(s);
  const long long mod = 1LL << s.n;
  if (floor_mod(l - s.k, mod) != 0)
    throw ResidueClassError("sort index " + std::to_string(l) +
                            " is not in residue class k=" +
                            std::to_string(s.k) + " (mod 2^" +
                            std::to_string(s.n) + ")");
  return floor_mod(l - s.k, 2 * mod) == 0 ? Branch::keep : Branch::offset;
}

long long stage_sort_index(ModeIndex m, const StageSpec& s) {
  return s.kind == StageKind::oam ? m.l : mode_order(m);
}

long long floor_mod(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace oamsort
