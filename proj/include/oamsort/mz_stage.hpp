#pragma once

#include "oamsort/optical_elements.hpp"

namespace oamsort {

enum class StageKind { oam, frft };

// One modified Mach-Zehnder interferometer: two 50/50 splitters enclosing a
// sorting arm (beam rotator for OAM stages, FRFT for order stages) and a
// tunable phase-shifter arm. A stage at level n with residue k splits its
// residue class l = k (mod 2^n) into l = k and l = 2^n + k (mod 2^(n+1)).
struct StageSpec {
  StageKind kind = StageKind::oam;
  int n = 0;
  int k = 0;
  RotatorSpec rotator;       // sorting arm when kind == oam
  FrftSpec frft;             // sorting arm when kind == frft
  PhaseShifterSpec shifter;  // reference arm, default phase k*pi/2^n
};

// pi / 2^n, the default sorting-arm angle at level n.
double stage_angle(int n);

// Default stages: rotator angle (or FRFT order phase) pi/2^n, shifter phase
// k*pi/2^n, no errors. Throw InvalidStageError unless 0 <= k < 2^n.
StageSpec make_oam_stage(int n, int k);
StageSpec make_frft_stage(int n, int k);

struct StageOutput {
  Complex keep_amp;    // port for l = k (mod 2^(n+1))
  Complex offset_amp;  // port for l = 2^n + k (mod 2^(n+1))
};

// Splitter -> per-arm phases -> splitter on a single-beam input (the second
// input port is dark). At zero error the output powers are
// |offset|^2 = sin^2((s-k) pi/2^(n+1)) and |keep|^2 = cos^2((s-k) pi/2^(n+1))
// where s is the stage's sort index (l for OAM stages, 2p+|l| for FRFT ones).
StageOutput stage_transfer(ModeIndex m, const StageSpec& s, Complex input_amp);

enum class Branch { keep, offset };

// Residue branching rule on an integer sort index already in the stage's
// class: keep iff l = k (mod 2^(n+1)). Throws ResidueClassError when
// l != k (mod 2^n); a correctly built tree never routes such a mode here.
Branch branch_predicate(long long l, const StageSpec& s);

// The integer the stage sorts on: l for OAM stages, mode order for FRFT ones.
long long stage_sort_index(ModeIndex m, const StageSpec& s);

// Mathematical modulus, result always in [0, m).
long long floor_mod(long long a, long long m);

}  // namespace oamsort
