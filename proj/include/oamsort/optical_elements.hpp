#pragma once

#include <numbers>
#include <utility>

#include "oamsort/mode_basis.hpp"

namespace oamsort {

// Transverse beam rotator (e.g. a Dove-prism pair): imprints phase +l*angle
// on an OAM-l mode. `error` is an additive angle offset.
struct RotatorSpec {
  double angle = 0.0;
  double error = 0.0;
  double effective() const { return angle + error; }
};

// Mode-independent phase shifter (e.g. a tilted thin glass film).
struct PhaseShifterSpec {
  double phase = 0.0;
  double error = 0.0;
  double effective() const { return phase + error; }
};

// Fractional Fourier transformer. A mode of order N acquires phase
// N * order_phase; the constant Gouy offset is absorbed by the stage's
// tunable shifter.
struct FrftSpec {
  double order_phase = 0.0;
  double error = 0.0;
  double effective() const { return order_phase + error; }
};

inline Complex rotator_phase(ModeIndex m, const RotatorSpec& r) {
  return std::polar(1.0, m.l * r.effective());
}

inline Complex phase_shifter_phase(ModeIndex, const PhaseShifterSpec& s) {
  return std::polar(1.0, s.effective());
}

inline Complex frft_phase(ModeIndex m, const FrftSpec& f) {
  return std::polar(1.0, mode_order(m) * f.effective());
}

// Symmetric lossless 50/50 splitter, rows (1, i)/sqrt2 and (i, 1)/sqrt2.
inline std::pair<Complex, Complex> beamsplitter(Complex in_a, Complex in_b) {
  constexpr double s = 1.0 / std::numbers::sqrt2;
  const Complex i{0.0, 1.0};
  return {(in_a + i * in_b) * s, (i * in_a + in_b) * s};
}

}  // namespace oamsort
