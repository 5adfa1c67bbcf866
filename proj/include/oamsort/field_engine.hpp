#pragma once

#include <iosfwd>
#include <map>
#include <utility>

#include "oamsort/sorter_tree.hpp"

namespace oamsort {

// Grid counterpart of the beam rotator: resamples f so that an OAM-l input
// comes back multiplied by exp(i l theta). Angles within 1e-12 of a multiple
// of pi/2 take a lossless index-permutation path; everything else is bilinear
// with out-of-grid reads as zero.
Field rotate_field(const Field& f, double theta);

// Multiply every sample by exp(i phi).
Field apply_phase(const Field& f, double phi);

// Pointwise beamsplitter on sampled fields: ((a+ib)/sqrt2, (ia+b)/sqrt2).
std::pair<Field, Field> split_combine(const Field& a, const Field& b);

// Full grid pipeline of one stage: sample_lg -> split -> (rotate, phase)
// -> combine. Returns (keep, offset) output fields. FRFT stages have no grid
// implementation and throw UnsupportedError.
std::pair<Field, Field> simulate_stage_field(ModeIndex m, const StageSpec& s,
                                             const BeamGeometry& g = {});

// Cascade the grid pipeline through a whole tree; map port label -> field.
std::map<int, Field> simulate_tree_field(ModeIndex m, const SorterTree& tree,
                                         const BeamGeometry& g = {});

// Project f onto LG basis modes over inclusive index ranges.
std::map<ModeIndex, Complex> decompose(const Field& f, int l_min, int l_max,
                                       int p_min, int p_max);

// power(f) - sum |coeff|^2; >= -1e-9 up to discrete orthonormality error.
double residual_power(const Field& f,
                      const std::map<ModeIndex, Complex>& coeffs);

// Textual grid dump: header "grid <N> extent <e>", then N*N "re,im" lines
// in row-major order.
void write_field_dump(std::ostream& os, const Field& f);

}  // namespace oamsort
