#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <vector>

#include "oamsort/errors.hpp"

namespace oamsort {

using Complex = std::complex<double>;

// Laguerre-Gaussian mode label: azimuthal (OAM) index l, radial index p >= 0.
struct ModeIndex {
  int l = 0;
  int p = 0;
  auto operator<=>(const ModeIndex&) const = default;
};

// Combined mode order N = 2p + |l|; invariant under l -> -l.
int mode_order(ModeIndex m);

// Square sampling window: grid_size x grid_size cells spanning extent x extent,
// centered on the beam axis. grid_size is even, so samples sit at half-cell
// offsets and the grid maps onto itself under quarter turns and axis flips.
struct BeamGeometry {
  double waist = 1.0;
  int grid_size = 256;
  double extent = 8.0;

  double cell() const { return extent / grid_size; }
  double cell_area() const { return cell() * cell(); }
  // Physical coordinate of sample i along either axis.
  double coord(int i) const { return (i + 0.5 - 0.5 * grid_size) * cell(); }

  bool operator==(const BeamGeometry&) const = default;
};

// Validated construction. Throws std::invalid_argument unless waist > 0,
// grid_size even and positive, and extent >= min_extent_waist_ratio * waist.
BeamGeometry make_geometry(double waist, int grid_size, double extent,
                           double min_extent_waist_ratio = 6.0);

// Complex scalar amplitude on a BeamGeometry grid. Row-major storage,
// samples[iy * grid_size + ix] with y along rows and x along columns.
struct Field {
  BeamGeometry geom;
  std::vector<Complex> samples;

  Field() = default;
  explicit Field(const BeamGeometry& g)
      : geom(g),
        samples(static_cast<std::size_t>(g.grid_size) * g.grid_size) {}

  Complex& at(int iy, int ix) {
    return samples[static_cast<std::size_t>(iy) * geom.grid_size + ix];
  }
  const Complex& at(int iy, int ix) const {
    return samples[static_cast<std::size_t>(iy) * geom.grid_size + ix];
  }

  // Discrete power sum |samples|^2 * cell_area.
  double power() const;
};

// Waist-plane LG amplitude with azimuthal factor exp(i l phi), renormalized
// to unit discrete power. Throws ModeTruncatedError when more than 1e-6 of
// the power falls in the outermost ring of cells.
Field sample_lg(ModeIndex m, const BeamGeometry& g);

// Discrete inner product sum conj(a)*b*cell_area. Geometries must match.
Complex overlap(const Field& a, const Field& b);

}  // namespace oamsort
