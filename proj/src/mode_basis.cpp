#include "oamsort/mode_basis.hpp"

#include <cmath>
#include <string>

namespace oamsort {

namespace {

constexpr double kBoundaryPowerLimit = 1e-6;

// Associated Laguerre L_p^a(x) by the three-term recurrence.
double assoc_laguerre(int p, int a, double x) {
  if (p == 0) return 1.0;
  double lm1 = 1.0;
  double l = 1.0 + a - x;
  for (int j = 2; j <= p; ++j) {
    double lj = ((2.0 * j - 1.0 + a - x) * l - (j - 1.0 + a) * lm1) / j;
    lm1 = l;
    l = lj;
  }
  return l;
}

// sqrt(2 p! / (pi (p+|l|)!)) / w without forming large factorials.
double lg_norm(int p, int abs_l, double w) {
  double ratio = 1.0;  // p! / (p+|l|)!
  for (int j = p + 1; j <= p + abs_l; ++j) ratio /= j;
  return std::sqrt(2.0 * ratio / M_PI) / w;
}

}  // namespace

int mode_order(ModeIndex m) { return 2 * m.p + std::abs(m.l); }

BeamGeometry make_geometry(double waist, int grid_size, double extent,
                           double min_extent_waist_ratio) {
  if (!(waist > 0.0)) throw std::invalid_argument("waist must be positive");
  if (grid_size <= 0 || grid_size % 2 != 0)
    throw std::invalid_argument("grid_size must be positive and even");
  if (!(extent > 0.0)) throw std::invalid_argument("extent must be positive");
  if (extent < min_extent_waist_ratio * waist)
    throw std::invalid_argument(
        "extent " + std::to_string(extent) + " below " +
        std::to_string(min_extent_waist_ratio) + " x waist");
  return BeamGeometry{waist, grid_size, extent};
}

double Field::power() const {
  double sum = 0.0;
  for (const Complex& s : samples) sum += std::norm(s);
  return sum * geom.cell_area();
}

Field sample_lg(ModeIndex m, const BeamGeometry& g) {
  if (m.p < 0) throw std::invalid_argument("radial index p must be >= 0");
  const int n = g.grid_size;
  const int abs_l = std::abs(m.l);
  const double w = g.waist;
  const double norm_c = lg_norm(m.p, abs_l, w);

  Field f(g);
  for (int iy = 0; iy < n; ++iy) {
    const double y = g.coord(iy);
    for (int ix = 0; ix < n; ++ix) {
      const double x = g.coord(ix);
      const double r2 = x * x + y * y;
      const double u = 2.0 * r2 / (w * w);
      double amp = norm_c * std::exp(-r2 / (w * w)) *
                   assoc_laguerre(m.p, abs_l, u);
      if (abs_l > 0) amp *= std::pow(std::sqrt(u), abs_l);
      f.at(iy, ix) = std::polar(amp, m.l * std::atan2(y, x));
    }
  }

  const double power = f.power();
  const double scale = 1.0 / std::sqrt(power);
  for (Complex& s : f.samples) s *= scale;

  // Outermost ring of cells after renormalization.
  double boundary = 0.0;
  for (int i = 0; i < n; ++i) {
    boundary += std::norm(f.at(0, i)) + std::norm(f.at(n - 1, i));
    if (i > 0 && i < n - 1)
      boundary += std::norm(f.at(i, 0)) + std::norm(f.at(i, n - 1));
  }
  boundary *= g.cell_area();
  if (boundary > kBoundaryPowerLimit)
    throw ModeTruncatedError(
        "mode truncated: l=" + std::to_string(m.l) + " p=" +
        std::to_string(m.p) + " leaves boundary power " +
        std::to_string(boundary) + " on this geometry");
  return f;
}

Complex overlap(const Field& a, const Field& b) {
  if (a.geom != b.geom)
    throw GeometryMismatchError("overlap requires identical geometries");
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < a.samples.size(); ++i)
    sum += std::conj(a.samples[i]) * b.samples[i];
  return sum * a.geom.cell_area();
}

}  // namespace oamsort
