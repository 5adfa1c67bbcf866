#include "oamsort/field_engine.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace oamsort {

namespace {

// Lossless index permutations for angles that are multiples of pi/2;
// one turn reads out(iy, ix) from f(ix, N-1-iy).
Field rotate_quarter_turns(const Field& f, int turns) {
  const int n = f.geom.grid_size;
  Field out(f.geom);
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      switch (turns) {
        case 0: out.at(iy, ix) = f.at(iy, ix); break;
        case 1: out.at(iy, ix) = f.at(ix, n - 1 - iy); break;
        case 2: out.at(iy, ix) = f.at(n - 1 - iy, n - 1 - ix); break;
        default: out.at(iy, ix) = f.at(n - 1 - ix, iy); break;
      }
    }
  }
  return out;
}

Field rotate_bilinear(const Field& f, double theta) {
  const int n = f.geom.grid_size;
  const double cell = f.geom.cell();
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Field out(f.geom);
  auto read = [&](int iy, int ix) -> Complex {
    if (ix < 0 || ix >= n || iy < 0 || iy >= n) return {0.0, 0.0};
    return f.at(iy, ix);
  };
  for (int iy = 0; iy < n; ++iy) {
    const double y = f.geom.coord(iy);
    for (int ix = 0; ix < n; ++ix) {
      const double x = f.geom.coord(ix);
      // source point at azimuth phi + theta, same radius
      const double sx = x * c - y * s;
      const double sy = x * s + y * c;
      const double fx = sx / cell + 0.5 * n - 0.5;
      const double fy = sy / cell + 0.5 * n - 0.5;
      const int x0 = static_cast<int>(std::floor(fx));
      const int y0 = static_cast<int>(std::floor(fy));
      const double ux = fx - x0;
      const double uy = fy - y0;
      out.at(iy, ix) =
          (1.0 - uy) * ((1.0 - ux) * read(y0, x0) + ux * read(y0, x0 + 1)) +
          uy * ((1.0 - ux) * read(y0 + 1, x0) + ux * read(y0 + 1, x0 + 1));
    }
  }
  return out;
}

}  // namespace

Field rotate_field(const Field& f, double theta) {
  const double quarter = M_PI / 2.0;
  const long long q = std::llround(theta / quarter);
  if (std::abs(theta - q * quarter) < 1e-12)
    return rotate_quarter_turns(f, static_cast<int>(floor_mod(q, 4)));
  return rotate_bilinear(f, theta);
}

Field apply_phase(const Field& f, double phi) {
  const Complex factor = std::polar(1.0, phi);
  Field out = f;
  for (Complex& s : out.samples) s *= factor;
  return out;
}

std::pair<Field, Field> split_combine(const Field& a, const Field& b) {
  if (a.geom != b.geom)
    throw GeometryMismatchError("split_combine requires identical geometries");
  Field c(a.geom);
  Field d(a.geom);
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    auto [out_c, out_d] = beamsplitter(a.samples[i], b.samples[i]);
    c.samples[i] = out_c;
    d.samples[i] = out_d;
  }
  return {std::move(c), std::move(d)};
}

namespace {

// One stage on an already-sampled input field.
std::pair<Field, Field> stage_on_field(const Field& input, const StageSpec& s) {
  if (s.kind != StageKind::oam)
    throw UnsupportedError("frft stages have no grid implementation");
  auto [sort_arm, ref_arm] = split_combine(input, Field(input.geom));
  Field rotated = rotate_field(sort_arm, s.rotator.effective());
  Field shifted = apply_phase(ref_arm, s.shifter.effective());
  auto [offset, keep] = split_combine(rotated, shifted);
  return {std::move(keep), std::move(offset)};
}

}  // namespace

std::pair<Field, Field> simulate_stage_field(ModeIndex m, const StageSpec& s,
                                             const BeamGeometry& g) {
  return stage_on_field(sample_lg(m, g), s);
}

std::map<int, Field> simulate_tree_field(ModeIndex m, const SorterTree& tree,
                                         const BeamGeometry& g) {
  std::vector<Field> fields{sample_lg(m, g)};
  for (int n = 0; n < tree.depth; ++n) {
    std::vector<Field> next(fields.size() * 2);
    for (int k = 0; k < static_cast<int>(fields.size()); ++k) {
      auto [keep, offset] = stage_on_field(fields[k], tree.stage(n, k));
      next[k] = std::move(keep);
      next[k + (1 << n)] = std::move(offset);
    }
    fields = std::move(next);
  }
  std::map<int, Field> ports;
  for (int port = 0; port < static_cast<int>(fields.size()); ++port)
    ports.emplace(port, std::move(fields[port]));
  return ports;
}

std::map<ModeIndex, Complex> decompose(const Field& f, int l_min, int l_max,
                                       int p_min, int p_max) {
  std::map<ModeIndex, Complex> coeffs;
  for (int l = l_min; l <= l_max; ++l)
    for (int p = p_min; p <= p_max; ++p)
      coeffs[ModeIndex{l, p}] = overlap(sample_lg(ModeIndex{l, p}, f.geom), f);
  return coeffs;
}

double residual_power(const Field& f,
                      const std::map<ModeIndex, Complex>& coeffs) {
  double captured = 0.0;
  for (const auto& [mode, c] : coeffs) captured += std::norm(c);
  return f.power() - captured;
}

void write_field_dump(std::ostream& os, const Field& f) {
  char buf[64];
  auto shortest = [&buf](double v) {
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
  };
  os << "grid " << f.geom.grid_size << " extent " << shortest(f.geom.extent)
     << "\n";
  char line[80];
  for (const Complex& s : f.samples) {
    std::snprintf(line, sizeof(line), "%.12g,%.12g\n", s.real(), s.imag());
    os << line;
  }
}

}  // namespace oamsort
