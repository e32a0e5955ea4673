#include "rheo/lattice/rheotomic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "detail/sdf_math.hpp"
#include "rheo/error.hpp"
#include "rheo/field/ops.hpp"

namespace rheo {

namespace {

// Bound on |grad| of the normalized helicoid magnitude: 1 + max x^2/(1+x^2)^1.5.
constexpr double kHelicoidLipschitz = 1.3849001794597505;

struct CellEval {
  HelicoidSpec helicoid;
  HelicoidSpec second;
  bool two_sheets = false;
  double half_thickness = 0.0;
  Point3 center;
  Vec3 half;
};

CellEval make_eval(const TileSpec& t) {
  CellEval e;
  e.helicoid = t.helicoid;
  e.two_sheets = t.sheets == 2;
  e.second = t.helicoid;
  e.second.phase += 0.5 * std::numbers::pi;
  e.half_thickness = 0.5 * t.thickness;
  const double half_height = 0.5 * (t.cell.y_max - t.cell.y_min);
  e.center = {t.helicoid.axis_x, t.cell.y_min + half_height, t.helicoid.axis_z};
  e.half = {0.5 * t.cell.side, half_height, 0.5 * t.cell.side};
  return e;
}

double sheet_value(const CellEval& e, const Point3& p) {
  double v = std::abs(helicoid_value(e.helicoid, p)) - e.half_thickness;
  if (e.two_sheets) v = std::min(v, std::abs(helicoid_value(e.second, p)) - e.half_thickness);
  return v;
}

// The one-sided clamp is steeper than the normalized sheet term, so no bound
// is reported for it.
std::optional<double> tile_lipschitz(const TileSpec& t) {
  if (t.helicoid.ruling == Ruling::two_sided) return kHelicoidLipschitz;
  return std::nullopt;
}

}  // namespace

double HelicoidSpec::wave_number() const {
  const double k = 2.0 * std::numbers::pi / pitch;
  return handedness == Handedness::right ? k : -k;
}

void validate(const HelicoidSpec& spec, const std::string& path) {
  if (!(spec.pitch > 0.0) || !std::isfinite(spec.pitch)) {
    throw_invalid_argument(path + ".pitch", "must be > 0");
  }
  if (!(spec.r_max > 0.0) || !std::isfinite(spec.r_max)) {
    throw_invalid_argument(path + ".r_max", "must be > 0");
  }
  if (!std::isfinite(spec.phase) || !std::isfinite(spec.axis_x) || !std::isfinite(spec.axis_z)) {
    throw_invalid_argument(path, "values must be finite");
  }
}

void validate(const TileSpec& spec, const std::string& path) {
  validate(spec.helicoid, path + ".helicoid");
  if (!(spec.cell.side > 0.0)) throw_invalid_argument(path + ".cell.side", "must be > 0");
  if (!(spec.cell.y_max > spec.cell.y_min)) {
    throw_invalid_argument(path + ".cell.y_max", "must exceed y_min");
  }
  if (!(spec.thickness > 0.0)) throw_invalid_argument(path + ".thickness", "must be > 0");
  if (!(spec.thickness < 0.5 * spec.cell.side)) {
    throw_invalid_argument(path + ".thickness", "must be < cell side / 2");
  }
  if (spec.sheets != 1 && spec.sheets != 2) {
    throw_invalid_argument(path + ".sheets", "must be 1 or 2");
  }
}

void validate(const LatticeSpec& spec, const std::string& path) {
  validate(spec.tile, path + ".tile");
  if (spec.nx < 1) throw_invalid_argument(path + ".nx", "must be >= 1");
  if (spec.nz < 1) throw_invalid_argument(path + ".nz", "must be >= 1");
}

double helicoid_value(const HelicoidSpec& spec, const Point3& p) {
  const double k = spec.wave_number();
  const double x = p.x - spec.axis_x;
  const double z = p.z - spec.axis_z;
  const double theta = k * p.y + spec.phase;
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const double r2 = x * x + z * z;
  const double d = (x * s - z * c) / std::sqrt(1.0 + k * k * r2);
  double beyond = std::sqrt(r2) - spec.r_max;
  if (spec.ruling == Ruling::one_sided) beyond = std::max(beyond, -(x * c + z * s));
  if (beyond <= 0.0) return d;
  const double magnitude = std::max(std::abs(d), beyond);
  return d < 0.0 ? -magnitude : magnitude;
}

ScalarField helicoid_field(const HelicoidSpec& spec) {
  validate(spec);
  return ScalarField([spec](const Point3& p) { return helicoid_value(spec, p); });
}

ScalarField rheotomic_tile(const TileSpec& spec) {
  validate(spec);
  const CellEval e = make_eval(spec);
  ScalarField sheet = thicken_surface(helicoid_field(spec.helicoid), spec.thickness)
                          .with_lipschitz(tile_lipschitz(spec));
  if (e.two_sheets) {
    sheet = unite(sheet, thicken_surface(helicoid_field(e.second), spec.thickness)
                             .with_lipschitz(tile_lipschitz(spec)));
  }
  return intersect(sheet, primitive_box(e.center, e.half));
}

std::vector<TileSpec> lattice_cells(const LatticeSpec& spec) {
  validate(spec);
  std::vector<TileSpec> cells;
  cells.reserve(static_cast<std::size_t>(spec.nx) * static_cast<std::size_t>(spec.nz));
  const double a = spec.tile.cell.side;
  for (int j = 0; j < spec.nz; ++j) {
    for (int i = 0; i < spec.nx; ++i) {
      TileSpec t = spec.tile;
      t.helicoid.axis_x += a * i;
      t.helicoid.axis_z += a * j;
      if (spec.mirror == MirrorRule::checkerboard_mirror_x && (i + j) % 2 == 1) {
        t.helicoid.handedness = t.helicoid.handedness == Handedness::right ? Handedness::left
                                                                            : Handedness::right;
        t.helicoid.phase = -t.helicoid.phase;
      }
      cells.push_back(t);
    }
  }
  return cells;
}

Box3 lattice_bounds(const LatticeSpec& spec) {
  const double half = 0.5 * spec.tile.cell.side;
  const auto& h = spec.tile.helicoid;
  return {{h.axis_x - half, spec.tile.cell.y_min, h.axis_z - half},
          {h.axis_x - half + spec.tile.cell.side * spec.nx, spec.tile.cell.y_max,
           h.axis_z - half + spec.tile.cell.side * spec.nz}};
}

ScalarField tile_lattice(const LatticeSpec& spec) {
  std::vector<CellEval> cells;
  for (const auto& t : lattice_cells(spec)) cells.push_back(make_eval(t));
  const double a = spec.tile.cell.side;
  const double x0 = spec.tile.helicoid.axis_x - 0.5 * a;
  const double z0 = spec.tile.helicoid.axis_z - 0.5 * a;
  const int nx = spec.nx;
  const int nz = spec.nz;
  auto eval = [cells = std::move(cells), a, x0, z0, nx, nz](const Point3& p) {
    // Start from the nearest cell; any other tile can only lower the minimum
    // where its prism distance (a lower bound of the tile value) does.
    const int ci = std::clamp(static_cast<int>(std::floor((p.x - x0) / a)), 0, nx - 1);
    const int cj = std::clamp(static_cast<int>(std::floor((p.z - z0) / a)), 0, nz - 1);
    const auto first = static_cast<std::size_t>(ci + nx * cj);
    const CellEval& home = cells[first];
    double best = std::max(sheet_value(home, p), detail::box_sdf(home.center, home.half, p));
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c == first) continue;
      const CellEval& e = cells[c];
      const double box = detail::box_sdf(e.center, e.half, p);
      if (box >= best) continue;
      best = std::min(best, std::max(sheet_value(e, p), box));
    }
    return best;
  };
  return ScalarField(std::move(eval), lattice_bounds(spec), tile_lipschitz(spec.tile));
}

}  // namespace rheo
