#include "rheo/field/ops.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "detail/sdf_math.hpp"
#include "rheo/error.hpp"

namespace rheo {

namespace {

std::optional<double> max_lipschitz(const ScalarField& f, const ScalarField& g) {
  if (f.lipschitz_bound() && g.lipschitz_bound()) {
    return std::max(*f.lipschitz_bound(), *g.lipschitz_bound());
  }
  return std::nullopt;
}

std::optional<Box3> union_bounds(const ScalarField& f, const ScalarField& g) {
  if (f.bounds() && g.bounds()) return box_union(*f.bounds(), *g.bounds());
  return std::nullopt;
}

std::optional<Box3> intersection_bounds(const ScalarField& f, const ScalarField& g) {
  if (f.bounds() && g.bounds()) return box_intersection(*f.bounds(), *g.bounds());
  if (f.bounds()) return f.bounds();
  return g.bounds();
}

Box3 transform_box(const Box3& b, const Affine3& t) {
  Box3 out;
  for (int c = 0; c < 8; ++c) {
    out.expand(t.apply({(c & 1) ? b.hi.x : b.lo.x, (c & 2) ? b.hi.y : b.lo.y,
                        (c & 4) ? b.hi.z : b.lo.z}));
  }
  return out;
}

}  // namespace

ScalarField constant_field(double value) {
  return ScalarField([value](const Point3&) { return value; }, std::nullopt, 0.0);
}

ScalarField half_space(const Point3& point, const Vec3& normal) {
  const Vec3 n = normalized(normal);
  if (norm(n) == 0.0) throw_invalid_argument("normal", "must be nonzero");
  return ScalarField([point, n](const Point3& p) { return dot(p - point, n); }, std::nullopt, 1.0);
}

ScalarField sphere(const Point3& center, double radius) {
  if (!(radius > 0.0)) throw_invalid_argument("radius", "must be > 0");
  return ScalarField([center, radius](const Point3& p) { return distance(p, center) - radius; },
                     Box3{center - Vec3{radius, radius, radius}, center + Vec3{radius, radius, radius}},
                     1.0);
}

ScalarField primitive_box(const Point3& center, const Vec3& half_extents) {
  if (!(half_extents.x > 0.0 && half_extents.y > 0.0 && half_extents.z > 0.0)) {
    throw_invalid_argument("half_extents", "must be positive");
  }
  return ScalarField(
      [center, half_extents](const Point3& p) { return detail::box_sdf(center, half_extents, p); },
      Box3{center - half_extents, center + half_extents}, 1.0);
}

ScalarField primitive_prism_y(double half_width, double y_min, double y_max, double center_x,
                              double center_z) {
  if (!(half_width > 0.0)) throw_invalid_argument("half_width", "must be > 0");
  if (!(y_max > y_min)) throw_invalid_argument("y_max", "must exceed y_min");
  const double half_height = 0.5 * (y_max - y_min);
  return primitive_box({center_x, y_min + half_height, center_z},
                       {half_width, half_height, half_width});
}

ScalarField unite(const ScalarField& f, const ScalarField& g) {
  return ScalarField([f, g](const Point3& p) { return std::min(f(p), g(p)); },
                     union_bounds(f, g), max_lipschitz(f, g));
}

ScalarField intersect(const ScalarField& f, const ScalarField& g) {
  return ScalarField([f, g](const Point3& p) { return std::max(f(p), g(p)); },
                     intersection_bounds(f, g), max_lipschitz(f, g));
}

ScalarField difference(const ScalarField& f, const ScalarField& g) {
  return ScalarField([f, g](const Point3& p) { return std::max(f(p), -g(p)); }, f.bounds(),
                     max_lipschitz(f, g));
}

ScalarField unite(std::span<const ScalarField> fields) {
  if (fields.empty()) throw_invalid_argument("fields", "union of nothing");
  std::vector<ScalarField> parts(fields.begin(), fields.end());
  std::optional<Box3> bounds = parts.front().bounds();
  std::optional<double> lipschitz = parts.front().lipschitz_bound();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    bounds = (bounds && parts[i].bounds()) ? std::optional(box_union(*bounds, *parts[i].bounds()))
                                           : std::nullopt;
    lipschitz = (lipschitz && parts[i].lipschitz_bound())
                    ? std::optional(std::max(*lipschitz, *parts[i].lipschitz_bound()))
                    : std::nullopt;
  }
  return ScalarField(
      [parts = std::move(parts)](const Point3& p) {
        double v = parts.front()(p);
        for (std::size_t i = 1; i < parts.size(); ++i) v = std::min(v, parts[i](p));
        return v;
      },
      bounds, lipschitz);
}

ScalarField intersect(std::span<const ScalarField> fields) {
  if (fields.empty()) throw_invalid_argument("fields", "intersection of nothing");
  ScalarField out = fields.front();
  for (std::size_t i = 1; i < fields.size(); ++i) out = intersect(out, fields[i]);
  return out;
}

ScalarField thicken_surface(const ScalarField& f, double thickness) {
  if (!(thickness > 0.0)) throw_invalid_argument("thickness", "must be > 0");
  const double half = 0.5 * thickness;
  return ScalarField([f, half](const Point3& p) { return std::abs(f(p)) - half; }, std::nullopt,
                     f.lipschitz_bound());
}

ScalarField transform_field(const ScalarField& f, const Affine3& t) {
  if (!t.invertible()) throw_invalid_argument("transform", "linear part is singular");
  const Affine3 inv = t.inverse();
  std::optional<Box3> bounds;
  if (f.bounds() && !f.bounds()->empty()) bounds = transform_box(*f.bounds(), t);
  std::optional<double> lipschitz;
  if (f.lipschitz_bound()) lipschitz = *f.lipschitz_bound() * inv.linear.operator_norm();
  return ScalarField([f, inv](const Point3& p) { return f(inv.apply(p)); }, bounds, lipschitz);
}

ScalarField offset_field(const ScalarField& f, double amount) {
  return ScalarField([f, amount](const Point3& p) { return f(p) - amount; }, std::nullopt,
                     f.lipschitz_bound());
}

Vec3 gradient(const ScalarField& f, const Point3& p, double h) {
  const double inv = 0.5 / h;
  return {(f(p + Vec3{h, 0, 0}) - f(p - Vec3{h, 0, 0})) * inv,
          (f(p + Vec3{0, h, 0}) - f(p - Vec3{0, h, 0})) * inv,
          (f(p + Vec3{0, 0, h}) - f(p - Vec3{0, 0, h})) * inv};
}

}  // namespace rheo
