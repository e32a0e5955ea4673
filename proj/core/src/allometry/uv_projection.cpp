#include "rheo/allometry/uv_projection.hpp"

#include <cmath>
#include <limits>

#include "rheo/error.hpp"
#include "rheo/span/deck.hpp"

namespace rheo {

void validate(const UvProjection& proj, const std::string& path) {
  constexpr double tol = 1e-9;
  if (!is_finite(proj.origin)) throw_validation(path + ".origin", "must be finite");
  if (std::abs(norm(proj.u_axis) - 1.0) > tol) throw_validation(path + ".u_axis", "must be unit");
  if (std::abs(norm(proj.v_axis) - 1.0) > tol) throw_validation(path + ".v_axis", "must be unit");
  if (std::abs(dot(proj.u_axis, proj.v_axis)) > tol) {
    throw_validation(path, "axes must be orthogonal");
  }
  if (std::abs(proj.u_axis.y) > tol || std::abs(proj.v_axis.y) > tol) {
    throw_validation(path, "axes must be horizontal");
  }
  if (!(proj.u_extent > 0) || !std::isfinite(proj.u_extent)) {
    throw_validation(path + ".u_extent", "must be > 0");
  }
  if (!(proj.v_extent > 0) || !std::isfinite(proj.v_extent)) {
    throw_validation(path + ".v_extent", "must be > 0");
  }
}

std::array<double, 2> project_uv(const UvProjection& proj, const Point3& p) {
  // Drop the vertical component so the result is exactly Y-invariant.
  Vec3 d{p.x - proj.origin.x, 0.0, p.z - proj.origin.z};
  return {dot(d, proj.u_axis) / proj.u_extent, dot(d, proj.v_axis) / proj.v_extent};
}

Point3 unproject_uv(const UvProjection& proj, double u, double v) {
  return proj.origin + proj.u_axis * (u * proj.u_extent) + proj.v_axis * (v * proj.v_extent);
}

UvProjection span_projection(const DeckSurface& deck, const Vec3& direction) {
  Vec3 u{direction.x, 0.0, direction.z};
  if (norm(u) < 1e-12) throw_invalid_argument("direction", "needs a horizontal component");
  u = normalized(u);
  Vec3 v = cross(Vec3{0, 1, 0}, u);
  if (deck.points.empty()) throw_invalid_argument("deck", "empty deck");

  double umin = std::numeric_limits<double>::infinity(), umax = -umin;
  double vmin = umin, vmax = -umin, ymin = umin;
  for (const Point3& p : deck.points) {
    double pu = p.x * u.x + p.z * u.z;
    double pv = p.x * v.x + p.z * v.z;
    umin = std::min(umin, pu);
    umax = std::max(umax, pu);
    vmin = std::min(vmin, pv);
    vmax = std::max(vmax, pv);
    ymin = std::min(ymin, p.y);
  }
  UvProjection proj;
  proj.u_axis = u;
  proj.v_axis = v;
  proj.origin = u * umin + v * vmin;
  proj.origin.y = ymin;
  proj.u_extent = umax - umin > 1e-12 ? umax - umin : 1.0;
  proj.v_extent = vmax - vmin > 1e-12 ? vmax - vmin : 1.0;
  return proj;
}

}  // namespace rheo
