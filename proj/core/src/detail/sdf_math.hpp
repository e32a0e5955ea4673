#pragma once

#include <algorithm>
#include <cmath>

#include "rheo/geometry/vec3.hpp"

namespace rheo::detail {

// Exact signed distance of an axis-aligned box. Shared by primitive_box and
// the lattice evaluator so both produce identical values.
inline double box_sdf(const Point3& center, const Vec3& half, const Point3& p) {
  const Vec3 d = p - center;
  const Vec3 q{std::abs(d.x) - half.x, std::abs(d.y) - half.y, std::abs(d.z) - half.z};
  const Vec3 outside{std::max(q.x, 0.0), std::max(q.y, 0.0), std::max(q.z, 0.0)};
  return norm(outside) + std::min(std::max({q.x, q.y, q.z}), 0.0);
}

}  // namespace rheo::detail
