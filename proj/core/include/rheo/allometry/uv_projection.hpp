#pragma once

#include <array>
#include <string>

#include "rheo/geometry/vec3.hpp"

namespace rheo {

struct DeckSurface;

// Planar UV chart along the span: u along the span axis, v along the
// horizontal normal. Vertical position never affects (u, v).
struct UvProjection {
  Point3 origin;
  Vec3 u_axis{0, 0, 1};
  Vec3 v_axis{1, 0, 0};
  double u_extent = 1.0;
  double v_extent = 1.0;
};

void validate(const UvProjection& proj, const std::string& path = "projection");

// Unclamped: points outside the chart map outside [0, 1].
std::array<double, 2> project_uv(const UvProjection& proj, const Point3& p);

// Inverse of project_uv on the plane y = origin.y.
Point3 unproject_uv(const UvProjection& proj, double u, double v);

// Chart whose unit square covers the deck footprint, u along `direction`.
UvProjection span_projection(const DeckSurface& deck, const Vec3& direction);

}  // namespace rheo
