#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rheo/geometry/affine.hpp"
#include "rheo/geometry/vec3.hpp"

namespace rheo {

struct Segment {
  Point3 p0;
  Point3 p1;
};

// Points are center + radius * (cos a * axis_u + sin a * axis_v). The axes
// are orthonormal for a true circle; after a non-uniform affine map they are
// conjugate semi-axis directions of the image ellipse.
struct Circle {
  Point3 center;
  double radius = 1.0;
  Vec3 axis_u{1, 0, 0};
  Vec3 axis_v{0, 0, 1};
};

struct Arc {
  Point3 center;
  double radius = 1.0;
  Vec3 axis_u{1, 0, 0};
  Vec3 axis_v{0, 0, 1};
  double start_angle = 0.0;
  double end_angle = 0.0;
};

struct Polyline {
  std::vector<Point3> points;
};

// Cubic Hermite segment from p0 to p1 with end derivatives t0 and t1.
struct HermiteBlend {
  Point3 p0;
  Vec3 t0;
  Point3 p1;
  Vec3 t1;
};

using Curve = std::variant<Segment, Arc, Circle, Polyline, HermiteBlend>;

// Native parameter interval: angle in radians for circles ([0, 2pi)) and arcs
// ([start, end]); [0, 1] for everything else.
struct ParameterRange {
  double lo = 0.0;
  double hi = 1.0;
};

ParameterRange parameter_range(const Curve& c);
bool is_closed(const Curve& c);
std::string_view kind_name(const Curve& c);

// Throws invalid_argument naming `path` when a curve invariant is violated.
void validate_curve(const Curve& c, const std::string& path = "curve");

Point3 curve_point(const Curve& c, double s);
// Derivative with respect to the native parameter.
Vec3 curve_derivative(const Curve& c, double s);

// n >= 2 samples at equal parameter spacing. Open curves include both
// endpoints exactly; circles start at angle 0 and do not repeat it.
std::vector<Point3> sample_curve(const Curve& c, int n);

// Exact for every curve kind: affine images of circles and arcs are kept as
// (possibly elliptical) conjugate-axis forms.
Curve transform_curve(const Curve& c, const Affine3& t);

Circle make_circle(const Point3& center, double radius, const Vec3& axis_u, const Vec3& axis_v);
Circle circle_xz(const Point3& center, double radius);

}  // namespace rheo
