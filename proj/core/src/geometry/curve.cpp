#include "rheo/geometry/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rheo/error.hpp"

namespace rheo {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Two-term form so both endpoints are reproduced exactly.
Point3 mix(const Point3& a, const Point3& b, double t) { return a * (1.0 - t) + b * t; }

Point3 conic_point(const Point3& c, double r, const Vec3& u, const Vec3& v, double a) {
  return c + (u * std::cos(a) + v * std::sin(a)) * r;
}

Vec3 conic_derivative(double r, const Vec3& u, const Vec3& v, double a) {
  return (u * -std::sin(a) + v * std::cos(a)) * r;
}

Point3 hermite_point(const HermiteBlend& h, double s) {
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  return h.p0 * h00 + h.t0 * h10 + h.p1 * h01 + h.t1 * h11;
}

Vec3 hermite_derivative(const HermiteBlend& h, double s) {
  const double s2 = s * s;
  return h.p0 * (6 * s2 - 6 * s) + h.t0 * (3 * s2 - 4 * s + 1) + h.p1 * (-6 * s2 + 6 * s) +
         h.t1 * (3 * s2 - 2 * s);
}

void check_axes(const Vec3& u, const Vec3& v, const std::string& path) {
  if (!is_finite(u) || !is_finite(v) || norm(cross(u, v)) < 1e-12) {
    throw_invalid_argument(path, "axis_u and axis_v must be finite and independent");
  }
}

}  // namespace

ParameterRange parameter_range(const Curve& c) {
  return std::visit(overloaded{
                        [](const Circle&) { return ParameterRange{0.0, kTwoPi}; },
                        [](const Arc& a) { return ParameterRange{a.start_angle, a.end_angle}; },
                        [](const auto&) { return ParameterRange{0.0, 1.0}; },
                    },
                    c);
}

bool is_closed(const Curve& c) { return std::holds_alternative<Circle>(c); }

std::string_view kind_name(const Curve& c) {
  return std::visit(overloaded{
                        [](const Segment&) { return std::string_view("segment"); },
                        [](const Arc&) { return std::string_view("arc"); },
                        [](const Circle&) { return std::string_view("circle"); },
                        [](const Polyline&) { return std::string_view("polyline"); },
                        [](const HermiteBlend&) { return std::string_view("hermite"); },
                    },
                    c);
}

void validate_curve(const Curve& c, const std::string& path) {
  std::visit(overloaded{
                 [&](const Segment& s) {
                   if (!is_finite(s.p0) || !is_finite(s.p1)) {
                     throw_invalid_argument(path, "segment endpoints must be finite");
                   }
                 },
                 [&](const Circle& s) {
                   if (!(s.radius > 0.0) || !std::isfinite(s.radius)) {
                     throw_invalid_argument(path + ".radius", "must be > 0");
                   }
                   if (!is_finite(s.center)) throw_invalid_argument(path, "center must be finite");
                   check_axes(s.axis_u, s.axis_v, path);
                 },
                 [&](const Arc& s) {
                   if (!(s.radius > 0.0) || !std::isfinite(s.radius)) {
                     throw_invalid_argument(path + ".radius", "must be > 0");
                   }
                   if (!is_finite(s.center)) throw_invalid_argument(path, "center must be finite");
                   check_axes(s.axis_u, s.axis_v, path);
                   const double span = s.end_angle - s.start_angle;
                   if (!(span > 0.0 && span <= kTwoPi)) {
                     throw_invalid_argument(path, "arc angular span must be in (0, 2pi]");
                   }
                 },
                 [&](const Polyline& s) {
                   if (s.points.size() < 2) {
                     throw_invalid_argument(path + ".points", "polyline needs at least 2 points");
                   }
                   for (const auto& p : s.points) {
                     if (!is_finite(p)) throw_invalid_argument(path, "points must be finite");
                   }
                 },
                 [&](const HermiteBlend& s) {
                   if (!is_finite(s.p0) || !is_finite(s.p1) || !is_finite(s.t0) ||
                       !is_finite(s.t1)) {
                     throw_invalid_argument(path, "hermite data must be finite");
                   }
                 },
             },
             c);
}

Point3 curve_point(const Curve& c, double s) {
  return std::visit(
      overloaded{
          [&](const Segment& g) { return mix(g.p0, g.p1, s); },
          [&](const Circle& g) { return conic_point(g.center, g.radius, g.axis_u, g.axis_v, s); },
          [&](const Arc& g) { return conic_point(g.center, g.radius, g.axis_u, g.axis_v, s); },
          [&](const Polyline& g) {
            const auto segments = static_cast<double>(g.points.size() - 1);
            const double x = std::clamp(s, 0.0, 1.0) * segments;
            const auto i = std::min(static_cast<std::size_t>(x), g.points.size() - 2);
            return mix(g.points[i], g.points[i + 1], x - static_cast<double>(i));
          },
          [&](const HermiteBlend& g) { return hermite_point(g, s); },
      },
      c);
}

Vec3 curve_derivative(const Curve& c, double s) {
  return std::visit(
      overloaded{
          [&](const Segment& g) { return g.p1 - g.p0; },
          [&](const Circle& g) { return conic_derivative(g.radius, g.axis_u, g.axis_v, s); },
          [&](const Arc& g) { return conic_derivative(g.radius, g.axis_u, g.axis_v, s); },
          [&](const Polyline& g) {
            const auto segments = static_cast<double>(g.points.size() - 1);
            const double x = std::clamp(s, 0.0, 1.0) * segments;
            const auto i = std::min(static_cast<std::size_t>(x), g.points.size() - 2);
            return (g.points[i + 1] - g.points[i]) * segments;
          },
          [&](const HermiteBlend& g) { return hermite_derivative(g, s); },
      },
      c);
}

std::vector<Point3> sample_curve(const Curve& c, int n) {
  if (n < 2) throw_invalid_argument("n", "sample count must be >= 2");
  const auto range = parameter_range(c);
  std::vector<Point3> out;
  out.reserve(static_cast<std::size_t>(n));
  if (is_closed(c)) {
    for (int i = 0; i < n; ++i) {
      out.push_back(curve_point(c, range.lo + (range.hi - range.lo) * i / n));
    }
    return out;
  }
  for (int i = 0; i < n; ++i) {
    const double w = static_cast<double>(i) / (n - 1);
    const double s = i == n - 1 ? range.hi : range.lo * (1.0 - w) + range.hi * w;
    out.push_back(curve_point(c, s));
  }
  return out;
}

Curve transform_curve(const Curve& c, const Affine3& t) {
  return std::visit(overloaded{
                        [&](const Segment& g) -> Curve {
                          return Segment{t.apply(g.p0), t.apply(g.p1)};
                        },
                        [&](const Circle& g) -> Curve {
                          return Circle{t.apply(g.center), g.radius, t.apply_vector(g.axis_u),
                                        t.apply_vector(g.axis_v)};
                        },
                        [&](const Arc& g) -> Curve {
                          return Arc{t.apply(g.center),        g.radius,
                                     t.apply_vector(g.axis_u), t.apply_vector(g.axis_v),
                                     g.start_angle,            g.end_angle};
                        },
                        [&](const Polyline& g) -> Curve {
                          Polyline out;
                          out.points.reserve(g.points.size());
                          for (const auto& p : g.points) out.points.push_back(t.apply(p));
                          return out;
                        },
                        [&](const HermiteBlend& g) -> Curve {
                          return HermiteBlend{t.apply(g.p0), t.apply_vector(g.t0), t.apply(g.p1),
                                              t.apply_vector(g.t1)};
                        },
                    },
                    c);
}

Circle make_circle(const Point3& center, double radius, const Vec3& axis_u, const Vec3& axis_v) {
  Circle c{center, radius, normalized(axis_u), normalized(axis_v)};
  validate_curve(c, "circle");
  if (std::abs(dot(c.axis_u, c.axis_v)) > 1e-12) {
    throw_invalid_argument("circle", "axes must be orthogonal");
  }
  return c;
}

Circle circle_xz(const Point3& center, double radius) {
  return make_circle(center, radius, {1, 0, 0}, {0, 0, 1});
}

}  // namespace rheo
