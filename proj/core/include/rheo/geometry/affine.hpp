#pragma once

#include <array>

#include "rheo/geometry/vec3.hpp"

namespace rheo {

// Row-major 3x3 matrix.
struct Mat3 {
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  double operator()(int r, int c) const { return m[static_cast<std::size_t>(r * 3 + c)]; }
  double& operator()(int r, int c) { return m[static_cast<std::size_t>(r * 3 + c)]; }

  static Mat3 identity() { return {}; }
  static Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2);

  Vec3 operator*(const Vec3& v) const;
  Mat3 operator*(const Mat3& o) const;
  Mat3 transposed() const;
  double determinant() const;
  // Throws invalid_argument when |det| < 1e-12.
  Mat3 inverse() const;
  // Largest singular value.
  double operator_norm() const;

  bool operator==(const Mat3&) const = default;
};

// p -> linear * p + translation
struct Affine3 {
  Mat3 linear;
  Vec3 translation;

  static Affine3 identity() { return {}; }
  static Affine3 translate(const Vec3& t);
  static Affine3 scale(const Vec3& s);
  static Affine3 rotate_x(double radians);
  // x' = x cos + z sin, z' = -x sin + z cos
  static Affine3 rotate_y(double radians);
  static Affine3 rotate_z(double radians);
  // Rotation by `radians` about the line through `pivot` along unit `axis`.
  static Affine3 rotate_axis(const Vec3& pivot, const Vec3& axis, double radians);

  Point3 apply(const Point3& p) const { return linear * p + translation; }
  Vec3 apply_vector(const Vec3& v) const { return linear * v; }
  bool invertible() const;
  Affine3 inverse() const;

  bool operator==(const Affine3&) const = default;
};

inline Point3 affine_apply(const Affine3& t, const Point3& p) { return t.apply(p); }

// compose(a, b) applies b first, then a.
Affine3 compose(const Affine3& a, const Affine3& b);

// Maps local coordinates into the frame spanned by (x_axis, y_axis, z_axis)
// located at origin.
Affine3 frame_to_world(const Point3& origin, const Vec3& x_axis, const Vec3& y_axis,
                       const Vec3& z_axis);

}  // namespace rheo
