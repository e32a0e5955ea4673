#include "rheo/geometry/affine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rheo/error.hpp"

namespace rheo {

Mat3 Mat3::from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
  Mat3 out;
  out.m = {c0.x, c1.x, c2.x, c0.y, c1.y, c2.y, c0.z, c1.z, c2.z};
  return out;
}

Vec3 Mat3::operator*(const Vec3& v) const {
  return {m[0] * v.x + m[1] * v.y + m[2] * v.z, m[3] * v.x + m[4] * v.y + m[5] * v.z,
          m[6] * v.x + m[7] * v.y + m[8] * v.z};
}

Mat3 Mat3::operator*(const Mat3& o) const {
  Mat3 out;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      out(r, c) = (*this)(r, 0) * o(0, c) + (*this)(r, 1) * o(1, c) + (*this)(r, 2) * o(2, c);
    }
  }
  return out;
}

Mat3 Mat3::transposed() const {
  Mat3 out;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) out(r, c) = (*this)(c, r);
  }
  return out;
}

double Mat3::determinant() const {
  return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

Mat3 Mat3::inverse() const {
  const double det = determinant();
  if (!(std::abs(det) >= 1e-12)) {
    throw_invalid_argument("transform", "linear part is singular (|det| < 1e-12)");
  }
  Mat3 out;
  out.m = {(m[4] * m[8] - m[5] * m[7]) / det, (m[2] * m[7] - m[1] * m[8]) / det,
           (m[1] * m[5] - m[2] * m[4]) / det, (m[5] * m[6] - m[3] * m[8]) / det,
           (m[0] * m[8] - m[2] * m[6]) / det, (m[2] * m[3] - m[0] * m[5]) / det,
           (m[3] * m[7] - m[4] * m[6]) / det, (m[1] * m[6] - m[0] * m[7]) / det,
           (m[0] * m[4] - m[1] * m[3]) / det};
  return out;
}

double Mat3::operator_norm() const {
  // Largest eigenvalue of the symmetric A^T A, closed form.
  const Mat3 a = transposed() * (*this);
  const double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
  double largest = 0.0;
  if (p1 == 0.0) {
    largest = std::max({a(0, 0), a(1, 1), a(2, 2)});
  } else {
    const double q = (a(0, 0) + a(1, 1) + a(2, 2)) / 3.0;
    const double p2 = (a(0, 0) - q) * (a(0, 0) - q) + (a(1, 1) - q) * (a(1, 1) - q) +
                      (a(2, 2) - q) * (a(2, 2) - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    Mat3 b = a;
    for (int i = 0; i < 3; ++i) b(i, i) -= q;
    for (double& v : b.m) v /= p;
    const double r = std::clamp(b.determinant() / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    largest = q + 2.0 * p * std::cos(phi);
  }
  // Tiny relative pad keeps the value an upper bound under rounding.
  return std::sqrt(std::max(0.0, largest)) * (1.0 + 1e-12);
}

Affine3 Affine3::translate(const Vec3& t) {
  Affine3 out;
  out.translation = t;
  return out;
}

Affine3 Affine3::scale(const Vec3& s) {
  Affine3 out;
  out.linear.m = {s.x, 0, 0, 0, s.y, 0, 0, 0, s.z};
  return out;
}

Affine3 Affine3::rotate_x(double radians) {
  const double c = std::cos(radians);
  const double s = std::sin(radians);
  Affine3 out;
  out.linear.m = {1, 0, 0, 0, c, -s, 0, s, c};
  return out;
}

Affine3 Affine3::rotate_y(double radians) {
  const double c = std::cos(radians);
  const double s = std::sin(radians);
  Affine3 out;
  out.linear.m = {c, 0, s, 0, 1, 0, -s, 0, c};
  return out;
}

Affine3 Affine3::rotate_z(double radians) {
  const double c = std::cos(radians);
  const double s = std::sin(radians);
  Affine3 out;
  out.linear.m = {c, -s, 0, s, c, 0, 0, 0, 1};
  return out;
}

Affine3 Affine3::rotate_axis(const Vec3& pivot, const Vec3& axis, double radians) {
  const Vec3 k = normalized(axis);
  const double c = std::cos(radians);
  const double s = std::sin(radians);
  const double t = 1.0 - c;
  Affine3 r;
  r.linear.m = {t * k.x * k.x + c,       t * k.x * k.y - s * k.z, t * k.x * k.z + s * k.y,
                t * k.x * k.y + s * k.z, t * k.y * k.y + c,       t * k.y * k.z - s * k.x,
                t * k.x * k.z - s * k.y, t * k.y * k.z + s * k.x, t * k.z * k.z + c};
  r.translation = pivot - r.linear * pivot;
  return r;
}

bool Affine3::invertible() const { return std::abs(linear.determinant()) >= 1e-12; }

Affine3 Affine3::inverse() const {
  Affine3 out;
  out.linear = linear.inverse();
  out.translation = -(out.linear * translation);
  return out;
}

Affine3 compose(const Affine3& a, const Affine3& b) {
  Affine3 out;
  out.linear = a.linear * b.linear;
  out.translation = a.linear * b.translation + a.translation;
  return out;
}

Affine3 frame_to_world(const Point3& origin, const Vec3& x_axis, const Vec3& y_axis,
                       const Vec3& z_axis) {
  Affine3 out;
  out.linear = Mat3::from_columns(x_axis, y_axis, z_axis);
  out.translation = origin;
  return out;
}

}  // namespace rheo
