#pragma once

#include <span>

#include "rheo/field/scalar_field.hpp"
#include "rheo/geometry/affine.hpp"

namespace rheo {

ScalarField constant_field(double value);

// Signed distance to the plane through `point`; positive on the `normal` side.
ScalarField half_space(const Point3& point, const Vec3& normal);

ScalarField sphere(const Point3& center, double radius);

// Exact signed distance of an axis-aligned box.
ScalarField primitive_box(const Point3& center, const Vec3& half_extents);

// Square prism with vertical axis through (center_x, center_z).
ScalarField primitive_prism_y(double half_width, double y_min, double y_max, double center_x = 0.0,
                              double center_z = 0.0);

// Pointwise min / max / max(f, -g).
ScalarField unite(const ScalarField& f, const ScalarField& g);
ScalarField intersect(const ScalarField& f, const ScalarField& g);
ScalarField difference(const ScalarField& f, const ScalarField& g);

// N-ary forms; fold left to right, so they agree exactly with the binary ones.
ScalarField unite(std::span<const ScalarField> fields);
ScalarField intersect(std::span<const ScalarField> fields);

// |f| - thickness/2. Expects f to be a (pseudo-)distance to a surface.
ScalarField thicken_surface(const ScalarField& f, double thickness);

// p -> f(T^-1 p). Throws invalid_argument for a singular T.
ScalarField transform_field(const ScalarField& f, const Affine3& t);

// f - amount: moves the zero set outward by `amount` for a distance field.
ScalarField offset_field(const ScalarField& f, double amount);

// Central differences with step h per axis.
Vec3 gradient(const ScalarField& f, const Point3& p, double h);

}  // namespace rheo
