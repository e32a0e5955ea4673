#pragma once

#include <functional>
#include <span>

#include "rheo/allometry/raster.hpp"
#include "rheo/allometry/uv_projection.hpp"
#include "rheo/field/scalar_field.hpp"

namespace rheo {

// World point that raster pixel (u, v) stands for.
using UvSurface = std::function<Point3(double u, double v)>;

// r = min(c / max(d, 1e-6 c), r_cap) / r_cap with d the smallest |value| of
// the contact fields at the pixel's surface point.
RasterField inverse_distance_raster(std::span<const ScalarField> contacts,
                                    const UvProjection& proj, const UvSurface& surface, int width,
                                    int height, double c, double r_cap);

// p -> body(p) - alpha * t0 * raster(project_uv(p)). Returns body itself
// when alpha is zero.
ScalarField accumulate(const ScalarField& body, const RasterField& raster,
                       const UvProjection& proj, double alpha, double t0);

}  // namespace rheo
