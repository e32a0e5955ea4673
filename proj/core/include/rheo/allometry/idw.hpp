#pragma once

#include <span>

#include "rheo/allometry/raster.hpp"

namespace rheo {

struct UvSample {
  double u = 0.0;
  double v = 0.0;
  double value = 0.0;
};

// Shepard interpolation with weights 1/d^power. A query within 1e-12 of a
// sample returns that sample's value.
double idw_interpolate(std::span<const UvSample> samples, double power, double u, double v);

// Evaluates idw_interpolate at every pixel center.
RasterField rasterize_scatter(std::span<const UvSample> samples, int width, int height,
                              double power = 2.0);

}  // namespace rheo
