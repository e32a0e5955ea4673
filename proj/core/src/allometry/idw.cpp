#include "rheo/allometry/idw.hpp"

#include <cmath>

#include "rheo/error.hpp"

namespace rheo {

double idw_interpolate(std::span<const UvSample> samples, double power, double u, double v) {
  if (samples.empty()) throw_invalid_argument("samples", "at least one sample required");
  if (!(power > 0)) throw_invalid_argument("power", "must be > 0");
  double wsum = 0.0, vsum = 0.0;
  for (const UvSample& s : samples) {
    double d = std::hypot(u - s.u, v - s.v);
    if (d < 1e-12) return s.value;
    double w = power == 2.0 ? 1.0 / (d * d) : std::pow(d, -power);
    wsum += w;
    vsum += w * s.value;
  }
  return vsum / wsum;
}

RasterField rasterize_scatter(std::span<const UvSample> samples, int width, int height,
                              double power) {
  if (samples.empty()) throw_invalid_argument("samples", "at least one sample required");
  RasterField r = RasterField::filled(width, height, 0.0);
  for (int j = 0; j < height; ++j) {
    double v = (j + 0.5) / height;
    for (int i = 0; i < width; ++i) {
      r.at(i, j) = idw_interpolate(samples, power, (i + 0.5) / width, v);
    }
  }
  return r;
}

}  // namespace rheo
