#include "rheo/allometry/accumulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "rheo/error.hpp"
#include "rheo/parallel.hpp"

namespace rheo {

RasterField inverse_distance_raster(std::span<const ScalarField> contacts,
                                    const UvProjection& proj, const UvSurface& surface, int width,
                                    int height, double c, double r_cap) {
  if (contacts.empty()) throw_invalid_argument("contacts", "at least one contact required");
  if (!(c > 0) || !std::isfinite(c)) throw_invalid_argument("c", "must be > 0");
  if (!(r_cap > 0) || !std::isfinite(r_cap)) throw_invalid_argument("r_cap", "must be > 0");
  validate(proj);
  RasterField r = RasterField::filled(width, height, 0.0);
  const double eps = 1e-6 * c;
  parallel_for(static_cast<std::size_t>(height), [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      double v = (static_cast<double>(j) + 0.5) / height;
      for (int i = 0; i < width; ++i) {
        Point3 p = surface((i + 0.5) / width, v);
        double d = std::numeric_limits<double>::infinity();
        for (const ScalarField& f : contacts) d = std::min(d, std::abs(f(p)));
        double val = std::min(c / std::max(d, eps), r_cap);
        r.at(i, static_cast<int>(j)) = val / r_cap;
      }
    }
  });
  return r;
}

ScalarField accumulate(const ScalarField& body, const RasterField& raster,
                       const UvProjection& proj, double alpha, double t0) {
  if (!(alpha >= 0) || !std::isfinite(alpha)) throw_invalid_argument("alpha", "must be >= 0");
  if (!(t0 > 0) || !std::isfinite(t0)) throw_invalid_argument("t0", "must be > 0");
  if (alpha == 0.0) return body;
  validate(raster);
  validate(proj);
  auto rp = std::make_shared<const RasterField>(raster);
  const double k = alpha * t0;
  std::optional<Box3> bounds;
  if (body.bounds()) {
    // The zero set moves outward by at most k * max(raster).
    bounds = body.bounds()->padded(std::max(0.0, rp->max_value()) * k);
  }
  // Bilinear raster is Lipschitz in (u, v); convert to world units.
  std::optional<double> lip;
  if (body.lipschitz_bound()) {
    double g = 0.0;
    for (int j = 0; j < rp->height; ++j) {
      for (int i = 0; i + 1 < rp->width; ++i) {
        g = std::max(g, std::abs(rp->at(i + 1, j) - rp->at(i, j)) * rp->width / proj.u_extent);
      }
    }
    double gv = 0.0;
    for (int j = 0; j + 1 < rp->height; ++j) {
      for (int i = 0; i < rp->width; ++i) {
        gv = std::max(gv, std::abs(rp->at(i, j + 1) - rp->at(i, j)) * rp->height / proj.v_extent);
      }
    }
    lip = *body.lipschitz_bound() + k * std::hypot(g, gv);
  }
  return ScalarField(
      [body, rp, proj, k](const Point3& p) {
        auto uv = project_uv(proj, p);
        return body(p) - k * rp->sample(uv[0], uv[1]);
      },
      bounds, lip);
}

}  // namespace rheo
