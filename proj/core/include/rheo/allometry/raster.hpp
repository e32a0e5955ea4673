#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace rheo {

// 2D scalar grid over UV in [0, 1]^2. Row-major; row 0 lies at v = 0 and
// column 0 at u = 0. Pixel (i, j) is centered at ((i + 0.5)/w, (j + 0.5)/h).
struct RasterField {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  static RasterField filled(int width, int height, double value);

  double at(int i, int j) const {
    return values[static_cast<std::size_t>(j) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(i)];
  }
  double& at(int i, int j) {
    return values[static_cast<std::size_t>(j) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(i)];
  }

  // Bilinear between pixel centers, clamped at the borders.
  double sample(double u, double v) const;

  double max_value() const;
  double min_value() const;

  bool operator==(const RasterField&) const = default;
};

void validate(const RasterField& raster, const std::string& path = "raster");

// Plain ASCII PGM ("P2"); value = pixel / maxval.
RasterField read_pgm(std::istream& in, const std::string& source = "pgm");
// "RAST w h" followed by w*h whitespace-separated reals, row-major.
RasterField read_rast(std::istream& in, const std::string& source = "rast");
// Dispatches on the leading magic ("P2" or "RAST").
RasterField load_raster(const std::filesystem::path& path);

// RAST text with shortest round-trip numbers, one row per line.
void write_rast(const RasterField& raster, std::ostream& out);
void save_rast(const RasterField& raster, const std::filesystem::path& path);

}  // namespace rheo
