#include "rheo/field/voxel_grid.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "rheo/error.hpp"
#include "rheo/format.hpp"
#include "rheo/parallel.hpp"

namespace rheo {

std::array<int, 3> grid_dims(const Box3& bbox, double spacing) {
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw_invalid_argument("spacing", "must be > 0");
  if (bbox.empty() || !is_finite(bbox.lo) || !is_finite(bbox.hi)) {
    throw_invalid_argument("bbox", "must be finite and nonempty");
  }
  std::array<int, 3> dims{};
  const Vec3 ext = bbox.extent();
  for (int a = 0; a < 3; ++a) {
    // The small slack keeps extents that are exact multiples of the spacing
    // from losing their last lattice plane to rounding.
    const double cells = std::floor(ext[a] / spacing + 1e-9);
    if (cells >= static_cast<double>(std::numeric_limits<int>::max() - 1)) {
      throw_resource_limit("grid", "grid dimension overflows");
    }
    dims[static_cast<std::size_t>(a)] = static_cast<int>(cells) + 1;
  }
  return dims;
}

VoxelGrid sample_grid(const ScalarField& f, const Box3& bbox, double spacing,
                      std::size_t memory_budget) {
  VoxelGrid grid;
  grid.dims = grid_dims(bbox, spacing);
  grid.origin = bbox.lo;
  grid.spacing = spacing;
  const double bytes = static_cast<double>(grid.dims[0]) * grid.dims[1] * grid.dims[2] *
                       static_cast<double>(sizeof(double));
  if (bytes > static_cast<double>(memory_budget)) {
    throw_resource_limit("grid", "sample grid of " + std::to_string(grid.dims[0]) + "x" +
                                     std::to_string(grid.dims[1]) + "x" +
                                     std::to_string(grid.dims[2]) + " exceeds memory budget of " +
                                     std::to_string(memory_budget) + " bytes");
  }
  grid.values.resize(grid.count());
  const std::size_t rows =
      static_cast<std::size_t>(grid.dims[1]) * static_cast<std::size_t>(grid.dims[2]);
  parallel_for(rows,
               [&](std::size_t begin, std::size_t end) {
                 for (std::size_t row = begin; row < end; ++row) {
                   const int j = static_cast<int>(row % static_cast<std::size_t>(grid.dims[1]));
                   const int k = static_cast<int>(row / static_cast<std::size_t>(grid.dims[1]));
                   for (int i = 0; i < grid.dims[0]; ++i) {
                     grid.values[grid.index(i, j, k)] = f(grid.position(i, j, k));
                   }
                 }
               });
  return grid;
}

double negative_volume(const VoxelGrid& grid) {
  std::size_t inside = 0;
  for (double v : grid.values) inside += v < 0.0 ? 1 : 0;
  return static_cast<double>(inside) * grid.spacing * grid.spacing * grid.spacing;
}

void write_vgrid(const VoxelGrid& grid, std::ostream& out) {
  std::string header = "VGRID ";
  header += std::to_string(grid.dims[0]) + ' ' + std::to_string(grid.dims[1]) + ' ' +
            std::to_string(grid.dims[2]) + ' ';
  append_real(header, grid.spacing);
  for (int a = 0; a < 3; ++a) {
    header += ' ';
    append_real(header, grid.origin[a]);
  }
  header += '\n';
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  std::string payload(grid.values.size() * 4, '\0');
  for (std::size_t i = 0; i < grid.values.size(); ++i) {
    const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(grid.values[i]));
    for (int b = 0; b < 4; ++b) payload[i * 4 + b] = static_cast<char>((bits >> (8 * b)) & 0xFFu);
  }
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
}

void save_vgrid(const VoxelGrid& grid, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_io(path.string(), "cannot open for writing");
  write_vgrid(grid, out);
  if (!out) throw_io(path.string(), "write failed");
}

VoxelGrid read_vgrid(std::istream& in, const std::string& source) {
  std::string header;
  if (!std::getline(in, header)) throw_input_format(source, "missing VGRID header");
  std::istringstream tokens(header);
  std::string magic;
  std::string fields[7];
  tokens >> magic;
  for (auto& f : fields) tokens >> f;
  std::string extra;
  if (magic != "VGRID" || fields[6].empty() || (tokens >> extra)) {
    throw_input_format(source, "malformed VGRID header");
  }
  VoxelGrid grid;
  double numbers[7];
  for (int i = 0; i < 7; ++i) {
    if (!parse_real(fields[i], numbers[i])) throw_input_format(source, "bad header number");
  }
  for (int a = 0; a < 3; ++a) {
    if (numbers[a] < 1 || numbers[a] != std::floor(numbers[a]) || numbers[a] > 1e9) {
      throw_input_format(source, "bad grid dimension");
    }
    grid.dims[static_cast<std::size_t>(a)] = static_cast<int>(numbers[a]);
  }
  grid.spacing = numbers[3];
  if (!(grid.spacing > 0.0)) throw_input_format(source, "spacing must be > 0");
  grid.origin = {numbers[4], numbers[5], numbers[6]};
  grid.values.resize(grid.count());
  std::string payload(grid.values.size() * 4, '\0');
  in.read(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (static_cast<std::size_t>(in.gcount()) != payload.size()) {
    throw_input_format(source, "truncated VGRID payload");
  }
  for (std::size_t i = 0; i < grid.values.size(); ++i) {
    std::uint32_t bits = 0;
    for (int b = 0; b < 4; ++b) {
      bits |= static_cast<std::uint32_t>(static_cast<unsigned char>(payload[i * 4 + b])) << (8 * b);
    }
    grid.values[i] = std::bit_cast<float>(bits);
  }
  return grid;
}

VoxelGrid load_vgrid(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_io(path.string(), "cannot open for reading");
  return read_vgrid(in, path.string());
}

}  // namespace rheo
