#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "rheo/field/scalar_field.hpp"

namespace rheo {

// Dense samples at lattice points origin + spacing * (i, j, k), x fastest.
struct VoxelGrid {
  Point3 origin;
  double spacing = 1.0;
  std::array<int, 3> dims{0, 0, 0};
  std::vector<double> values;

  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(dims[0]) *
               (static_cast<std::size_t>(j) + static_cast<std::size_t>(dims[1]) * k);
  }
  double at(int i, int j, int k) const { return values[index(i, j, k)]; }
  Point3 position(int i, int j, int k) const {
    return origin + Vec3{spacing * i, spacing * j, spacing * k};
  }
  std::size_t count() const {
    return static_cast<std::size_t>(dims[0]) * static_cast<std::size_t>(dims[1]) *
           static_cast<std::size_t>(dims[2]);
  }
};

inline constexpr std::size_t kDefaultMemoryBudget = std::size_t{2} << 30;

// floor(extent / spacing) + 1 lattice points per axis.
std::array<int, 3> grid_dims(const Box3& bbox, double spacing);

// Throws invalid_argument for bad spacing or an empty box and resource_limit
// when the grid would exceed `memory_budget` bytes. Output is identical for
// any thread count.
VoxelGrid sample_grid(const ScalarField& f, const Box3& bbox, double spacing,
                      std::size_t memory_budget = kDefaultMemoryBudget);

// Number of negative samples times spacing^3.
double negative_volume(const VoxelGrid& grid);

// "VGRID nx ny nz spacing ox oy oz\n" then little-endian float32, x fastest.
void write_vgrid(const VoxelGrid& grid, std::ostream& out);
void save_vgrid(const VoxelGrid& grid, const std::filesystem::path& path);
VoxelGrid read_vgrid(std::istream& in, const std::string& source = "vgrid");
VoxelGrid load_vgrid(const std::filesystem::path& path);

}  // namespace rheo
