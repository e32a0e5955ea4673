#include "rheo/fab/marching_cubes.hpp"

#include <algorithm>
#include <unordered_map>

#include "mc_tables.hpp"
#include "rheo/error.hpp"

namespace rheo {

namespace {

constexpr int kCorner[8][3] = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                               {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};

// Cube edge -> (offset of its low corner, axis).
constexpr int kEdge[12][4] = {{0, 0, 0, 0}, {1, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 0, 1},
                              {0, 0, 1, 0}, {1, 0, 1, 1}, {0, 1, 1, 0}, {0, 0, 1, 1},
                              {0, 0, 0, 2}, {1, 0, 0, 2}, {1, 1, 0, 2}, {0, 1, 0, 2}};

constexpr double kEdgeMargin = 1e-4;

}  // namespace

Mesh marching_cubes(const VoxelGrid& grid, double iso) {
  const auto [nx, ny, nz] = grid.dims;
  if (nx < 2 || ny < 2 || nz < 2) throw_invalid_argument("grid", "needs >= 2 samples per axis");
  if (grid.values.size() != grid.count()) throw_invalid_argument("grid", "value count mismatch");

  Mesh mesh;
  std::unordered_map<std::uint64_t, std::uint32_t> welded;

  auto vertex_on = [&](int i, int j, int k, int axis) -> std::uint32_t {
    int hi[3] = {i, j, k};
    hi[axis] += 1;
    double va = grid.at(i, j, k);
    double vb = grid.at(hi[0], hi[1], hi[2]);
    // Keeping crossings off the corners keeps every vertex on its own edge,
    // so exact zeros at samples cannot pinch the surface.
    double t = std::clamp((iso - va) / (vb - va), kEdgeMargin, 1.0 - kEdgeMargin);
    const std::uint64_t key =
        3 * static_cast<std::uint64_t>(grid.index(i, j, k)) + static_cast<std::uint64_t>(axis);
    Point3 p = grid.position(i, j, k);
    p[axis] += grid.spacing * t;
    auto [it, inserted] = welded.try_emplace(key, static_cast<std::uint32_t>(mesh.vertices.size()));
    if (inserted) mesh.vertices.push_back(p);
    return it->second;
  };

  for (int k = 0; k + 1 < nz; ++k) {
    for (int j = 0; j + 1 < ny; ++j) {
      for (int i = 0; i + 1 < nx; ++i) {
        int cube = 0;
        for (int c = 0; c < 8; ++c) {
          if (grid.at(i + kCorner[c][0], j + kCorner[c][1], k + kCorner[c][2]) < iso) {
            cube |= 1 << c;
          }
        }
        if (cube == 0 || cube == 255) continue;
        const auto& tri = detail::kMcTriangles[static_cast<std::size_t>(cube)];
        for (int n = 0; n < 16 && tri[static_cast<std::size_t>(n)] >= 0; n += 3) {
          std::uint32_t idx[3];
          for (int m = 0; m < 3; ++m) {
            const int* e = kEdge[tri[static_cast<std::size_t>(n + m)]];
            idx[m] = vertex_on(i + e[0], j + e[1], k + e[2], e[3]);
          }
          if (idx[0] == idx[1] || idx[1] == idx[2] || idx[0] == idx[2]) continue;
          // The table winds triangles inward for this inside convention.
          mesh.triangles.push_back({idx[0], idx[2], idx[1]});
          if (triangle_area(mesh, mesh.triangles.size() - 1) < 1e-14) mesh.triangles.pop_back();
        }
      }
    }
  }
  return mesh;
}

}  // namespace rheo
