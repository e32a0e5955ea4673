#pragma once

#include "rheo/field/voxel_grid.hpp"
#include "rheo/geometry/mesh.hpp"

namespace rheo {

// Isosurface of the sampled field; samples below `iso` count as inside and
// triangles face outward. Vertices on shared cube edges are welded, so a
// zero set that stays clear of the grid boundary yields a closed mesh.
// Vertex and triangle order depend only on the grid.
Mesh marching_cubes(const VoxelGrid& grid, double iso = 0.0);

}  // namespace rheo
