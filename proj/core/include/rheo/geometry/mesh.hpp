#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "rheo/geometry/vec3.hpp"

namespace rheo {

// Indexed triangle set. Counter-clockwise triangles (seen from outside)
// have outward normals.
struct Mesh {
  std::vector<Point3> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;

  bool empty() const { return triangles.empty(); }
};

Vec3 triangle_normal(const Mesh& mesh, std::size_t t);  // unit, zero if degenerate
double triangle_area(const Mesh& mesh, std::size_t t);
std::vector<Vec3> triangle_normals(const Mesh& mesh);
double surface_area(const Mesh& mesh);
// Signed enclosed volume via the divergence theorem.
double enclosed_volume(const Mesh& mesh);
Box3 mesh_bounds(const Mesh& mesh);

// Every undirected edge is used by exactly two triangles, once in each
// direction.
bool is_watertight(const Mesh& mesh);

// Throws invalid_argument for out-of-range indices.
void validate_mesh(const Mesh& mesh, const std::string& path = "mesh");

}  // namespace rheo
