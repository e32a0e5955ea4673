#pragma once

#include <cstdint>
#include <vector>

#include "rheo/field/scalar_field.hpp"
#include "rheo/geometry/mesh.hpp"

namespace rheo {

// Closest-point queries against a triangle set, accelerated by an AABB tree.
// Immutable after construction; queries are thread-safe.
class MeshDistance {
 public:
  explicit MeshDistance(Mesh mesh);

  struct Closest {
    double distance = 0.0;
    Point3 point;
    std::size_t triangle = 0;
    // Vec3 pseudonormal of the closest feature (face, edge or vertex).
    Vec3 pseudonormal;
  };

  Closest closest(const Point3& p) const;
  double unsigned_distance(const Point3& p) const { return closest(p).distance; }
  // Negative inside a closed, outward-oriented mesh (angle-weighted
  // pseudonormal test).
  double signed_distance(const Point3& p) const;

  const Mesh& mesh() const { return mesh_; }
  Box3 bounds() const;

 private:
  struct Node {
    Box3 box;
    std::uint32_t first = 0;  // leaf: first triangle slot; inner: left child
    std::uint32_t count = 0;  // 0 for inner nodes
    std::uint32_t right = 0;
  };

  std::uint32_t build(std::uint32_t begin, std::uint32_t end);

  Mesh mesh_;
  std::vector<std::uint32_t> order_;
  std::vector<Node> nodes_;
  std::vector<Vec3> face_normals_;
  // Per triangle: pseudonormals of its 3 edges (ab, bc, ca) and 3 vertices.
  std::vector<std::array<Vec3, 3>> edge_normals_;
  std::vector<Vec3> vertex_normals_;
};

// Exact closest point on triangle abc to p.
Point3 closest_point_on_triangle(const Point3& p, const Point3& a, const Point3& b,
                                 const Point3& c);

// Unsigned distance to the triangles (shared, so copies of the field are cheap).
ScalarField mesh_unsigned_field(const Mesh& mesh);
// Signed distance for a closed, outward-oriented mesh.
ScalarField mesh_signed_field(const Mesh& mesh);

}  // namespace rheo
