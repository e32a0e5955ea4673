#include "rheo/geometry/mesh.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>

#include "rheo/error.hpp"

namespace rheo {

Vec3 triangle_normal(const Mesh& mesh, std::size_t t) {
  const auto& tri = mesh.triangles[t];
  const Point3& a = mesh.vertices[tri[0]];
  return normalized(cross(mesh.vertices[tri[1]] - a, mesh.vertices[tri[2]] - a));
}

double triangle_area(const Mesh& mesh, std::size_t t) {
  const auto& tri = mesh.triangles[t];
  const Point3& a = mesh.vertices[tri[0]];
  return 0.5 * norm(cross(mesh.vertices[tri[1]] - a, mesh.vertices[tri[2]] - a));
}

std::vector<Vec3> triangle_normals(const Mesh& mesh) {
  std::vector<Vec3> out;
  out.reserve(mesh.triangles.size());
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) out.push_back(triangle_normal(mesh, t));
  return out;
}

double surface_area(const Mesh& mesh) {
  double area = 0.0;
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) area += triangle_area(mesh, t);
  return area;
}

double enclosed_volume(const Mesh& mesh) {
  double six_v = 0.0;
  for (const auto& tri : mesh.triangles) {
    six_v += dot(mesh.vertices[tri[0]], cross(mesh.vertices[tri[1]], mesh.vertices[tri[2]]));
  }
  return six_v / 6.0;
}

Box3 mesh_bounds(const Mesh& mesh) {
  Box3 box;
  for (const auto& v : mesh.vertices) box.expand(v);
  return box;
}

bool is_watertight(const Mesh& mesh) {
  // +1 for a directed use a->b with a<b, -1 for b->a; each edge must end at
  // zero with exactly two uses.
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::pair<int, int>> edges;
  for (const auto& tri : mesh.triangles) {
    for (int e = 0; e < 3; ++e) {
      const std::uint32_t a = tri[static_cast<std::size_t>(e)];
      const std::uint32_t b = tri[static_cast<std::size_t>((e + 1) % 3)];
      if (a == b) return false;
      auto& [balance, uses] = edges[{std::min(a, b), std::max(a, b)}];
      balance += a < b ? 1 : -1;
      ++uses;
    }
  }
  return std::all_of(edges.begin(), edges.end(),
                     [](const auto& kv) { return kv.second.first == 0 && kv.second.second == 2; });
}

void validate_mesh(const Mesh& mesh, const std::string& path) {
  for (const auto& tri : mesh.triangles) {
    for (auto idx : tri) {
      if (idx >= mesh.vertices.size()) throw_invalid_argument(path, "triangle index out of range");
    }
  }
}

}  // namespace rheo
