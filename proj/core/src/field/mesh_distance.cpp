#include "rheo/field/mesh_distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <utility>

#include "rheo/error.hpp"

namespace rheo {

namespace {

enum class Feature { vertex_a, vertex_b, vertex_c, edge_ab, edge_bc, edge_ca, face };

struct ClosestOnTriangle {
  Point3 point;
  Feature feature;
};

// Ericson, Real-Time Collision Detection, 5.1.5, with the Voronoi region
// reported alongside the point.
ClosestOnTriangle closest_with_feature(const Point3& p, const Point3& a, const Point3& b,
                                       const Point3& c) {
  const Vec3 ab = b - a;
  const Vec3 ac = c - a;
  const Vec3 ap = p - a;
  const double d1 = dot(ab, ap);
  const double d2 = dot(ac, ap);
  if (d1 <= 0.0 && d2 <= 0.0) return {a, Feature::vertex_a};

  const Vec3 bp = p - b;
  const double d3 = dot(ab, bp);
  const double d4 = dot(ac, bp);
  if (d3 >= 0.0 && d4 <= d3) return {b, Feature::vertex_b};

  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
    const double v = d1 / (d1 - d3);
    return {a + ab * v, Feature::edge_ab};
  }

  const Vec3 cp = p - c;
  const double d5 = dot(ab, cp);
  const double d6 = dot(ac, cp);
  if (d6 >= 0.0 && d5 <= d6) return {c, Feature::vertex_c};

  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
    const double w = d2 / (d2 - d6);
    return {a + ac * w, Feature::edge_ca};
  }

  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return {b + (c - b) * w, Feature::edge_bc};
  }

  const double denom = 1.0 / (va + vb + vc);
  const double v = vb * denom;
  const double w = vc * denom;
  return {a + ab * v + ac * w, Feature::face};
}

double box_distance_squared(const Box3& b, const Point3& p) {
  double d2 = 0.0;
  for (int a = 0; a < 3; ++a) {
    const double v = p[a];
    const double lo = b.lo[a];
    const double hi = b.hi[a];
    if (v < lo) d2 += (lo - v) * (lo - v);
    if (v > hi) d2 += (v - hi) * (v - hi);
  }
  return d2;
}

double corner_angle(const Point3& at, const Point3& p, const Point3& q) {
  const Vec3 u = normalized(p - at);
  const Vec3 v = normalized(q - at);
  return std::acos(std::clamp(dot(u, v), -1.0, 1.0));
}

}  // namespace

Point3 closest_point_on_triangle(const Point3& p, const Point3& a, const Point3& b,
                                 const Point3& c) {
  return closest_with_feature(p, a, b, c).point;
}

MeshDistance::MeshDistance(Mesh mesh) : mesh_(std::move(mesh)) {
  validate_mesh(mesh_);
  if (mesh_.triangles.empty()) throw_invalid_argument("mesh", "no triangles");
  const auto tri_count = static_cast<std::uint32_t>(mesh_.triangles.size());
  order_.resize(tri_count);
  for (std::uint32_t i = 0; i < tri_count; ++i) order_[i] = i;
  nodes_.reserve(2 * tri_count);
  build(0, tri_count);

  face_normals_.resize(tri_count);
  vertex_normals_.assign(mesh_.vertices.size(), Vec3{});
  std::map<std::pair<std::uint32_t, std::uint32_t>, Vec3> edge_sum;
  for (std::uint32_t t = 0; t < tri_count; ++t) {
    const auto& tri = mesh_.triangles[t];
    const Vec3 n = triangle_normal(mesh_, t);
    face_normals_[t] = n;
    for (int e = 0; e < 3; ++e) {
      const auto i0 = tri[static_cast<std::size_t>(e)];
      const auto i1 = tri[static_cast<std::size_t>((e + 1) % 3)];
      const auto i2 = tri[static_cast<std::size_t>((e + 2) % 3)];
      edge_sum[{std::min(i0, i1), std::max(i0, i1)}] += n;
      vertex_normals_[i0] +=
          n * corner_angle(mesh_.vertices[i0], mesh_.vertices[i1], mesh_.vertices[i2]);
    }
  }
  edge_normals_.resize(tri_count);
  for (std::uint32_t t = 0; t < tri_count; ++t) {
    const auto& tri = mesh_.triangles[t];
    for (int e = 0; e < 3; ++e) {
      const auto i0 = tri[static_cast<std::size_t>(e)];
      const auto i1 = tri[static_cast<std::size_t>((e + 1) % 3)];
      edge_normals_[t][static_cast<std::size_t>(e)] = edge_sum[{std::min(i0, i1), std::max(i0, i1)}];
    }
  }
}

std::uint32_t MeshDistance::build(std::uint32_t begin, std::uint32_t end) {
  const auto index = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back({});
  Box3 box;
  Box3 centroids;
  for (std::uint32_t i = begin; i < end; ++i) {
    const auto& tri = mesh_.triangles[order_[i]];
    Point3 c;
    for (auto v : tri) {
      box.expand(mesh_.vertices[v]);
      c += mesh_.vertices[v];
    }
    centroids.expand(c / 3.0);
  }
  nodes_[index].box = box;
  if (end - begin <= 4) {
    nodes_[index].first = begin;
    nodes_[index].count = end - begin;
    return index;
  }
  const Vec3 ext = centroids.extent();
  const int axis = ext.x >= ext.y && ext.x >= ext.z ? 0 : (ext.y >= ext.z ? 1 : 2);
  const std::uint32_t mid = begin + (end - begin) / 2;
  auto centroid = [&](std::uint32_t t) {
    const auto& tri = mesh_.triangles[t];
    return mesh_.vertices[tri[0]][axis] + mesh_.vertices[tri[1]][axis] +
           mesh_.vertices[tri[2]][axis];
  };
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](std::uint32_t l, std::uint32_t r) {
                     const double cl = centroid(l);
                     const double cr = centroid(r);
                     return cl < cr || (cl == cr && l < r);
                   });
  const std::uint32_t left = build(begin, mid);
  const std::uint32_t right = build(mid, end);
  nodes_[index].first = left;
  nodes_[index].right = right;
  return index;
}

MeshDistance::Closest MeshDistance::closest(const Point3& p) const {
  Closest best;
  double best_d2 = std::numeric_limits<double>::infinity();
  Feature best_feature = Feature::face;
  std::uint32_t stack[64];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& node = nodes_[stack[--top]];
    if (box_distance_squared(node.box, p) >= best_d2) continue;
    if (node.count > 0) {
      for (std::uint32_t i = node.first; i < node.first + node.count; ++i) {
        const std::uint32_t t = order_[i];
        const auto& tri = mesh_.triangles[t];
        const auto hit = closest_with_feature(p, mesh_.vertices[tri[0]], mesh_.vertices[tri[1]],
                                              mesh_.vertices[tri[2]]);
        const double d2 = norm_squared(p - hit.point);
        if (d2 < best_d2 || (d2 == best_d2 && t < best.triangle)) {
          best_d2 = d2;
          best.point = hit.point;
          best.triangle = t;
          best_feature = hit.feature;
        }
      }
      continue;
    }
    // Visit the nearer child first.
    const double dl = box_distance_squared(nodes_[node.first].box, p);
    const double dr = box_distance_squared(nodes_[node.right].box, p);
    if (dl <= dr) {
      stack[top++] = node.right;
      stack[top++] = node.first;
    } else {
      stack[top++] = node.first;
      stack[top++] = node.right;
    }
  }
  best.distance = std::sqrt(best_d2);
  const auto& tri = mesh_.triangles[best.triangle];
  switch (best_feature) {
    case Feature::face: best.pseudonormal = face_normals_[best.triangle]; break;
    case Feature::edge_ab: best.pseudonormal = edge_normals_[best.triangle][0]; break;
    case Feature::edge_bc: best.pseudonormal = edge_normals_[best.triangle][1]; break;
    case Feature::edge_ca: best.pseudonormal = edge_normals_[best.triangle][2]; break;
    case Feature::vertex_a: best.pseudonormal = vertex_normals_[tri[0]]; break;
    case Feature::vertex_b: best.pseudonormal = vertex_normals_[tri[1]]; break;
    case Feature::vertex_c: best.pseudonormal = vertex_normals_[tri[2]]; break;
  }
  return best;
}

double MeshDistance::signed_distance(const Point3& p) const {
  const Closest c = closest(p);
  return dot(p - c.point, c.pseudonormal) < 0.0 ? -c.distance : c.distance;
}

Box3 MeshDistance::bounds() const { return nodes_.front().box; }

ScalarField mesh_unsigned_field(const Mesh& mesh) {
  auto tree = std::make_shared<const MeshDistance>(mesh);
  return ScalarField([tree](const Point3& p) { return tree->unsigned_distance(p); }, std::nullopt,
                     1.0);
}

ScalarField mesh_signed_field(const Mesh& mesh) {
  auto tree = std::make_shared<const MeshDistance>(mesh);
  const Box3 box = tree->bounds();
  return ScalarField([tree](const Point3& p) { return tree->signed_distance(p); }, box, 1.0);
}

}  // namespace rheo
