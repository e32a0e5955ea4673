#include "rheo/span/preform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rheo/error.hpp"
#include "rheo/field/ops.hpp"

namespace rheo {

namespace {

double cross2(const std::array<double, 2>& o, const std::array<double, 2>& a,
              const std::array<double, 2>& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double polygon_area(const std::vector<std::array<double, 2>>& poly) {
  double twice = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % poly.size()];
    twice += a[0] * b[1] - b[0] * a[1];
  }
  return 0.5 * twice;
}

}  // namespace

DeckHeightMap::DeckHeightMap(const DeckSurface& deck) : mesh_(deck.triangulate()) {
  const Box3 box = deck.bounds();
  x0_ = box.lo.x;
  z0_ = box.lo.z;
  const double ex = std::max(box.extent().x, 1e-9);
  const double ez = std::max(box.extent().z, 1e-9);
  const double target = std::sqrt(static_cast<double>(mesh_.triangles.size())) + 1.0;
  cell_ = std::max(ex, ez) / target;
  nx_ = std::max(1, static_cast<int>(std::ceil(ex / cell_)));
  nz_ = std::max(1, static_cast<int>(std::ceil(ez / cell_)));
  buckets_.resize(static_cast<std::size_t>(nx_) * static_cast<std::size_t>(nz_));
  for (std::uint32_t t = 0; t < mesh_.triangles.size(); ++t) {
    Box3 tb;
    for (auto v : mesh_.triangles[t]) tb.expand(mesh_.vertices[v]);
    const int i0 = std::clamp(static_cast<int>(std::floor((tb.lo.x - x0_) / cell_)), 0, nx_ - 1);
    const int i1 = std::clamp(static_cast<int>(std::floor((tb.hi.x - x0_) / cell_)), 0, nx_ - 1);
    const int k0 = std::clamp(static_cast<int>(std::floor((tb.lo.z - z0_) / cell_)), 0, nz_ - 1);
    const int k1 = std::clamp(static_cast<int>(std::floor((tb.hi.z - z0_) / cell_)), 0, nz_ - 1);
    for (int k = k0; k <= k1; ++k) {
      for (int i = i0; i <= i1; ++i) buckets_[static_cast<std::size_t>(i + nx_ * k)].push_back(t);
    }
  }
}

std::optional<double> DeckHeightMap::height_at(double x, double z) const {
  const double fi = std::floor((x - x0_) / cell_);
  const double fk = std::floor((z - z0_) / cell_);
  // Points just past the far edge still belong to the last bucket.
  if (fi < -1.0 || fk < -1.0 || fi > nx_ || fk > nz_) return std::nullopt;
  const int i = std::clamp(static_cast<int>(fi), 0, nx_ - 1);
  const int k = std::clamp(static_cast<int>(fk), 0, nz_ - 1);
  std::optional<double> lowest;
  constexpr double tol = 1e-12;
  for (auto t : buckets_[static_cast<std::size_t>(i + nx_ * k)]) {
    const auto& tri = mesh_.triangles[t];
    const Point3& a = mesh_.vertices[tri[0]];
    const Point3& b = mesh_.vertices[tri[1]];
    const Point3& c = mesh_.vertices[tri[2]];
    const double det = (b.x - a.x) * (c.z - a.z) - (c.x - a.x) * (b.z - a.z);
    if (std::abs(det) < 1e-18) continue;
    const double wb = ((x - a.x) * (c.z - a.z) - (c.x - a.x) * (z - a.z)) / det;
    const double wc = ((b.x - a.x) * (z - a.z) - (x - a.x) * (b.z - a.z)) / det;
    const double wa = 1.0 - wb - wc;
    if (wa < -tol || wb < -tol || wc < -tol) continue;
    const double y = wa * a.y + wb * b.y + wc * c.y;
    if (!lowest || y < *lowest) lowest = y;
  }
  return lowest;
}

std::vector<std::array<double, 2>> deck_footprint(const DeckSurface& deck) {
  std::vector<std::array<double, 2>> pts;
  pts.reserve(deck.points.size());
  for (const auto& p : deck.points) pts.push_back({p.x, p.z});
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  // Andrew's monotone chain.
  std::vector<std::array<double, 2>> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross2(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double polygon_sdf(const std::vector<std::array<double, 2>>& polygon, double x, double z) {
  double best = std::numeric_limits<double>::infinity();
  bool inside = false;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const auto& a = polygon[j];
    const auto& b = polygon[i];
    const double ex = b[0] - a[0];
    const double ez = b[1] - a[1];
    const double wx = x - a[0];
    const double wz = z - a[1];
    const double len2 = ex * ex + ez * ez;
    const double t = len2 > 0.0 ? std::clamp((wx * ex + wz * ez) / len2, 0.0, 1.0) : 0.0;
    const double dx = wx - ex * t;
    const double dz = wz - ez * t;
    best = std::min(best, dx * dx + dz * dz);
    if ((a[1] > z) != (b[1] > z) && x < a[0] + (z - a[1]) * ex / ez) inside = !inside;
  }
  const double d = std::sqrt(best);
  return inside ? -d : d;
}

namespace {

struct FootprintData {
  std::vector<std::array<double, 2>> hull;
  std::shared_ptr<const DeckHeightMap> heights;
  Box3 box;
};

FootprintData footprint_data(const DeckSurface& deck, double ground_y) {
  FootprintData data;
  data.hull = deck_footprint(deck);
  if (data.hull.size() < 3 || std::abs(polygon_area(data.hull)) < 1e-12) {
    throw_invalid_argument("footprint", "deck footprint is empty");
  }
  data.heights = std::make_shared<const DeckHeightMap>(deck);
  const Box3 deck_box = deck.bounds();
  data.box = {{deck_box.lo.x, std::min(ground_y, deck_box.lo.y), deck_box.lo.z},
              {deck_box.hi.x, deck_box.hi.y, deck_box.hi.z}};
  return data;
}

// max(hull distance, ground - y, y - (deck height - drop)); locations the
// deck does not cover are outside.
ScalarField column_field(const DeckSurface& deck, double ground_y, double drop) {
  auto data = footprint_data(deck, ground_y);
  const Box3 box = data.box;
  return ScalarField(
      [hull = std::move(data.hull), heights = std::move(data.heights), ground_y,
       drop](const Point3& p) {
        const double side = polygon_sdf(hull, p.x, p.z);
        const auto top = heights->height_at(p.x, p.z);
        const double roof = top ? p.y - (*top - drop) : std::abs(p.y - ground_y);
        return std::max({side, ground_y - p.y, roof});
      },
      box);
}

}  // namespace

ScalarField auto_shell(const DeckSurface& deck, double ground_y) {
  return column_field(deck, ground_y, 0.0);
}

ScalarField footprint_prism(const DeckSurface& deck, double deck_thickness, double ground_y) {
  if (!(deck_thickness > 0.0)) throw_invalid_argument("deck_thickness", "must be > 0");
  return column_field(deck, ground_y, 0.5 * deck_thickness);
}

ScalarField structural_preform(const DeckSurface& deck, double deck_thickness,
                               const ShellSpec& shell, const ScalarField& lattice) {
  const ScalarField plate = deck_field(deck, deck_thickness);
  const ScalarField prism = footprint_prism(deck, deck_thickness, shell.ground_y);
  const ScalarField shell_field = shell.user ? *shell.user : auto_shell(deck, shell.ground_y);
  return unite(plate, intersect(lattice, intersect(shell_field, prism)));
}

}  // namespace rheo
