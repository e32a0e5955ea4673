#include "rheo/span/deck.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rheo/error.hpp"
#include "rheo/field/mesh_distance.hpp"

namespace rheo {

PiecewiseLinear::PiecewiseLinear(std::vector<std::pair<double, double>> knots)
    : knots_(std::move(knots)) {
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (!std::isfinite(knots_[i].first) || !std::isfinite(knots_[i].second)) {
      throw_invalid_argument("profile[" + std::to_string(i) + "]", "must be finite");
    }
    if (i > 0 && !(knots_[i].first > knots_[i - 1].first)) {
      throw_invalid_argument("profile[" + std::to_string(i) + "]", "u must be strictly increasing");
    }
  }
}

double PiecewiseLinear::operator()(double u) const {
  if (knots_.empty()) return 0.0;
  if (u <= knots_.front().first) return knots_.front().second;
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
    const auto& [u0, a0] = knots_[i];
    const auto& [u1, a1] = knots_[i + 1];
    if (u == u1) return a1;
    if (u < u1) return a0 + (a1 - a0) * ((u - u0) / (u1 - u0));
  }
  return knots_.back().second;
}

void validate(const SpanSpec& spec, const std::string& path) {
  validate_track(spec.track, path + ".track");
  if (!is_finite(spec.direction) || std::hypot(spec.direction.x, spec.direction.z) < 1e-12) {
    throw_invalid_argument(path + ".direction", "must have a nonzero horizontal component");
  }
  if (!(spec.span_length > 0.0) || !std::isfinite(spec.span_length)) {
    throw_invalid_argument(path + ".length", "must be > 0");
  }
  if (spec.steps < 2) throw_invalid_argument(path + ".steps", "must be >= 2");
  if (!spec.bend_profile) throw_invalid_argument(path + ".bend", "profile is empty");
}

std::vector<Section> freeze_sections(const SpanSpec& spec) {
  validate(spec);
  const Vec3 dir = normalized(spec.direction);
  std::vector<Section> out;
  out.reserve(static_cast<std::size_t>(spec.steps));
  for (int i = 0; i < spec.steps; ++i) {
    const double t = static_cast<double>(i) / (spec.steps - 1);
    Section s = evaluate_track(spec.track, t);
    if (t > 0.0) s = transform_section(s, Affine3::translate(dir * (t * spec.span_length)));
    out.push_back(std::move(s));
  }
  return out;
}

Box3 DeckSurface::bounds() const {
  Box3 box;
  for (const auto& p : points) box.expand(p);
  return box;
}

Mesh DeckSurface::triangulate() const {
  Mesh mesh;
  mesh.vertices = points;
  mesh.triangles.reserve(static_cast<std::size_t>(2 * (rows - 1) * (cols - 1)));
  for (int i = 0; i + 1 < rows; ++i) {
    for (int j = 0; j + 1 < cols; ++j) {
      const auto a = static_cast<std::uint32_t>(index(i, j));
      const auto b = static_cast<std::uint32_t>(index(i + 1, j));
      const auto c = static_cast<std::uint32_t>(index(i + 1, j + 1));
      const auto d = static_cast<std::uint32_t>(index(i, j + 1));
      mesh.triangles.push_back({a, b, c});
      mesh.triangles.push_back({a, c, d});
    }
  }
  return mesh;
}

std::vector<Point3> sample_section(const Section& section, int m) {
  if (m < 2) throw_invalid_argument("m", "must be >= 2");
  if (section.curves.empty()) throw_invalid_argument("section", "has no curves");
  const auto count = static_cast<double>(section.curves.size());
  std::vector<Point3> out;
  out.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    const double v = static_cast<double>(j) / (m - 1);
    const auto c = std::min(static_cast<std::size_t>(v * count), section.curves.size() - 1);
    const double w = v * count - static_cast<double>(c);
    const Curve& curve = section.curves[c];
    const auto range = parameter_range(curve);
    const double s = w >= 1.0 ? range.hi : range.lo * (1.0 - w) + range.hi * w;
    out.push_back(curve_point(curve, s));
  }
  return out;
}

void compute_frames(DeckSurface& deck) {
  deck.frames.assign(deck.points.size(), SurfaceFrame{});
  for (int i = 0; i < deck.rows; ++i) {
    const int i0 = std::max(i - 1, 0);
    const int i1 = std::min(i + 1, deck.rows - 1);
    for (int j = 0; j < deck.cols; ++j) {
      const int j0 = std::max(j - 1, 0);
      const int j1 = std::min(j + 1, deck.cols - 1);
      SurfaceFrame& f = deck.frames[deck.index(i, j)];
      f.tangent_u = normalized(deck.at(i1, j) - deck.at(i0, j));
      f.tangent_v = normalized(deck.at(i, j1) - deck.at(i, j0));
      Vec3 n = normalized(cross(f.tangent_u, f.tangent_v));
      if (n.y < 0.0) n = -n;
      f.normal = n;
    }
  }
}

DeckSurface loft_deck(std::span<const Section> sections, int m) {
  if (sections.size() < 2) throw_invalid_argument("sections", "at least 2 sections are required");
  if (m < 2) throw_invalid_argument("m", "must be >= 2");
  const Section& first = sections.front();
  for (std::size_t i = 1; i < sections.size(); ++i) {
    const Section& s = sections[i];
    bool compatible = s.curves.size() == first.curves.size();
    for (std::size_t c = 0; compatible && c < s.curves.size(); ++c) {
      compatible = s.curves[c].index() == first.curves[c].index();
    }
    if (!compatible) {
      throw_invalid_argument("sections[" + std::to_string(i) + "]",
                             "curve count or kinds differ from the first section");
    }
  }
  DeckSurface deck;
  deck.rows = static_cast<int>(sections.size());
  deck.cols = m;
  deck.points.reserve(sections.size() * static_cast<std::size_t>(m));
  for (const auto& s : sections) {
    const auto row = sample_section(s, m);
    deck.points.insert(deck.points.end(), row.begin(), row.end());
  }
  compute_frames(deck);
  return deck;
}

DeckSurface bend_edges(const DeckSurface& deck, const BendProfile& bend_profile) {
  DeckSurface out = deck;
  const int m = deck.cols;
  auto centerline = [&](int i) {
    if (m % 2 == 1) return deck.at(i, (m - 1) / 2);
    return (deck.at(i, m / 2 - 1) + deck.at(i, m / 2)) * 0.5;
  };
  for (int i = 0; i < deck.rows; ++i) {
    const double bend = bend_profile(deck.u(i));
    if (bend == 0.0) continue;
    const Point3 center = centerline(i);
    Vec3 axis = normalized(centerline(std::min(i + 1, deck.rows - 1)) -
                           centerline(std::max(i - 1, 0)));
    if (norm(axis) == 0.0) axis = deck.frames[deck.index(i, (m - 1) / 2)].tangent_u;
    for (int j = 0; j < m; ++j) {
      const double weight = std::abs(2.0 * deck.v(j) - 1.0);
      if (weight == 0.0) continue;
      const Vec3 q = deck.at(i, j) - center;
      const double lift = cross(axis, q).y;
      const double sign = lift < 0.0 ? -1.0 : 1.0;
      const Affine3 r = Affine3::rotate_axis(center, axis, sign * bend * weight);
      out.at(i, j) = r.apply(deck.at(i, j));
    }
  }
  compute_frames(out);
  return out;
}

ScalarField deck_field(const DeckSurface& deck, double thickness) {
  if (!(thickness > 0.0)) throw_invalid_argument("deck_thickness", "must be > 0");
  const double half = 0.5 * thickness;
  const ScalarField distance = mesh_unsigned_field(deck.triangulate());
  return ScalarField([distance, half](const Point3& p) { return distance(p) - half; },
                     deck.bounds().padded(half), 1.0);
}

}  // namespace rheo
