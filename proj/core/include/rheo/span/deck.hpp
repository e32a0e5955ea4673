#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "rheo/field/scalar_field.hpp"
#include "rheo/geometry/mesh.hpp"
#include "rheo/geometry/section.hpp"

namespace rheo {

// Piecewise-linear scalar profile over u in [0, 1], held constant past the
// first and last knots.
class PiecewiseLinear {
 public:
  PiecewiseLinear() = default;
  // Knots must have strictly increasing u.
  explicit PiecewiseLinear(std::vector<std::pair<double, double>> knots);

  double operator()(double u) const;
  const std::vector<std::pair<double, double>>& knots() const { return knots_; }

 private:
  std::vector<std::pair<double, double>> knots_;
};

using BendProfile = std::function<double(double)>;

struct SpanSpec {
  SectionTrack track;
  // Span axis; normalized internally, must have a horizontal component.
  Vec3 direction{0, 0, 1};
  double span_length = 1.0;
  int steps = 2;
  // Edge rotation in radians as a function of u.
  BendProfile bend_profile = [](double) { return 0.0; };
};

void validate(const SpanSpec& spec, const std::string& path = "span");

// Snapshot i is the track evaluated at t_i = i/(n-1), shifted along the span
// axis by t_i * span_length.
std::vector<Section> freeze_sections(const SpanSpec& spec);

struct SurfaceFrame {
  Vec3 tangent_u;
  Vec3 tangent_v;
  Vec3 normal;  // unit, oriented upward where possible
};

// Row-major grid: rows run along the span (u), columns across it (v).
struct DeckSurface {
  int rows = 0;
  int cols = 0;
  std::vector<Point3> points;
  std::vector<SurfaceFrame> frames;

  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) +
           static_cast<std::size_t>(j);
  }
  const Point3& at(int i, int j) const { return points[index(i, j)]; }
  Point3& at(int i, int j) { return points[index(i, j)]; }
  double u(int i) const { return static_cast<double>(i) / (rows - 1); }
  double v(int j) const { return static_cast<double>(j) / (cols - 1); }

  Box3 bounds() const;
  // Two triangles per grid quad.
  Mesh triangulate() const;
};

// m samples across a section, chained through its curves in order, both
// ends included (closed curves repeat their start point).
std::vector<Point3> sample_section(const Section& section, int m);

void compute_frames(DeckSurface& deck);

DeckSurface loft_deck(std::span<const Section> sections, int m);

// Rotates every row about its centerline tangent. The angle at column j is
// bend(u_i) * |2 v_j - 1|, signed so that positive angles lift the edges.
DeckSurface bend_edges(const DeckSurface& deck, const BendProfile& bend_profile);

// Unsigned distance to the tessellated deck minus thickness/2.
ScalarField deck_field(const DeckSurface& deck, double thickness);

}  // namespace rheo
