#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "rheo/field/scalar_field.hpp"
#include "rheo/field/voxel_grid.hpp"

namespace rheo {

// Closed polygon in the horizontal plane; coordinates are world (x, z).
// The closing edge is implicit. Outer boundaries are counter-clockwise, i.e.
// have positive signed_area.
using Polygon2 = std::vector<std::array<double, 2>>;

double signed_area(const Polygon2& poly);
double perimeter(const Polygon2& poly);

struct Layer {
  double elevation = 0.0;  // world y of the slicing plane
  std::vector<Polygon2> model;
  std::vector<Polygon2> support;
};

// Horizontal sampling lattice shared by every layer: node (i, j) sits at
// (x0 + i * spacing, z0 + j * spacing). The outermost ring of nodes is
// always outside, so contours are closed.
struct SliceGrid {
  double x0 = 0.0;
  double z0 = 0.0;
  double spacing = 1.0;
  int nx = 0;
  int nz = 0;

  std::size_t count() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(nz); }
};

struct LayerStack {
  double layer_height = 0.0;
  double y_min = 0.0;
  SliceGrid grid;
  std::vector<Layer> layers;
  // Per-layer node masks (1 = inside), row-major with x fastest.
  std::vector<std::vector<std::uint8_t>> model_mask;
  std::vector<std::vector<std::uint8_t>> support_mask;

  // Filled by estimate_support.
  double overhang_deg = 0.0;
  double model_volume = 0.0;
  double support_volume = 0.0;
  // support / model; 0 for an empty stack.
  double support_fraction = 0.0;
};

// Contours of f at elevations y_min + (k + 0.5) h, k < ceil((y_max - y_min)/h).
// Saddles are resolved by the cell-center average.
LayerStack slice_field(const ScalarField& f, const Box3& bbox, double layer_height,
                       double resolution, std::size_t memory_budget = kDefaultMemoryBudget);

// The lowest layer holding any model rests on the build plate. Above it, a
// model node with no model node of the layer below within horizontal
// distance h * tan(overhang) is unsupported and drops a support column
// through empty nodes down to the plate layer or the model. Volumes count nodes as
// spacing^2 * h prisms.
void estimate_support(LayerStack& stack, double overhang_deg = 45.0);

// Zero-level contours of a node grid with values < 0 inside; for tests and
// support tracing.
std::vector<Polygon2> trace_contours(const SliceGrid& grid, const std::vector<double>& values);

// Net model area of each layer.
std::vector<double> layer_areas(const LayerStack& stack);

}  // namespace rheo
