#pragma once

#include <optional>
#include <vector>

#include "rheo/allometry/raster.hpp"
#include "rheo/allometry/uv_projection.hpp"
#include "rheo/field/scalar_field.hpp"
#include "rheo/geometry/affine.hpp"
#include "rheo/lattice/rheotomic.hpp"
#include "rheo/scene/scene.hpp"
#include "rheo/span/deck.hpp"

namespace rheo {

SectionTrack make_track(const TrackScene& track);
SpanSpec make_span(const Scene& scene);

// Lattice in its own frame plus the rigid map that places it in the world.
struct LatticePlacement {
  LatticeSpec spec;
  Affine3 post = Affine3::identity();
};

// With fit placement the grid covers `target` after the post-rotation.
LatticePlacement place_lattice(const LatticeScene& lattice, const Box3& target);
ScalarField lattice_field(const LatticePlacement& placement);

// Everything derived from a scene before accumulation.
struct SceneGeometry {
  std::vector<Section> sections;
  DeckSurface deck;
  // Deck footprint from the ground up to the highest deck point.
  Box3 structure_box;
  LatticePlacement lattice;
  ScalarField preform{[](const Point3&) { return 1.0; }};
  UvProjection projection;
  // Planes through the first and last snapshot, normal to the span axis.
  std::vector<ScalarField> contacts;
};

SceneGeometry build_geometry(const Scene& scene);

// The scene's raster, or nullopt when it has none.
std::optional<RasterField> build_raster(const Scene& scene, const SceneGeometry& geometry);

// Preform with the raster-driven accumulation applied.
ScalarField build_body(const Scene& scene, const SceneGeometry& geometry,
                       const std::optional<RasterField>& raster);

// Sampling box for a field: its bounds padded by two grid cells.
Box3 sampling_box(const ScalarField& field, double spacing);

}  // namespace rheo
