#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rheo/geometry/vec3.hpp"
#include "rheo/lattice/rheotomic.hpp"

namespace rheo {

// Section curve as written in a scene. Coordinates are world space and must
// lie in the track frame's plane; circles and arcs are drawn in that plane.
struct CurveSpec {
  enum class Kind { segment, polyline, circle, arc };
  Kind kind = Kind::segment;
  std::vector<Point3> points;  // segment: 2, polyline: >= 2
  Point3 center;
  double radius = 1.0;
  double start_deg = 0.0;  // arcs, measured from the frame side axis
  double end_deg = 180.0;

  bool operator==(const CurveSpec&) const = default;
};

struct KeySpec {
  double t = 0.0;
  double scale_z = 1.0;
  double rotate_deg = 0.0;
  double translate_y = 0.0;

  bool operator==(const KeySpec&) const = default;
};

struct TrackScene {
  Point3 origin{0, 0, 0};
  Vec3 forward{0, 0, 1};
  Vec3 up{0, 1, 0};
  std::vector<CurveSpec> curves{
      {CurveSpec::Kind::segment, {{-1, 0, 0}, {1, 0, 0}}, {0, 0, 0}, 1.0, 0.0, 180.0}};
  std::vector<KeySpec> keys{{0.0, 1.0, 0.0, 0.0}, {1.0, 1.0, 0.0, 1.5}};

  bool operator==(const TrackScene&) const = default;
};

struct SpanScene {
  Vec3 direction{0, 0, 1};
  double length = 6.0;
  int steps = 13;
  int samples_across = 9;
  std::vector<std::array<double, 2>> bend;  // (u, degrees)
  double deck_thickness = 0.2;

  bool operator==(const SpanScene&) const = default;
};

struct ShellScene {
  enum class Kind { automatic, mesh };
  Kind kind = Kind::automatic;
  std::string mesh_path;  // relative paths resolve against the scene file
  double ground_y = -2.0;

  bool operator==(const ShellScene&) const = default;
};

struct LatticeScene {
  enum class Placement { fit, explicit_grid };
  double cell = 1.0;
  double pitch = 4.0;
  double phase_deg = 0.0;
  Handedness handedness = Handedness::right;
  Ruling ruling = Ruling::two_sided;
  int sheets = 1;
  double thickness = 0.1;
  Placement placement = Placement::fit;
  // Explicit placement: axis of cell (0, 0) at (origin.x, origin.z), prisms
  // from origin.y up by height.
  Point3 origin{0, 0, 0};
  std::array<int, 2> repeats{1, 1};
  double height = 1.0;
  MirrorRule mirror = MirrorRule::checkerboard_mirror_x;
  // Rotation about X, then Y, then Z, pivoting on the structural box center.
  Vec3 rotate_deg{0, 0, 0};

  bool operator==(const LatticeScene&) const = default;
};

struct RasterScene {
  enum class Kind { none, file, inverse_distance };
  Kind kind = Kind::none;
  std::string path;
  double c = 0.5;
  double r_cap = 4.0;
  std::array<int, 2> resolution{64, 64};

  bool operator==(const RasterScene&) const = default;
};

struct FabricationScene {
  double grid_spacing = 0.1;
  double layer_height = 0.1;
  double xy_resolution = 0.1;
  double overhang_deg = 45.0;
  double slope_threshold_pct = 50.0;
  double memory_budget_mb = 2048.0;

  bool operator==(const FabricationScene&) const = default;
};

struct Scene {
  std::string units = "m";
  TrackScene track;
  SpanScene span;
  ShellScene shell;
  LatticeScene lattice;
  RasterScene raster;
  double alpha = 0.0;
  FabricationScene fabrication;
  std::string output = "out";
  // Directory that relative paths resolve against; not serialized.
  std::filesystem::path base_dir;

  bool operator==(const Scene& o) const;
  std::filesystem::path resolve(const std::string& p) const;
};

// Strict JSON parse: unknown keys and wrong types are rejected, every
// constraint is checked and errors name the offending field path. Omitted
// fields take the defaults above, except fabrication.xy_resolution which
// follows fabrication.grid_spacing.
Scene parse_scene(std::string_view text, const std::filesystem::path& base_dir = {});
Scene load_scene(const std::filesystem::path& path);

// Self-contained JSON with every default written out.
std::string serialize_scene(const Scene& scene);

// Field-path-qualified validation of a constructed scene.
void validate(const Scene& scene);

}  // namespace rheo
