#pragma once

#include <vector>

#include "rheo/field/scalar_field.hpp"

namespace rheo {

enum class Handedness { right, left };

// Two-sided rulings span s in [-r_max, r_max] across the axis; one-sided
// rulings span [0, r_max].
enum class Ruling { two_sided, one_sided };

// Surface swept by a horizontal segment that rotates about a vertical axis
// while rising: {(x0 + s cos(k y + phase), y, z0 + s sin(k y + phase))}.
struct HelicoidSpec {
  double pitch = 1.0;  // rise per full turn
  double phase = 0.0;  // radians
  Handedness handedness = Handedness::right;
  double r_max = 1.0;
  double axis_x = 0.0;
  double axis_z = 0.0;
  Ruling ruling = Ruling::two_sided;

  // k = +-2 pi / pitch, negative for left-handed sweeps.
  double wave_number() const;
};

// Square prism cell centered on the helicoid axis.
struct PrismCell {
  double side = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;
};

struct TileSpec {
  PrismCell cell;
  HelicoidSpec helicoid;
  double thickness = 0.1;
  // 2 adds a second sheet a quarter turn out of phase.
  int sheets = 1;
};

enum class MirrorRule { checkerboard_mirror_x, none };

struct LatticeSpec {
  TileSpec tile;
  int nx = 1;
  int nz = 1;
  MirrorRule mirror = MirrorRule::checkerboard_mirror_x;
};

void validate(const HelicoidSpec& spec, const std::string& path = "helicoid");
void validate(const TileSpec& spec, const std::string& path = "tile");
void validate(const LatticeSpec& spec, const std::string& path = "lattice");

// Pseudo-distance g / sqrt(1 + k^2 r^2) with g = x' sin(ky + phase) -
// z' cos(ky + phase). Past the ruling extent the magnitude is raised to the
// distance beyond the rim, keeping the sign of g.
double helicoid_value(const HelicoidSpec& spec, const Point3& p);
ScalarField helicoid_field(const HelicoidSpec& spec);

// intersect(thicken_surface(helicoid, thickness), cell prism)
ScalarField rheotomic_tile(const TileSpec& spec);

// Per-cell tile specs in (i, j) order, i fastest. Cell (i, j) is shifted by
// (i * side, j * side); under checkerboard mirroring cells with odd i + j
// carry the reflected helicoid (opposite handedness, negated phase).
std::vector<TileSpec> lattice_cells(const LatticeSpec& spec);

// Union of all cell tiles.
ScalarField tile_lattice(const LatticeSpec& spec);

Box3 lattice_bounds(const LatticeSpec& spec);

}  // namespace rheo
