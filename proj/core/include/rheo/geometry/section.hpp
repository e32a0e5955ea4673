#pragma once

#include <span>
#include <utility>
#include <vector>

#include "rheo/geometry/affine.hpp"
#include "rheo/geometry/curve.hpp"

namespace rheo {

// Local frame of a section. `up` is local Y and the section plane normal;
// `forward` is local Z. Local X is up x forward.
struct SectionFrame {
  Point3 origin;
  Vec3 forward{0, 0, 1};
  Vec3 up{0, 1, 0};

  Vec3 side() const { return cross(up, forward); }
  Affine3 to_world() const { return frame_to_world(origin, side(), up, forward); }
};

struct Section {
  std::vector<Curve> curves;
  SectionFrame frame;
};

// Curves must lie within 1e-9 of the plane through frame.origin with normal
// frame.up; the frame must be orthonormal.
void validate_section(const Section& s, const std::string& path = "section");

Section transform_section(const Section& s, const Affine3& t);

// One key of a section animation. Applied in the section's local frame in
// the order scale along Z, rotate about Y, translate along Y.
struct TrackKey {
  double t = 0.0;
  double scale_z = 1.0;
  double rotate_y = 0.0;  // radians
  double translate_y = 0.0;

  bool is_identity() const { return scale_z == 1.0 && rotate_y == 0.0 && translate_y == 0.0; }
  bool operator==(const TrackKey&) const = default;
};

struct SectionTrack {
  Section base;
  std::vector<TrackKey> keys;
};

void validate_track(const SectionTrack& track, const std::string& path = "track");

// Linear interpolation of the keyed channels; exact at key times. Times
// after the last key hold its values.
TrackKey interpolate_keys(const SectionTrack& track, double t);

// World-space affine for a key, conjugated through the section frame.
Affine3 key_transform(const SectionFrame& frame, const TrackKey& key);

// Throws invalid_argument when t is outside [0, 1].
Section evaluate_track(const SectionTrack& track, double t);

struct G1Blend {
  HermiteBlend curve;
  // True when both ends coincide; the blend is then a single point.
  bool degenerate = false;
};

// One cubic Hermite per (u_a, u_b) pair joining a(u_a) to b(u_b), with end
// tangents parallel to the curve tangents there and magnitude chord/3.
std::vector<G1Blend> blend_g1(const Curve& a, const Curve& b,
                              std::span<const std::pair<double, double>> u_pairs);

}  // namespace rheo
