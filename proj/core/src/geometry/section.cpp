#include "rheo/geometry/section.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rheo/error.hpp"

namespace rheo {

namespace {

constexpr double kPlaneTolerance = 1e-9;

void check_plane(const Point3& p, const SectionFrame& f, const std::string& path) {
  const double off = std::abs(dot(p - f.origin, f.up));
  if (off > kPlaneTolerance * std::max(1.0, norm(p - f.origin))) {
    throw_invalid_argument(path, "curve leaves the section plane");
  }
}

}  // namespace

void validate_section(const Section& s, const std::string& path) {
  const auto& f = s.frame;
  if (std::abs(norm(f.up) - 1.0) > 1e-9 || std::abs(norm(f.forward) - 1.0) > 1e-9 ||
      std::abs(dot(f.up, f.forward)) > 1e-9) {
    throw_invalid_argument(path + ".frame", "forward and up must be orthonormal");
  }
  if (s.curves.empty()) throw_invalid_argument(path + ".curves", "section has no curves");
  for (std::size_t i = 0; i < s.curves.size(); ++i) {
    const std::string cpath = path + ".curves[" + std::to_string(i) + "]";
    validate_curve(s.curves[i], cpath);
    for (const auto& p : sample_curve(s.curves[i], 17)) check_plane(p, f, cpath);
  }
}

Section transform_section(const Section& s, const Affine3& t) {
  Section out;
  out.curves.reserve(s.curves.size());
  for (const auto& c : s.curves) out.curves.push_back(transform_curve(c, t));
  out.frame.origin = t.apply(s.frame.origin);
  out.frame.forward = normalized(t.apply_vector(s.frame.forward));
  out.frame.up = normalized(t.apply_vector(s.frame.up));
  return out;
}

void validate_track(const SectionTrack& track, const std::string& path) {
  validate_section(track.base, path + ".section");
  const auto& keys = track.keys;
  if (keys.empty()) throw_invalid_argument(path + ".keys", "at least one key is required");
  if (keys.front().t != 0.0 || !keys.front().is_identity()) {
    throw_invalid_argument(path + ".keys[0]", "first key must be at t=0 with identity values");
  }
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const std::string kpath = path + ".keys[" + std::to_string(i) + "]";
    const auto& k = keys[i];
    if (!(k.t >= 0.0 && k.t <= 1.0)) throw_invalid_argument(kpath + ".t", "must be in [0, 1]");
    if (i > 0 && !(k.t > keys[i - 1].t)) {
      throw_invalid_argument(kpath + ".t", "keys must be strictly increasing in t");
    }
    if (!(k.scale_z > 0.0) || !std::isfinite(k.scale_z)) {
      throw_invalid_argument(kpath + ".scale_z", "must be > 0");
    }
    if (!std::isfinite(k.rotate_y) || !std::isfinite(k.translate_y)) {
      throw_invalid_argument(kpath, "values must be finite");
    }
  }
}

TrackKey interpolate_keys(const SectionTrack& track, double t) {
  const auto& keys = track.keys;
  if (t <= keys.front().t) return keys.front();
  for (std::size_t i = 0; i + 1 < keys.size(); ++i) {
    const auto& a = keys[i];
    const auto& b = keys[i + 1];
    if (t == b.t) return b;
    if (t < b.t) {
      const double w = (t - a.t) / (b.t - a.t);
      TrackKey out;
      out.t = t;
      out.scale_z = a.scale_z + (b.scale_z - a.scale_z) * w;
      out.rotate_y = a.rotate_y + (b.rotate_y - a.rotate_y) * w;
      out.translate_y = a.translate_y + (b.translate_y - a.translate_y) * w;
      return out;
    }
  }
  TrackKey out = keys.back();
  out.t = t;
  return out;
}

Affine3 key_transform(const SectionFrame& frame, const TrackKey& key) {
  const Affine3 local =
      compose(Affine3::translate({0, key.translate_y, 0}),
              compose(Affine3::rotate_y(key.rotate_y), Affine3::scale({1, 1, key.scale_z})));
  const Affine3 to_world = frame.to_world();
  return compose(to_world, compose(local, to_world.inverse()));
}

Section evaluate_track(const SectionTrack& track, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw_invalid_argument("t", "must be in [0, 1]");
  const TrackKey key = interpolate_keys(track, t);
  if (key.is_identity()) return track.base;
  return transform_section(track.base, key_transform(track.base.frame, key));
}

std::vector<G1Blend> blend_g1(const Curve& a, const Curve& b,
                              std::span<const std::pair<double, double>> u_pairs) {
  if (u_pairs.empty()) throw_invalid_argument("u_pairs", "at least one pair is required");
  std::vector<G1Blend> out;
  out.reserve(u_pairs.size());
  for (const auto& [ua, ub] : u_pairs) {
    G1Blend blend;
    const Point3 p0 = curve_point(a, ua);
    const Point3 p1 = curve_point(b, ub);
    const double chord = distance(p0, p1);
    blend.curve.p0 = p0;
    blend.curve.p1 = p1;
    blend.degenerate = chord < 1e-12;
    if (!blend.degenerate) {
      const double magnitude = chord / 3.0;
      Vec3 ta = normalized(curve_derivative(a, ua));
      Vec3 tb = normalized(curve_derivative(b, ub));
      if (norm(ta) == 0.0) ta = (p1 - p0) / chord;
      if (norm(tb) == 0.0) tb = (p1 - p0) / chord;
      blend.curve.t0 = ta * magnitude;
      blend.curve.t1 = tb * magnitude;
    }
    out.push_back(blend);
  }
  return out;
}

}  // namespace rheo
