#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "rheo/geometry/affine.hpp"
#include "rheo/geometry/curve.hpp"
#include "rheo/geometry/section.hpp"
#include "test_support.hpp"

using namespace rheo;
using rheo::test::Rng;

namespace {

constexpr double kPi = std::numbers::pi;

void expect_near(const Vec3& a, const Vec3& b, double tol) {
  EXPECT_NEAR(a.x, b.x, tol);
  EXPECT_NEAR(a.y, b.y, tol);
  EXPECT_NEAR(a.z, b.z, tol);
}

SectionTrack circle_track(std::vector<TrackKey> keys) {
  SectionTrack track;
  track.base.curves.push_back(circle_xz({0, 0, 0}, 1.0));
  track.keys = std::move(keys);
  return track;
}

}  // namespace

TEST(Affine, IdentityLeavesPointUnchanged) {
  EXPECT_EQ(affine_apply(Affine3::identity(), {1, 2, 3}), (Point3{1, 2, 3}));
}

TEST(Affine, TranslateAddsOffset) {
  EXPECT_EQ(affine_apply(Affine3::translate({0, 5, 0}), {1, 0, 0}), (Point3{1, 5, 0}));
}

TEST(Affine, RotateYQuarterTurnSendsXToMinusZ) {
  expect_near(affine_apply(Affine3::rotate_y(kPi / 2), {1, 0, 0}), {0, 0, -1}, 1e-15);
}

TEST(Affine, ComposeMatchesSequentialApplication) {
  Rng rng(11);
  for (int n = 0; n < 500; ++n) {
    Affine3 t1 = test::random_affine(rng);
    Affine3 t2 = test::random_affine(rng);
    Point3 p = test::random_point(rng, {{-5, -5, -5}, {5, 5, 5}});
    expect_near(affine_apply(t2, affine_apply(t1, p)), affine_apply(compose(t2, t1), p), 1e-12);
  }
}

TEST(Affine, SingularInverseThrows) {
  Affine3 flat = Affine3::scale({1, 0, 1});
  EXPECT_FALSE(flat.invertible());
  EXPECT_EQ(test::error_code_of([&] { (void)flat.inverse(); }), ErrorCode::invalid_argument);
}

TEST(Affine, OperatorNormBoundsStretch) {
  Rng rng(12);
  for (int n = 0; n < 200; ++n) {
    Affine3 t = test::random_affine(rng);
    double bound = t.linear.operator_norm();
    for (int k = 0; k < 20; ++k) {
      Vec3 v = test::random_unit(rng);
      EXPECT_LE(norm(t.apply_vector(v)), bound * (1 + 1e-12));
    }
  }
}

TEST(SampleCurve, SegmentThreeSamples) {
  auto pts = sample_curve(Segment{{0, 0, 0}, {1, 0, 0}}, 3);
  ASSERT_EQ(pts.size(), 3u);
  EXPECT_EQ(pts[0], (Point3{0, 0, 0}));
  EXPECT_EQ(pts[1], (Point3{0.5, 0, 0}));
  EXPECT_EQ(pts[2], (Point3{1, 0, 0}));
}

TEST(SampleCurve, UnitCircleQuarterAngles) {
  auto pts = sample_curve(circle_xz({0, 0, 0}, 1.0), 4);
  ASSERT_EQ(pts.size(), 4u);
  for (int k = 0; k < 4; ++k) {
    double a = k * kPi / 2;
    expect_near(pts[static_cast<std::size_t>(k)], {std::cos(a), 0, std::sin(a)}, 1e-15);
  }
}

TEST(SampleCurve, RejectsFewerThanTwo) {
  EXPECT_EQ(test::error_code_of([] { (void)sample_curve(Segment{{0, 0, 0}, {1, 0, 0}}, 1); }),
            ErrorCode::invalid_argument);
}

TEST(SampleCurve, CollinearHermiteStaysOnLine) {
  HermiteBlend h{{0, 0, 0}, {2, 0, 0}, {3, 0, 0}, {0.5, 0, 0}};
  for (const Point3& p : sample_curve(h, 41)) {
    EXPECT_NEAR(p.y, 0.0, 1e-12);
    EXPECT_NEAR(p.z, 0.0, 1e-12);
  }
}

TEST(SampleCurve, OpenCurveEndpointsExact) {
  Arc arc{{1, 2, 3}, 2.0, {1, 0, 0}, {0, 0, 1}, 0.3, 2.9};
  auto pts = sample_curve(arc, 17);
  EXPECT_EQ(pts.front(), curve_point(arc, 0.3));
  EXPECT_EQ(pts.back(), curve_point(arc, 2.9));
}

TEST(SampleCurve, CumulativeChordNondecreasing) {
  Rng rng(21);
  for (int n = 0; n < 50; ++n) {
    Point3 a = test::random_point(rng, {{-2, -2, -2}, {2, 2, 2}});
    Point3 b = test::random_point(rng, {{-2, -2, -2}, {2, 2, 2}});
    std::vector<Curve> curves = {
        Segment{a, b},
        HermiteBlend{a, test::random_unit(rng) * 3, b, test::random_unit(rng) * 3},
        Polyline{{a, b, test::random_point(rng, {{-2, -2, -2}, {2, 2, 2}})}},
        circle_xz(a, test::uniform(rng, 0.1, 3)),
    };
    for (const Curve& c : curves) {
      auto pts = sample_curve(c, 33);
      double total = 0.0, prev = 0.0;
      for (std::size_t i = 1; i < pts.size(); ++i) {
        total += distance(pts[i - 1], pts[i]);
        EXPECT_GE(total, prev);
        prev = total;
      }
    }
  }
}

TEST(Curve, ValidationRejectsBadShapes) {
  EXPECT_EQ(test::error_code_of([] { validate_curve(circle_xz({0, 0, 0}, 0.0)); }),
            ErrorCode::invalid_argument);
  EXPECT_EQ(test::error_code_of([] { validate_curve(Polyline{{{0, 0, 0}}}); }),
            ErrorCode::invalid_argument);
  EXPECT_EQ(test::error_code_of([] {
              validate_curve(Arc{{0, 0, 0}, 1.0, {1, 0, 0}, {0, 0, 1}, 1.0, 1.0});
            }),
            ErrorCode::invalid_argument);
  EXPECT_NO_THROW(validate_curve(Arc{{0, 0, 0}, 1.0, {1, 0, 0}, {0, 0, 1}, 0.0, 2 * kPi}));
}

TEST(Curve, TransformIsExactForEllipticImages) {
  Circle c = circle_xz({1, 0, 2}, 1.5);
  Affine3 t = compose(Affine3::rotate_y(0.7), Affine3::scale({1, 1, 3}));
  Curve img = transform_curve(c, t);
  for (double s : {0.0, 0.4, 1.3, 2.2, 5.9}) {
    expect_near(curve_point(img, s), t.apply(curve_point(c, s)), 1e-12);
  }
}

TEST(Track, TimeZeroReturnsBaseSection) {
  auto track = circle_track({{0, 1, 0, 0}, {1, 2, 0.5, 3}});
  Section s = evaluate_track(track, 0.0);
  EXPECT_EQ(sample_curve(s.curves[0], 16), sample_curve(track.base.curves[0], 16));
}

TEST(Track, LinearEasingOfScale) {
  auto track = circle_track({{0, 1, 0, 0}, {1, 2, 0, 0}});
  EXPECT_DOUBLE_EQ(interpolate_keys(track, 0.5).scale_z, 1.5);
  Section s = evaluate_track(track, 0.5);
  // Point at angle pi/2 sits on local +Z, so it is stretched by 1.5.
  expect_near(curve_point(s.curves[0], kPi / 2), {0, 0, 1.5}, 1e-12);
  expect_near(curve_point(s.curves[0], 0.0), {1, 0, 0}, 1e-12);
}

TEST(Track, HalfTurnMapsCircleOntoItself) {
  auto track = circle_track({{0, 1, 0, 0}, {1, 1, kPi, 0}});
  Section s = evaluate_track(track, 1.0);
  auto base = sample_curve(track.base.curves[0], 24);
  auto moved = sample_curve(s.curves[0], 24);
  for (std::size_t i = 0; i < moved.size(); ++i) {
    expect_near(moved[i], Affine3::rotate_y(kPi).apply(base[i]), 1e-12);
    double best = 1e9;
    for (const Point3& q : base) best = std::min(best, distance(moved[i], q));
    EXPECT_LT(best, 1e-12);
  }
}

TEST(Track, KeyTimesReproduceKeyedValues) {
  Rng rng(31);
  for (int n = 0; n < 50; ++n) {
    SectionTrack track = circle_track({{0, 1, 0, 0}});
    double t = 0.0;
    for (int k = 0; k < 4; ++k) {
      t += test::uniform(rng, 0.05, 0.25);
      track.keys.push_back({t, test::uniform(rng, 0.2, 3), test::uniform(rng, -3, 3),
                            test::uniform(rng, -2, 2)});
    }
    for (const TrackKey& key : track.keys) EXPECT_EQ(interpolate_keys(track, key.t), key);
  }
}

TEST(Track, OutOfRangeTimeThrows) {
  auto track = circle_track({{0, 1, 0, 0}});
  EXPECT_EQ(test::error_code_of([&] { (void)evaluate_track(track, 1.5); }),
            ErrorCode::invalid_argument);
  EXPECT_EQ(test::error_code_of([&] { (void)evaluate_track(track, -0.1); }),
            ErrorCode::invalid_argument);
}

TEST(Track, ValidationRequiresIdentityFirstKey) {
  auto track = circle_track({{0, 2, 0, 0}});
  EXPECT_THROW(validate_track(track), Error);
  track = circle_track({{0, 1, 0, 0}, {0.5, 1, 0, 0}, {0.5, 1, 0, 0}});
  EXPECT_THROW(validate_track(track), Error);
}

TEST(Section, RejectsOffPlaneCurves) {
  Section s;
  s.curves.push_back(Segment{{0, 0, 0}, {1, 0.1, 0}});
  EXPECT_THROW(validate_section(s), Error);
}

TEST(Blend, TangentsParallelToCircles) {
  Circle a = circle_xz({0, 0, 0}, 1.0);
  Circle b = circle_xz({0, 2, 0}, 1.0);
  std::vector<std::pair<double, double>> pairs{{0.0, 0.0}};
  auto blends = blend_g1(a, b, pairs);
  ASSERT_EQ(blends.size(), 1u);
  const Curve h = blends[0].curve;
  const double d = 1e-6;
  // Forward difference of the blend at its ends vs the circle tangents.
  Vec3 start = normalized(curve_point(h, d) - curve_point(h, 0.0));
  Vec3 end = normalized(curve_point(h, 1.0) - curve_point(h, 1.0 - d));
  Vec3 ta = normalized(curve_derivative(a, 0.0));
  Vec3 tb = normalized(curve_derivative(b, 0.0));
  EXPECT_LT(norm(cross(normalized(curve_derivative(h, 0.0)), ta)), 1e-9);
  EXPECT_LT(norm(cross(normalized(curve_derivative(h, 1.0)), tb)), 1e-9);
  EXPECT_LT(norm(cross(start, ta)), 1e-4);
  EXPECT_LT(norm(cross(end, tb)), 1e-4);
}

TEST(Blend, ParallelCirclesGiveFourPlanarBlends) {
  Circle a = circle_xz({0, 0, 0}, 1.0);
  Circle b = circle_xz({0, 1.5, 0}, 1.0);
  std::vector<std::pair<double, double>> pairs;
  for (int k = 0; k < 4; ++k) pairs.push_back({k * kPi / 2, k * kPi / 2});
  auto blends = blend_g1(a, b, pairs);
  ASSERT_EQ(blends.size(), 4u);
  for (const auto& bl : blends) {
    EXPECT_FALSE(bl.degenerate);
    const HermiteBlend& h = bl.curve;
    Vec3 n = normalized(cross(h.p1 - h.p0, h.t0));
    for (const Point3& p : sample_curve(h, 21)) EXPECT_NEAR(dot(p - h.p0, n), 0.0, 1e-12);
  }
}

TEST(Blend, CoincidentCirclesFlagDegenerate) {
  Circle a = circle_xz({0, 0, 0}, 1.0);
  std::vector<std::pair<double, double>> pairs{{0.0, 0.0}};
  auto blends = blend_g1(a, a, pairs);
  ASSERT_EQ(blends.size(), 1u);
  EXPECT_TRUE(blends[0].degenerate);
  EXPECT_EQ(distance(blends[0].curve.p0, blends[0].curve.p1), 0.0);
}

TEST(Blend, EmptyPairsThrow) {
  Circle a = circle_xz({0, 0, 0}, 1.0);
  EXPECT_EQ(test::error_code_of([&] { (void)blend_g1(a, a, {}); }), ErrorCode::invalid_argument);
}

TEST(Blend, EndpointsInterpolateExactly) {
  Rng rng(41);
  for (int n = 0; n < 100; ++n) {
    Circle a = circle_xz(test::random_point(rng, {{-1, -1, -1}, {1, 1, 1}}), test::uniform(rng, 0.2, 2));
    Arc b{test::random_point(rng, {{-1, 2, -1}, {1, 3, 1}}), test::uniform(rng, 0.2, 2), {1, 0, 0},
          {0, 0, 1}, 0.0, 3.0};
    double ua = test::uniform(rng, 0, 2 * kPi), ub = test::uniform(rng, 0, 3);
    std::vector<std::pair<double, double>> pairs{{ua, ub}};
    auto bl = blend_g1(a, b, pairs)[0].curve;
    EXPECT_EQ(curve_point(bl, 0.0), curve_point(a, ua));
    EXPECT_EQ(curve_point(bl, 1.0), curve_point(b, ub));
  }
}
