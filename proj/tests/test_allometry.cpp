#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "rheo/allometry/accumulate.hpp"
#include "rheo/allometry/idw.hpp"
#include "rheo/allometry/raster.hpp"
#include "rheo/allometry/uv_projection.hpp"
#include "rheo/field/ops.hpp"
#include "rheo/field/voxel_grid.hpp"
#include "rheo/span/deck.hpp"
#include "test_support.hpp"

using namespace rheo;
using rheo::test::Rng;

namespace {

UvProjection unit_chart() {
  UvProjection p;
  p.origin = {-1, 0, 0};
  p.u_axis = {0, 0, 1};
  p.v_axis = {1, 0, 0};
  p.u_extent = 4;
  p.v_extent = 2;
  return p;
}

RasterField random_raster(Rng& rng, int w, int h, double lo = 0, double hi = 1) {
  RasterField r = RasterField::filled(w, h, 0.0);
  for (double& v : r.values) v = test::uniform(rng, lo, hi);
  return r;
}

}  // namespace

TEST(Projection, Examples) {
  UvProjection p = unit_chart();
  auto o = project_uv(p, p.origin);
  EXPECT_EQ(o[0], 0.0);
  EXPECT_EQ(o[1], 0.0);
  auto u1 = project_uv(p, p.origin + p.u_axis * p.u_extent);
  EXPECT_EQ(u1[0], 1.0);
  EXPECT_EQ(u1[1], 0.0);
}

TEST(Projection, VerticalTranslationInvariant) {
  UvProjection p = unit_chart();
  Rng rng(41);
  for (int n = 0; n < 1000; ++n) {
    Point3 q = test::random_point(rng, {{-5, -5, -5}, {5, 5, 5}});
    auto a = project_uv(p, q);
    auto b = project_uv(p, q + Vec3{0, test::uniform(rng, -100, 100), 0});
    EXPECT_EQ(a, b);
  }
}

TEST(Projection, UnprojectRoundTrip) {
  UvProjection p = unit_chart();
  Rng rng(42);
  for (int n = 0; n < 100; ++n) {
    double u = test::uniform(rng, -1, 2), v = test::uniform(rng, -1, 2);
    auto back = project_uv(p, unproject_uv(p, u, v));
    EXPECT_NEAR(back[0], u, 1e-12);
    EXPECT_NEAR(back[1], v, 1e-12);
  }
}

TEST(Projection, InvalidChartThrows) {
  UvProjection p = unit_chart();
  p.u_extent = 0;
  EXPECT_EQ(test::error_code_of([&] { validate(p); }), ErrorCode::validation);
  p = unit_chart();
  p.v_axis = {0, 1, 0};
  EXPECT_EQ(test::error_code_of([&] { validate(p); }), ErrorCode::validation);
}

TEST(Projection, SpanChartCoversDeck) {
  SpanSpec spec;
  spec.track.base.curves = {Segment{{-1, 0, 0}, {1, 0, 0}}};
  spec.track.keys = {{0, 1, 0, 0}, {1, 1.5, 0.3, 1.0}};
  spec.direction = {1, 0, 2};
  spec.span_length = 5;
  spec.steps = 6;
  DeckSurface deck = loft_deck(freeze_sections(spec), 5);
  UvProjection p = span_projection(deck, spec.direction);
  EXPECT_NO_THROW(validate(p));
  for (const auto& q : deck.points) {
    auto uv = project_uv(p, q);
    EXPECT_GE(uv[0], -1e-12);
    EXPECT_LE(uv[0], 1 + 1e-12);
    EXPECT_GE(uv[1], -1e-12);
    EXPECT_LE(uv[1], 1 + 1e-12);
  }
}

TEST(Raster, BilinearSampling) {
  RasterField r = RasterField::filled(2, 2, 0.0);
  r.at(1, 0) = 1.0;
  r.at(1, 1) = 1.0;
  EXPECT_EQ(r.sample(0.25, 0.5), 0.0);
  EXPECT_EQ(r.sample(0.75, 0.5), 1.0);
  EXPECT_DOUBLE_EQ(r.sample(0.5, 0.5), 0.5);
  EXPECT_EQ(r.sample(-3, 9), 0.0);
  EXPECT_EQ(r.sample(7, -2), 1.0);
}

TEST(Raster, PgmParsing) {
  std::stringstream ss("P2\n# comment line\n3 2 # trailing\n255\n0 51 255\n# mid\n102 204 255\n");
  RasterField r = read_pgm(ss);
  EXPECT_EQ(r.width, 3);
  EXPECT_EQ(r.height, 2);
  EXPECT_EQ(r.at(1, 0), 51.0 / 255.0);
  EXPECT_EQ(r.at(0, 1), 102.0 / 255.0);
  EXPECT_EQ(r.at(2, 1), 1.0);
}

TEST(Raster, MalformedPgmIsInputFormat) {
  for (const char* text : {"P5\n1 1\n255\n0\n", "P2\n2 2\n255\n0 1 2\n", "P2\n1 1\n255\n300\n",
                           "P2\n0 1\n255\n", "P2\n1 1\n255\nx\n", "P2\n1 1\n0\n0\n"}) {
    std::stringstream ss(text);
    EXPECT_EQ(test::error_code_of([&] { (void)read_pgm(ss); }), ErrorCode::input_format) << text;
  }
}

TEST(Raster, RastRoundTripIsBitExact) {
  Rng rng(43);
  RasterField r = random_raster(rng, 7, 5, -1e3, 1e3);
  r.at(0, 0) = 0.1;
  r.at(1, 0) = 1e-300;
  r.at(2, 0) = -2.5e-310;
  std::stringstream ss;
  write_rast(r, ss);
  RasterField back = read_rast(ss);
  ASSERT_EQ(back.width, 7);
  ASSERT_EQ(back.height, 5);
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    EXPECT_EQ(std::bit_cast<std::uint64_t>(back.values[i]), std::bit_cast<std::uint64_t>(r.values[i]));
  }
}

TEST(Raster, MalformedRastIsInputFormat) {
  for (const char* text : {"RAST 2 2\n1 2 3\n", "RAST 1 1\nnan\n", "RAST -1 2\n", "RAST 1 1\n1 2\n",
                           "RASTER 1 1\n0\n"}) {
    std::stringstream ss(text);
    EXPECT_EQ(test::error_code_of([&] { (void)read_rast(ss); }), ErrorCode::input_format) << text;
  }
}

TEST(Raster, LoadDispatchesOnMagic) {
  auto dir = test::scratch_dir("raster_load");
  test::spit(dir / "a.pgm", "P2 1 2 4 1 3\n");
  test::spit(dir / "b.txt", "RAST 2 1\n0.25 0.5\n");
  test::spit(dir / "c.bin", "GIF89a");
  RasterField a = load_raster(dir / "a.pgm");
  EXPECT_EQ(a.values, (std::vector<double>{0.25, 0.75}));
  RasterField b = load_raster(dir / "b.txt");
  EXPECT_EQ(b.values, (std::vector<double>{0.25, 0.5}));
  EXPECT_EQ(test::error_code_of([&] { (void)load_raster(dir / "c.bin"); }), ErrorCode::input_format);
  EXPECT_EQ(test::error_code_of([&] { (void)load_raster(dir / "missing.pgm"); }), ErrorCode::input_format);
}

TEST(Idw, ExactAtSamples) {
  std::vector<UvSample> s{{0.1, 0.2, 3.0}, {0.7, 0.4, -1.5}, {0.3, 0.9, 8.25}};
  for (const auto& q : s) EXPECT_EQ(idw_interpolate(s, 2.0, q.u, q.v), q.value);
}

TEST(Idw, SymmetricMidpoint) {
  std::vector<UvSample> s{{0, 0, 0.0}, {1, 0, 1.0}};
  EXPECT_DOUBLE_EQ(idw_interpolate(s, 2.0, 0.5, 0.3), 0.5);
}

TEST(Idw, ConvexCombination) {
  Rng rng(44);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<UvSample> s;
    const int n = 1 + static_cast<int>(rng() % 12);
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i < n; ++i) {
      s.push_back({test::uniform(rng, 0, 1), test::uniform(rng, 0, 1), test::uniform(rng, -5, 5)});
      lo = std::min(lo, s.back().value);
      hi = std::max(hi, s.back().value);
    }
    double power = test::uniform(rng, 0.5, 4);
    for (int q = 0; q < 20; ++q) {
      double v = idw_interpolate(s, power, test::uniform(rng, -0.5, 1.5), test::uniform(rng, -0.5, 1.5));
      EXPECT_GE(v, lo - 1e-12);
      EXPECT_LE(v, hi + 1e-12);
    }
  }
}

TEST(Idw, InvalidInputsThrow) {
  std::vector<UvSample> none;
  std::vector<UvSample> one{{0, 0, 1}};
  EXPECT_EQ(test::error_code_of([&] { (void)idw_interpolate(none, 2, 0, 0); }), ErrorCode::invalid_argument);
  EXPECT_EQ(test::error_code_of([&] { (void)idw_interpolate(one, 0, 0, 0); }), ErrorCode::invalid_argument);
  EXPECT_EQ(test::error_code_of([&] { (void)rasterize_scatter(none, 4, 4); }), ErrorCode::invalid_argument);
}

TEST(Scatter, SingleSampleFillsRaster) {
  std::vector<UvSample> s{{0.3, 0.3, 1.0}};
  RasterField r = rasterize_scatter(s, 5, 4);
  for (double v : r.values) EXPECT_EQ(v, 1.0);
}

TEST(Scatter, CornerSamplesBoundCenter) {
  std::vector<UvSample> s{{0, 0, 0}, {1, 0, 0}, {0, 1, 1}, {1, 1, 1}};
  RasterField r = rasterize_scatter(s, 3, 3);
  EXPECT_GE(r.at(1, 1), 0.0);
  EXPECT_LE(r.at(1, 1), 1.0);
  EXPECT_DOUBLE_EQ(r.at(1, 1), 0.5);
}

TEST(Scatter, RefinementKeepsCoincidentCenters) {
  // Pixel centers (i + 0.5)/w coincide with (3i + 1.5)/(3w).
  Rng rng(45);
  std::vector<UvSample> s;
  for (int i = 0; i < 9; ++i) s.push_back({test::uniform(rng, 0, 1), test::uniform(rng, 0, 1), test::uniform(rng, 0, 1)});
  RasterField coarse = rasterize_scatter(s, 5, 4);
  RasterField fine = rasterize_scatter(s, 15, 12);
  for (int j = 0; j < 4; ++j) {
    for (int i = 0; i < 5; ++i) EXPECT_NEAR(fine.at(3 * i + 1, 3 * j + 1), coarse.at(i, j), 1e-12);
  }
}

TEST(InverseDistance, ContactColumnSaturates) {
  UvProjection p = unit_chart();
  UvSurface surface = [&](double u, double v) { return unproject_uv(p, u, v); };
  const int w = 8, h = 5;
  Point3 through = unproject_uv(p, (2 + 0.5) / w, 0.5);
  std::vector<ScalarField> contacts{half_space(through, p.u_axis)};
  RasterField r = inverse_distance_raster(contacts, p, surface, w, h, 0.5, 4.0);
  for (int j = 0; j < h; ++j) {
    EXPECT_NEAR(r.at(2, j), 1.0, 1e-12);
    EXPECT_LT(r.at(5, j), 1.0);
  }
}

TEST(InverseDistance, UniformDistanceGivesHalf) {
  UvProjection p = unit_chart();
  UvSurface surface = [&](double u, double v) { return unproject_uv(p, u, v); };
  const double c = 0.5, r_cap = 4.0;
  const double d = c / (0.5 * r_cap);
  std::vector<ScalarField> contacts{half_space({0, -d, 0}, {0, -1, 0})};
  RasterField r = inverse_distance_raster(contacts, p, surface, 6, 6, c, r_cap);
  for (double v : r.values) EXPECT_NEAR(v, 0.5, 1e-12);
}

TEST(InverseDistance, NonIncreasingInDistance) {
  UvProjection p = unit_chart();
  const double c = 0.3, r_cap = 5.0;
  double previous = 2.0;
  for (int n = 0; n <= 200; ++n) {
    const double d = 0.005 * n;
    UvSurface surface = [&](double u, double v) { return unproject_uv(p, u, v) + Vec3{0, d, 0}; };
    std::vector<ScalarField> contacts{half_space({0, 0, 0}, {0, 1, 0})};
    RasterField r = inverse_distance_raster(contacts, p, surface, 1, 1, c, r_cap);
    EXPECT_LE(r.values[0], previous);
    EXPECT_GE(r.values[0], 0.0);
    EXPECT_LE(r.values[0], 1.0);
    previous = r.values[0];
  }
}

TEST(InverseDistance, InvalidInputsThrow) {
  UvProjection p = unit_chart();
  UvSurface surface = [&](double u, double v) { return unproject_uv(p, u, v); };
  std::vector<ScalarField> none;
  std::vector<ScalarField> one{constant_field(1)};
  EXPECT_EQ(test::error_code_of([&] { (void)inverse_distance_raster(none, p, surface, 2, 2, 1, 1); }),
            ErrorCode::invalid_argument);
  EXPECT_EQ(test::error_code_of([&] { (void)inverse_distance_raster(one, p, surface, 2, 2, 0, 1); }),
            ErrorCode::invalid_argument);
  EXPECT_EQ(test::error_code_of([&] { (void)inverse_distance_raster(one, p, surface, 2, 2, 1, 0); }),
            ErrorCode::invalid_argument);
}

TEST(Accumulate, ZeroAlphaIsIdentity) {
  ScalarField body = sphere({0, 0, 1}, 1);
  Rng rng(46);
  ScalarField out = accumulate(body, random_raster(rng, 4, 4), unit_chart(), 0.0, 0.2);
  for (int n = 0; n < 1000; ++n) {
    Point3 p = test::random_point(rng, {{-3, -3, -3}, {3, 3, 3}});
    EXPECT_EQ(out(p), body(p));
  }
}

TEST(Accumulate, UniformRasterOffsetsSphere) {
  const double R = 1.0, alpha = 0.7, t0 = 0.2;
  ScalarField out = accumulate(sphere({0, 0, 1}, R), RasterField::filled(3, 3, 1.0), unit_chart(), alpha, t0);
  Rng rng(47);
  for (int n = 0; n < 500; ++n) {
    Vec3 dir = test::random_unit(rng);
    Point3 p = Point3{0, 0, 1} + dir * (R + alpha * t0);
    EXPECT_NEAR(out(p), 0.0, 1e-6);
  }
}

TEST(Accumulate, LinearInAlpha) {
  Rng rng(48);
  RasterField r = random_raster(rng, 9, 7);
  UvProjection p = unit_chart();
  ScalarField body = primitive_box({0, 0, 1}, {0.8, 0.5, 1.5});
  const double a1 = 0.6, a2 = 1.3, t0 = 0.15;
  ScalarField f1 = accumulate(body, r, p, a1, t0);
  ScalarField f12 = accumulate(body, r, p, a1 + a2, t0);
  for (int n = 0; n < 2000; ++n) {
    Point3 q = test::random_point(rng, {{-2, -2, -1}, {2, 2, 4}});
    auto uv = project_uv(p, q);
    EXPECT_NEAR(f12(q), f1(q) - a2 * t0 * r.sample(uv[0], uv[1]), 1e-12);
  }
}

TEST(Accumulate, LargerRasterNeverShrinksVolume) {
  Rng rng(49);
  UvProjection p = unit_chart();
  ScalarField body = primitive_box({0, 0, 2}, {0.6, 0.4, 1.5});
  RasterField a = random_raster(rng, 6, 6);
  RasterField b = a;
  for (double& v : b.values) v += test::uniform(rng, 0, 0.5);
  Box3 box{{-1.5, -1.5, -0.5}, {1.5, 1.5, 4.5}};
  double va = negative_volume(sample_grid(accumulate(body, a, p, 1.0, 0.3), box, 0.05));
  double vb = negative_volume(sample_grid(accumulate(body, b, p, 1.0, 0.3), box, 0.05));
  EXPECT_LE(va, vb);
  EXPECT_LT(negative_volume(sample_grid(body, box, 0.05)), va);
}

TEST(Accumulate, BoundsCoverGrownBody) {
  ScalarField out = accumulate(sphere({0, 0, 1}, 1), RasterField::filled(2, 2, 1.0), unit_chart(), 2.0, 0.5);
  ASSERT_TRUE(out.bounds().has_value());
  EXPECT_LE(out.bounds()->lo.x, -2.0);
  EXPECT_GE(out.bounds()->hi.z, 3.0);
}
