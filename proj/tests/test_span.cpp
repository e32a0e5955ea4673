#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "rheo/field/mesh_distance.hpp"
#include "rheo/field/ops.hpp"
#include "rheo/field/voxel_grid.hpp"
#include "rheo/geometry/mesh.hpp"
#include "rheo/lattice/rheotomic.hpp"
#include "rheo/span/deck.hpp"
#include "rheo/span/preform.hpp"
#include "test_support.hpp"

using namespace rheo;
using rheo::test::Rng;

namespace {

SpanSpec straight_span(double half_width, double length, int steps, double rise = 0.0) {
  SpanSpec spec;
  spec.track.base.curves = {Segment{{-half_width, 0, 0}, {half_width, 0, 0}}};
  spec.track.keys = {{0.0, 1.0, 0.0, 0.0}, {1.0, 1.0, 0.0, rise}};
  spec.direction = {0, 0, 1};
  spec.span_length = length;
  spec.steps = steps;
  return spec;
}

DeckSurface flat_deck(int rows = 2, int cols = 2) {
  auto sections = freeze_sections(straight_span(0.5, 1.0, rows));
  return loft_deck(sections, cols);
}

double section_distance(const Section& a, const Section& b) {
  double worst = 0.0;
  for (std::size_t c = 0; c < a.curves.size(); ++c) {
    for (const auto& [pa, pb] : {std::pair{sample_curve(a.curves[c], 17), sample_curve(b.curves[c], 17)}}) {
      for (std::size_t i = 0; i < pa.size(); ++i) worst = std::max(worst, distance(pa[i], pb[i]));
    }
  }
  return worst;
}

double point_segment_distance(const Point3& p, const Segment& s) {
  return distance(p, closest_point_on_triangle(p, s.p0, s.p1, s.p1));
}

}  // namespace

TEST(Freeze, TwoStepsAreStartAndEnd) {
  SpanSpec spec = straight_span(1, 6, 2, 1.5);
  auto sections = freeze_sections(spec);
  ASSERT_EQ(sections.size(), 2u);
  EXPECT_EQ(section_distance(sections[0], evaluate_track(spec.track, 0.0)), 0.0);
  Section end = transform_section(evaluate_track(spec.track, 1.0), Affine3::translate({0, 0, 6}));
  EXPECT_LE(section_distance(sections[1], end), 1e-12);
}

TEST(Freeze, LinearRiseGivesEvenHeights) {
  auto sections = freeze_sections(straight_span(1, 8, 5, 4.0));
  ASSERT_EQ(sections.size(), 5u);
  for (int i = 0; i < 5; ++i) {
    const auto& seg = std::get<Segment>(sections[static_cast<std::size_t>(i)].curves[0]);
    EXPECT_NEAR(seg.p0.y, i, 1e-12);
    EXPECT_NEAR(sections[static_cast<std::size_t>(i)].frame.origin.y, i, 1e-12);
  }
}

TEST(Freeze, EqualSpacingAlongDirection) {
  SpanSpec spec = straight_span(1, 7, 8, 2.0);
  spec.direction = {1, 0.3, 1};
  Vec3 dir = normalized(spec.direction);
  auto sections = freeze_sections(spec);
  for (std::size_t i = 1; i < sections.size(); ++i) {
    double step = dot(sections[i].frame.origin - sections[i - 1].frame.origin, dir);
    EXPECT_NEAR(step, 1.0 + 2.0 / 7 * dir.y, 1e-12);
    Vec3 horizontal = sections[i].frame.origin - sections[i - 1].frame.origin;
    horizontal.y = 0;
    Vec3 dh{dir.x, 0, dir.z};
    EXPECT_NEAR(norm(horizontal), 1.0 * norm(dh), 1e-12);
  }
}

TEST(Freeze, RefinementConsistent) {
  SpanSpec spec = straight_span(1, 5, 3, 1.0);
  spec.track.keys.insert(spec.track.keys.begin() + 1, TrackKey{0.5, 2.0, 0.3, 0.2});
  auto coarse = freeze_sections(spec);
  spec.steps = 5;
  auto fine = freeze_sections(spec);
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    EXPECT_LE(section_distance(coarse[i], fine[2 * i]), 1e-12);
  }
}

TEST(Freeze, InvalidSpecThrows) {
  SpanSpec spec = straight_span(1, 5, 1);
  EXPECT_EQ(test::error_code_of([&] { (void)freeze_sections(spec); }), ErrorCode::invalid_argument);
  spec = straight_span(1, 5, 3);
  spec.direction = {0, 1, 0};
  EXPECT_EQ(test::error_code_of([&] { (void)freeze_sections(spec); }), ErrorCode::invalid_argument);
  spec = straight_span(1, 0, 3);
  EXPECT_EQ(test::error_code_of([&] { (void)freeze_sections(spec); }), ErrorCode::invalid_argument);
}

TEST(Loft, IdenticalSectionsGivePlanarGrid) {
  auto sections = freeze_sections(straight_span(1, 3, 4));
  DeckSurface deck = loft_deck(sections, 5);
  EXPECT_EQ(deck.rows, 4);
  EXPECT_EQ(deck.cols, 5);
  for (int i = 0; i < deck.rows; ++i) {
    for (int j = 0; j < deck.cols; ++j) {
      EXPECT_NEAR(deck.at(i, j).x, -1 + 0.5 * j, 1e-12);
      EXPECT_EQ(deck.at(i, j).y, 0.0);
      EXPECT_NEAR(deck.at(i, j).z, 1.0 * i, 1e-12);
      EXPECT_NEAR(deck.frames[deck.index(i, j)].normal.y, 1.0, 1e-12);
    }
  }
}

TEST(Loft, ParallelSegmentsGiveRuledSurface) {
  auto sections = freeze_sections(straight_span(1, 2, 5, 1.0));
  DeckSurface deck = loft_deck(sections, 7);
  for (int j = 0; j < deck.cols; ++j) {
    Vec3 along = deck.at(deck.rows - 1, j) - deck.at(0, j);
    for (int i = 1; i + 1 < deck.rows; ++i) {
      EXPECT_LE(norm(cross(deck.at(i, j) - deck.at(0, j), along)), 1e-12);
    }
  }
  for (int i = 0; i < deck.rows; ++i) {
    Vec3 across = deck.at(i, deck.cols - 1) - deck.at(i, 0);
    for (int j = 1; j + 1 < deck.cols; ++j) {
      EXPECT_LE(norm(cross(deck.at(i, j) - deck.at(i, 0), across)), 1e-12);
    }
  }
}

TEST(Loft, UnitDeckArea) {
  DeckSurface deck = flat_deck(3, 4);
  EXPECT_NEAR(surface_area(deck.triangulate()), 1.0, 1e-9);
}

TEST(Loft, EndRowsLieOnEndSections) {
  SpanSpec spec = straight_span(1, 4, 6, 2.0);
  spec.track.keys.insert(spec.track.keys.begin() + 1, TrackKey{0.4, 1.7, 0.5, 0.1});
  auto sections = freeze_sections(spec);
  DeckSurface deck = loft_deck(sections, 9);
  const auto& first = std::get<Segment>(sections.front().curves[0]);
  const auto& last = std::get<Segment>(sections.back().curves[0]);
  for (int j = 0; j < deck.cols; ++j) {
    EXPECT_LE(point_segment_distance(deck.at(0, j), first), 1e-12);
    EXPECT_LE(point_segment_distance(deck.at(deck.rows - 1, j), last), 1e-12);
  }
}

TEST(Loft, IncompatibleSectionsThrow) {
  auto sections = freeze_sections(straight_span(1, 3, 2));
  sections[1].curves = {circle_xz({0, 0, 3}, 1.0)};
  EXPECT_EQ(test::error_code_of([&] { (void)loft_deck(sections, 5); }), ErrorCode::invalid_argument);
  sections.pop_back();
  EXPECT_EQ(test::error_code_of([&] { (void)loft_deck(sections, 5); }), ErrorCode::invalid_argument);
}

TEST(Bend, ZeroProfileLeavesDeckUnchanged) {
  DeckSurface deck = loft_deck(freeze_sections(straight_span(1, 3, 4, 0.5)), 7);
  DeckSurface bent = bend_edges(deck, [](double) { return 0.0; });
  EXPECT_EQ(bent.points, deck.points);
}

TEST(Bend, ConstantBendKeepsCenterline) {
  DeckSurface deck = loft_deck(freeze_sections(straight_span(1, 3, 4, 0.5)), 7);
  DeckSurface bent = bend_edges(deck, [](double) { return 0.4; });
  for (int i = 0; i < deck.rows; ++i) {
    EXPECT_LE(distance(bent.at(i, 3), deck.at(i, 3)), 1e-12);
    EXPECT_GT(bent.at(i, 0).y, deck.at(i, 0).y);
    EXPECT_GT(bent.at(i, 6).y, deck.at(i, 6).y);
  }
}

TEST(Bend, LinearProfileLiftsEdgesMonotonically) {
  DeckSurface deck = loft_deck(freeze_sections(straight_span(1, 4, 5)), 9);
  const double theta_max = 0.6;
  DeckSurface bent = bend_edges(deck, [&](double u) { return u * theta_max; });
  auto lift = [&](int i) { return bent.at(i, 0).y - deck.at(i, 0).y; };
  for (int j = 0; j < deck.cols; ++j) EXPECT_EQ(bent.at(0, j), deck.at(0, j));
  EXPECT_GT(lift(4), lift(2));
  EXPECT_GT(lift(2), 0.0);
  EXPECT_NEAR(lift(4), std::sin(theta_max), 1e-12);
}

TEST(DeckField, FlatDeckExamples) {
  ScalarField f = deck_field(flat_deck(), 0.1);
  EXPECT_NEAR(f({0, 0.03, 0.5}), -0.02, 1e-12);
  EXPECT_NEAR(f({0, 1.0, 0.5}), 0.95, 1e-12);
  EXPECT_EQ(test::error_code_of([] { (void)deck_field(flat_deck(), 0.0); }),
            ErrorCode::invalid_argument);
}

TEST(DeckField, NotBelowBruteForceDistance) {
  SpanSpec spec = straight_span(1, 3, 5, 1.0);
  spec.track.keys.insert(spec.track.keys.begin() + 1, TrackKey{0.5, 1.5, 0.4, 0.2});
  DeckSurface deck = bend_edges(loft_deck(freeze_sections(spec), 6), [](double u) { return 0.5 * u; });
  const double t = 0.2;
  ScalarField f = deck_field(deck, t);
  Mesh m = deck.triangulate();
  Rng rng(31);
  for (int n = 0; n < 500; ++n) {
    Point3 p = test::random_point(rng, deck.bounds().padded(1.0));
    double best = 1e300;
    for (const auto& tri : m.triangles) {
      best = std::min(best, distance(p, closest_point_on_triangle(p, m.vertices[tri[0]], m.vertices[tri[1]],
                                                                  m.vertices[tri[2]])));
    }
    EXPECT_GE(f(p), best - t / 2 - 1e-9);
  }
}

TEST(Preform, SolidLatticeFillsShell) {
  DeckSurface deck = loft_deck(freeze_sections(straight_span(1, 3, 4, 0.5)), 5);
  const double t = 0.1;
  ShellSpec shell;
  shell.ground_y = -1.0;
  ScalarField pre = structural_preform(deck, t, shell, constant_field(-1e9));
  ScalarField shell_f = auto_shell(deck, shell.ground_y);
  ScalarField prism = footprint_prism(deck, t, shell.ground_y);
  Rng rng(32);
  for (int n = 0; n < 2000; ++n) {
    Point3 p = test::random_point(rng, {{-1.5, -1.5, -0.5}, {1.5, 1, 3.5}});
    Point3 q = p;
    // Keep samples clear of the plate.
    double deck_y = 0.5 * q.z / 3.0;
    if (std::abs(q.y - deck_y) < t) continue;
    double expected = std::max(shell_f(q), prism(q));
    EXPECT_EQ(pre(q) < 0, expected < 0);
  }
}

TEST(Preform, EmptyShellLeavesPlateOnly) {
  DeckSurface deck = flat_deck(3, 3);
  ShellSpec shell;
  shell.user = constant_field(1.0);
  shell.ground_y = -1.0;
  ScalarField pre = structural_preform(deck, 0.1, shell, constant_field(-1e9));
  ScalarField plate = deck_field(deck, 0.1);
  Rng rng(33);
  for (int n = 0; n < 2000; ++n) {
    Point3 p = test::random_point(rng, {{-1, -1.5, -0.5}, {1, 0.5, 1.5}});
    EXPECT_EQ(pre(p) < 0, plate(p) < 0);
    if (plate(p) < 1.0) EXPECT_EQ(pre(p), plate(p));
  }
}

TEST(Preform, NegativeSetWithinPlateAndShell) {
  DeckSurface deck = loft_deck(freeze_sections(straight_span(1, 3, 4, 0.5)), 5);
  const double t = 0.1;
  ShellSpec shell;
  shell.ground_y = -1.0;
  LatticeSpec lat;
  lat.tile.cell = {0.5, -1.0, 1.0};
  lat.tile.helicoid.pitch = 2.0;
  lat.tile.helicoid.r_max = 0.5;
  lat.tile.helicoid.axis_x = -0.75;
  lat.tile.helicoid.axis_z = 0.25;
  lat.tile.thickness = 0.1;
  lat.nx = 4;
  lat.nz = 6;
  ScalarField pre = structural_preform(deck, t, shell, tile_lattice(lat));
  ScalarField plate = deck_field(deck, t);
  ScalarField host = intersect(auto_shell(deck, shell.ground_y), footprint_prism(deck, t, shell.ground_y));
  Box3 box{{-1.2, -1.2, -0.2}, {1.2, 0.8, 3.2}};
  const int n = 64;
  int solid = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        Point3 p{box.lo.x + (box.hi.x - box.lo.x) * i / (n - 1), box.lo.y + (box.hi.y - box.lo.y) * j / (n - 1),
                 box.lo.z + (box.hi.z - box.lo.z) * k / (n - 1)};
        if (pre(p) < 0) {
          ++solid;
          EXPECT_TRUE(plate(p) < 0 || host(p) < 0);
        }
      }
    }
  }
  EXPECT_GT(solid, 0);
}

TEST(Preform, LargerShellNeverRemovesSolid) {
  DeckSurface deck = loft_deck(freeze_sections(straight_span(1, 3, 4, 0.5)), 5);
  ShellSpec small;
  small.ground_y = -1.0;
  small.user = sphere({0, -0.5, 1.5}, 0.8);
  ShellSpec large = small;
  large.user = offset_field(*small.user, 0.4);
  ScalarField lattice = sphere({0, -0.5, 1.2}, 1.0);
  ScalarField a = structural_preform(deck, 0.1, small, lattice);
  ScalarField b = structural_preform(deck, 0.1, large, lattice);
  Rng rng(34);
  for (int n = 0; n < 3000; ++n) {
    Point3 p = test::random_point(rng, {{-1.5, -1.5, -0.5}, {1.5, 1, 3.5}});
    EXPECT_LE(b(p), a(p));
  }
}

TEST(Preform, DegenerateFootprintThrows) {
  DeckSurface deck;
  deck.rows = 2;
  deck.cols = 2;
  deck.points = {{0, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 1, 1}};
  compute_frames(deck);
  EXPECT_EQ(test::error_code_of([&] { (void)footprint_prism(deck, 0.1, -1.0); }),
            ErrorCode::invalid_argument);
}

TEST(HeightMap, FlatDeckHeights) {
  DeckSurface deck = loft_deck(freeze_sections(straight_span(1, 2, 3, 1.0)), 4);
  DeckHeightMap map(deck);
  auto h = map.height_at(0.2, 1.0);
  ASSERT_TRUE(h.has_value());
  EXPECT_NEAR(*h, 0.5, 1e-12);
  EXPECT_FALSE(map.height_at(3.0, 1.0).has_value());
}
