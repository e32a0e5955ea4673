#include "rheo/scene/build.hpp"

#include <cmath>
#include <numbers>

#include "rheo/allometry/accumulate.hpp"
#include "rheo/error.hpp"
#include "rheo/fab/mesh_io.hpp"
#include "rheo/field/mesh_distance.hpp"
#include "rheo/field/ops.hpp"
#include "rheo/span/preform.hpp"

namespace rheo {

namespace {

double rad(double deg) { return deg * (std::numbers::pi / 180.0); }

}  // namespace

SectionTrack make_track(const TrackScene& t) {
  SectionTrack track;
  track.base.frame.origin = t.origin;
  track.base.frame.forward = t.forward;
  track.base.frame.up = t.up;
  const Vec3 side = track.base.frame.side();
  for (const CurveSpec& c : t.curves) {
    switch (c.kind) {
      case CurveSpec::Kind::segment:
        track.base.curves.push_back(
            Segment{c.points.size() > 0 ? c.points[0] : Point3{}, c.points.size() > 1 ? c.points[1] : Point3{}});
        break;
      case CurveSpec::Kind::polyline:
        track.base.curves.push_back(Polyline{c.points});
        break;
      case CurveSpec::Kind::circle:
        track.base.curves.push_back(Circle{c.center, c.radius, side, t.forward});
        break;
      case CurveSpec::Kind::arc:
        track.base.curves.push_back(
            Arc{c.center, c.radius, side, t.forward, rad(c.start_deg), rad(c.end_deg)});
        break;
    }
  }
  for (const KeySpec& k : t.keys) {
    track.keys.push_back({k.t, k.scale_z, rad(k.rotate_deg), k.translate_y});
  }
  return track;
}

SpanSpec make_span(const Scene& scene) {
  SpanSpec spec;
  spec.track = make_track(scene.track);
  spec.direction = scene.span.direction;
  spec.span_length = scene.span.length;
  spec.steps = scene.span.steps;
  if (!scene.span.bend.empty()) {
    std::vector<std::pair<double, double>> knots;
    for (const auto& b : scene.span.bend) knots.emplace_back(b[0], rad(b[1]));
    spec.bend_profile = PiecewiseLinear(std::move(knots));
  }
  return spec;
}

LatticePlacement place_lattice(const LatticeScene& l, const Box3& target) {
  LatticePlacement out;
  const Vec3& r = l.rotate_deg;
  if (r.x != 0.0 || r.y != 0.0 || r.z != 0.0) {
    const Point3 c = target.center();
    Affine3 rot = compose(Affine3::rotate_z(rad(r.z)),
                          compose(Affine3::rotate_y(rad(r.y)), Affine3::rotate_x(rad(r.x))));
    out.post = compose(Affine3::translate(c), compose(rot, Affine3::translate(-c)));
  }

  TileSpec& tile = out.spec.tile;
  tile.cell.side = l.cell;
  tile.thickness = l.thickness;
  tile.sheets = l.sheets;
  HelicoidSpec& h = tile.helicoid;
  h.pitch = l.pitch;
  h.phase = rad(l.phase_deg);
  h.handedness = l.handedness;
  h.ruling = l.ruling;
  // Reach the cell corners so the prism, not the ruling, trims the sheet.
  h.r_max = l.cell * std::numbers::sqrt2 / 2 + l.thickness;
  out.spec.mirror = l.mirror;

  if (l.placement == LatticeScene::Placement::explicit_grid) {
    h.axis_x = l.origin.x;
    h.axis_z = l.origin.z;
    tile.cell.y_min = l.origin.y;
    tile.cell.y_max = l.origin.y + l.height;
    out.spec.nx = l.repeats[0];
    out.spec.nz = l.repeats[1];
  } else {
    const Affine3 inv = out.post.inverse();
    Box3 local;
    for (int n = 0; n < 8; ++n) {
      local.expand(inv.apply({n & 1 ? target.hi.x : target.lo.x, n & 2 ? target.hi.y : target.lo.y,
                              n & 4 ? target.hi.z : target.lo.z}));
    }
    const Vec3 e = local.extent();
    out.spec.nx = std::max(1, static_cast<int>(std::ceil(e.x / l.cell - 1e-9)));
    out.spec.nz = std::max(1, static_cast<int>(std::ceil(e.z / l.cell - 1e-9)));
    const Point3 c = local.center();
    h.axis_x = c.x - 0.5 * l.cell * (out.spec.nx - 1);
    h.axis_z = c.z - 0.5 * l.cell * (out.spec.nz - 1);
    tile.cell.y_min = local.lo.y;
    tile.cell.y_max = local.hi.y;
  }
  validate(out.spec, "lattice");
  return out;
}

ScalarField lattice_field(const LatticePlacement& placement) {
  ScalarField f = tile_lattice(placement.spec);
  if (placement.post == Affine3::identity()) return f;
  return transform_field(f, placement.post);
}

SceneGeometry build_geometry(const Scene& scene) {
  SceneGeometry g;
  SpanSpec span = make_span(scene);
  g.sections = freeze_sections(span);
  DeckSurface deck = loft_deck(g.sections, scene.span.samples_across);
  g.deck = scene.span.bend.empty() ? std::move(deck) : bend_edges(deck, span.bend_profile);

  const Box3 db = g.deck.bounds();
  const double ground = scene.shell.ground_y;
  if (!(ground < db.hi.y)) {
    throw_validation("shell.ground_y", "must lie below the highest deck point");
  }
  g.structure_box = Box3{{db.lo.x, ground, db.lo.z}, {db.hi.x, db.hi.y, db.hi.z}};

  g.lattice = place_lattice(scene.lattice, g.structure_box);
  ShellSpec shell;
  shell.ground_y = ground;
  if (scene.shell.kind == ShellScene::Kind::mesh) {
    shell.user = mesh_signed_field(load_obj(scene.resolve(scene.shell.mesh_path)));
  }
  g.preform = structural_preform(g.deck, scene.span.deck_thickness, shell, lattice_field(g.lattice));

  g.projection = span_projection(g.deck, scene.span.direction);
  Vec3 axis = normalized(Vec3{scene.span.direction.x, 0.0, scene.span.direction.z});
  g.contacts.push_back(half_space(g.sections.front().frame.origin, -axis));
  g.contacts.push_back(half_space(g.sections.back().frame.origin, axis));
  return g;
}

std::optional<RasterField> build_raster(const Scene& scene, const SceneGeometry& g) {
  switch (scene.raster.kind) {
    case RasterScene::Kind::none:
      return std::nullopt;
    case RasterScene::Kind::file: {
      RasterField r = load_raster(scene.resolve(scene.raster.path));
      validate(r, scene.raster.path);
      return r;
    }
    case RasterScene::Kind::inverse_distance: {
      auto heights = std::make_shared<DeckHeightMap>(g.deck);
      const UvProjection proj = g.projection;
      UvSurface surface = [heights, proj](double u, double v) {
        Point3 p = unproject_uv(proj, u, v);
        if (auto y = heights->height_at(p.x, p.z)) p.y = *y;
        return p;
      };
      return inverse_distance_raster(g.contacts, g.projection, surface, scene.raster.resolution[0],
                                     scene.raster.resolution[1], scene.raster.c,
                                     scene.raster.r_cap);
    }
  }
  return std::nullopt;
}

ScalarField build_body(const Scene& scene, const SceneGeometry& g,
                       const std::optional<RasterField>& raster) {
  if (!raster || scene.alpha == 0.0) return g.preform;
  return accumulate(g.preform, *raster, g.projection, scene.alpha, scene.lattice.thickness);
}

Box3 sampling_box(const ScalarField& field, double spacing) {
  if (!field.bounds()) throw_invalid_argument("field", "unbounded field cannot be sampled");
  return field.bounds()->padded(2 * spacing);
}

}  // namespace rheo
