#include "rheo/scene/scene.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rheo/error.hpp"
#include "rheo/scene/build.hpp"

namespace rheo {

namespace {

using json = nlohmann::ordered_json;

std::string type_name(const json& j) { return j.type_name(); }

// Reads one JSON object, tracking which keys were consumed so leftovers can
// be reported as unknown.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw_validation(path_, "expected an object, got " + type_name(j_));
  }

  std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const json* get(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  void real(const std::string& key, double& out) {
    if (const json* v = get(key)) out = as_real(*v, at(key));
  }
  void integer(const std::string& key, int& out) {
    if (const json* v = get(key)) out = as_int(*v, at(key));
  }
  void text(const std::string& key, std::string& out) {
    if (const json* v = get(key)) out = as_text(*v, at(key));
  }
  void vec3(const std::string& key, Vec3& out) {
    if (const json* v = get(key)) out = as_vec3(*v, at(key));
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) throw_validation(at(it.key()), "unknown key");
    }
  }

  static double as_real(const json& v, const std::string& path) {
    if (!v.is_number()) throw_validation(path, "expected a number, got " + type_name(v));
    double d = v.get<double>();
    if (!std::isfinite(d)) throw_validation(path, "must be finite");
    return d;
  }
  static int as_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw_validation(path, "expected an integer, got " + type_name(v));
    auto n = v.get<long long>();
    if (n < -1000000000LL || n > 1000000000LL) throw_validation(path, "integer out of range");
    return static_cast<int>(n);
  }
  static std::string as_text(const json& v, const std::string& path) {
    if (!v.is_string()) throw_validation(path, "expected a string, got " + type_name(v));
    return v.get<std::string>();
  }
  static Vec3 as_vec3(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 3) throw_validation(path, "expected an array of 3 numbers");
    return {as_real(v[0], path + "[0]"), as_real(v[1], path + "[1]"), as_real(v[2], path + "[2]")};
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

template <typename E>
E enum_from(const std::string& text, const std::string& path,
            std::initializer_list<std::pair<const char*, E>> table) {
  std::string allowed;
  for (const auto& [name, value] : table) {
    if (text == name) return value;
    allowed += allowed.empty() ? "" : ", ";
    allowed += name;
  }
  throw_validation(path, "must be one of: " + allowed);
}

const char* curve_kind_name(CurveSpec::Kind k) {
  switch (k) {
    case CurveSpec::Kind::segment: return "segment";
    case CurveSpec::Kind::polyline: return "polyline";
    case CurveSpec::Kind::circle: return "circle";
    case CurveSpec::Kind::arc: return "arc";
  }
  return "segment";
}

CurveSpec parse_curve(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  CurveSpec c;
  std::string kind;
  const json* t = r.get("type");
  if (!t) throw_validation(r.at("type"), "required");
  kind = ObjectReader::as_text(*t, r.at("type"));
  c.kind = enum_from<CurveSpec::Kind>(kind, r.at("type"),
                                      {{"segment", CurveSpec::Kind::segment},
                                       {"polyline", CurveSpec::Kind::polyline},
                                       {"circle", CurveSpec::Kind::circle},
                                       {"arc", CurveSpec::Kind::arc}});
  if (c.kind == CurveSpec::Kind::segment || c.kind == CurveSpec::Kind::polyline) {
    const json* pts = r.get("points");
    if (!pts) throw_validation(r.at("points"), "required");
    if (!pts->is_array()) throw_validation(r.at("points"), "expected an array");
    for (std::size_t i = 0; i < pts->size(); ++i) {
      c.points.push_back(ObjectReader::as_vec3((*pts)[i], r.at("points") + "[" + std::to_string(i) + "]"));
    }
  } else {
    const json* center = r.get("center");
    if (!center) throw_validation(r.at("center"), "required");
    c.center = ObjectReader::as_vec3(*center, r.at("center"));
    r.real("radius", c.radius);
    if (c.kind == CurveSpec::Kind::arc) {
      r.real("start_deg", c.start_deg);
      r.real("end_deg", c.end_deg);
    }
  }
  r.finish();
  return c;
}

void parse_track(const json& j, TrackScene& t) {
  ObjectReader r(j, "track");
  r.vec3("origin", t.origin);
  r.vec3("forward", t.forward);
  r.vec3("up", t.up);
  if (const json* curves = r.get("curves")) {
    if (!curves->is_array()) throw_validation("track.curves", "expected an array");
    t.curves.clear();
    for (std::size_t i = 0; i < curves->size(); ++i) {
      t.curves.push_back(parse_curve((*curves)[i], "track.curves[" + std::to_string(i) + "]"));
    }
  }
  if (const json* keys = r.get("keys")) {
    if (!keys->is_array()) throw_validation("track.keys", "expected an array");
    t.keys.clear();
    for (std::size_t i = 0; i < keys->size(); ++i) {
      ObjectReader k((*keys)[i], "track.keys[" + std::to_string(i) + "]");
      KeySpec key;
      const json* kt = k.get("t");
      if (!kt) throw_validation(k.at("t"), "required");
      key.t = ObjectReader::as_real(*kt, k.at("t"));
      k.real("scale_z", key.scale_z);
      k.real("rotate_deg", key.rotate_deg);
      k.real("translate_y", key.translate_y);
      k.finish();
      t.keys.push_back(key);
    }
  }
  r.finish();
}

void parse_span(const json& j, SpanScene& s) {
  ObjectReader r(j, "span");
  r.vec3("direction", s.direction);
  r.real("length", s.length);
  r.integer("steps", s.steps);
  r.integer("samples_across", s.samples_across);
  if (const json* bend = r.get("bend")) {
    if (!bend->is_array()) throw_validation("span.bend", "expected an array of [u, degrees] pairs");
    s.bend.clear();
    for (std::size_t i = 0; i < bend->size(); ++i) {
      std::string p = "span.bend[" + std::to_string(i) + "]";
      const json& e = (*bend)[i];
      if (!e.is_array() || e.size() != 2) throw_validation(p, "expected [u, degrees]");
      s.bend.push_back({ObjectReader::as_real(e[0], p + "[0]"), ObjectReader::as_real(e[1], p + "[1]")});
    }
  }
  r.real("deck_thickness", s.deck_thickness);
  r.finish();
}

void parse_shell(const json& j, ShellScene& s) {
  ObjectReader r(j, "shell");
  std::string kind = "auto";
  r.text("type", kind);
  s.kind = enum_from<ShellScene::Kind>(kind, "shell.type",
                                       {{"auto", ShellScene::Kind::automatic},
                                        {"mesh", ShellScene::Kind::mesh}});
  if (s.kind == ShellScene::Kind::mesh) {
    const json* p = r.get("path");
    if (!p) throw_validation("shell.path", "required for a mesh shell");
    s.mesh_path = ObjectReader::as_text(*p, "shell.path");
  }
  r.real("ground_y", s.ground_y);
  r.finish();
}

void parse_lattice(const json& j, LatticeScene& l) {
  ObjectReader r(j, "lattice");
  r.real("cell", l.cell);
  r.real("pitch", l.pitch);
  r.real("phase_deg", l.phase_deg);
  std::string text;
  if (const json* v = r.get("handedness")) {
    l.handedness = enum_from<Handedness>(ObjectReader::as_text(*v, "lattice.handedness"),
                                         "lattice.handedness",
                                         {{"right", Handedness::right}, {"left", Handedness::left}});
  }
  if (const json* v = r.get("ruling")) {
    l.ruling = enum_from<Ruling>(ObjectReader::as_text(*v, "lattice.ruling"), "lattice.ruling",
                                 {{"two_sided", Ruling::two_sided}, {"one_sided", Ruling::one_sided}});
  }
  r.integer("sheets", l.sheets);
  r.real("thickness", l.thickness);
  if (const json* v = r.get("placement")) {
    l.placement = enum_from<LatticeScene::Placement>(
        ObjectReader::as_text(*v, "lattice.placement"), "lattice.placement",
        {{"fit", LatticeScene::Placement::fit}, {"explicit", LatticeScene::Placement::explicit_grid}});
  }
  r.vec3("origin", l.origin);
  if (const json* v = r.get("repeats")) {
    if (!v->is_array() || v->size() != 2) throw_validation("lattice.repeats", "expected [nx, nz]");
    l.repeats = {ObjectReader::as_int((*v)[0], "lattice.repeats[0]"),
                 ObjectReader::as_int((*v)[1], "lattice.repeats[1]")};
  }
  r.real("height", l.height);
  if (const json* v = r.get("mirror")) {
    l.mirror = enum_from<MirrorRule>(ObjectReader::as_text(*v, "lattice.mirror"), "lattice.mirror",
                                     {{"checkerboard", MirrorRule::checkerboard_mirror_x},
                                      {"none", MirrorRule::none}});
  }
  r.vec3("rotate_deg", l.rotate_deg);
  r.finish();
}

void parse_raster(const json& j, RasterScene& s) {
  ObjectReader r(j, "raster");
  std::string kind = "none";
  r.text("type", kind);
  s.kind = enum_from<RasterScene::Kind>(kind, "raster.type",
                                        {{"none", RasterScene::Kind::none},
                                         {"file", RasterScene::Kind::file},
                                         {"inverse_distance", RasterScene::Kind::inverse_distance}});
  if (s.kind == RasterScene::Kind::file) {
    const json* p = r.get("path");
    if (!p) throw_validation("raster.path", "required for a file raster");
    s.path = ObjectReader::as_text(*p, "raster.path");
  } else if (s.kind == RasterScene::Kind::inverse_distance) {
    r.real("c", s.c);
    r.real("r_cap", s.r_cap);
    if (const json* v = r.get("resolution")) {
      if (!v->is_array() || v->size() != 2) throw_validation("raster.resolution", "expected [w, h]");
      s.resolution = {ObjectReader::as_int((*v)[0], "raster.resolution[0]"),
                      ObjectReader::as_int((*v)[1], "raster.resolution[1]")};
    }
  }
  r.finish();
}

void parse_fabrication(const json& j, FabricationScene& f) {
  ObjectReader r(j, "fabrication");
  r.real("grid_spacing", f.grid_spacing);
  f.xy_resolution = f.grid_spacing;
  r.real("layer_height", f.layer_height);
  r.real("xy_resolution", f.xy_resolution);
  r.real("overhang_deg", f.overhang_deg);
  r.real("slope_threshold_pct", f.slope_threshold_pct);
  r.real("memory_budget_mb", f.memory_budget_mb);
  r.finish();
}

json vec_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

void require(bool ok, const std::string& path, const std::string& what) {
  if (!ok) throw_validation(path, what);
}

bool positive(double v) { return v > 0 && std::isfinite(v); }

}  // namespace

bool Scene::operator==(const Scene& o) const {
  return units == o.units && track == o.track && span == o.span && shell == o.shell &&
         lattice == o.lattice && raster == o.raster && alpha == o.alpha &&
         fabrication == o.fabrication && output == o.output;
}

std::filesystem::path Scene::resolve(const std::string& p) const {
  std::filesystem::path path(p);
  if (path.is_absolute() || base_dir.empty()) return path;
  return base_dir / path;
}

void validate(const Scene& s) {
  require(!s.units.empty(), "units", "must be a non-empty string");

  const TrackScene& t = s.track;
  require(!t.curves.empty(), "track.curves", "at least one curve required");
  for (std::size_t i = 0; i < t.curves.size(); ++i) {
    const CurveSpec& c = t.curves[i];
    std::string p = "track.curves[" + std::to_string(i) + "]";
    switch (c.kind) {
      case CurveSpec::Kind::segment:
        require(c.points.size() == 2, p + ".points", "a segment needs exactly 2 points");
        break;
      case CurveSpec::Kind::polyline:
        require(c.points.size() >= 2, p + ".points", "a polyline needs at least 2 points");
        break;
      case CurveSpec::Kind::arc:
        require(c.end_deg > c.start_deg && c.end_deg - c.start_deg <= 360.0, p + ".end_deg",
                "arc span must be in (0, 360]");
        [[fallthrough]];
      case CurveSpec::Kind::circle:
        require(positive(c.radius), p + ".radius", "must be > 0");
        break;
    }
  }
  require(!t.keys.empty(), "track.keys", "at least the t = 0 key is required");
  for (std::size_t i = 0; i < t.keys.size(); ++i) {
    require(positive(t.keys[i].scale_z), "track.keys[" + std::to_string(i) + "].scale_z",
            "must be > 0");
  }

  const SpanScene& sp = s.span;
  require(std::hypot(sp.direction.x, sp.direction.z) > 1e-12, "span.direction",
          "must have a nonzero horizontal component");
  require(positive(sp.length), "span.length", "must be > 0");
  require(sp.steps >= 2 && sp.steps <= 100000, "span.steps", "must be in [2, 100000]");
  require(sp.samples_across >= 2 && sp.samples_across <= 100000, "span.samples_across",
          "must be in [2, 100000]");
  for (std::size_t i = 0; i < sp.bend.size(); ++i) {
    std::string p = "span.bend[" + std::to_string(i) + "]";
    require(sp.bend[i][0] >= 0 && sp.bend[i][0] <= 1, p + "[0]", "u must be in [0, 1]");
    require(i == 0 || sp.bend[i][0] > sp.bend[i - 1][0], p + "[0]", "u must be strictly increasing");
    require(std::abs(sp.bend[i][1]) < 90, p + "[1]", "angle must be in (-90, 90) degrees");
  }
  require(positive(sp.deck_thickness), "span.deck_thickness", "must be > 0");

  if (s.shell.kind == ShellScene::Kind::mesh) {
    require(std::filesystem::is_regular_file(s.resolve(s.shell.mesh_path)), "shell.path",
            "file not found: " + s.resolve(s.shell.mesh_path).string());
  }

  const LatticeScene& l = s.lattice;
  require(positive(l.cell), "lattice.cell", "must be > 0");
  require(positive(l.pitch), "lattice.pitch", "must be > 0");
  require(positive(l.thickness), "lattice.thickness", "must be > 0");
  require(l.thickness < l.cell / 2, "lattice.thickness", "must be below half the cell size");
  require(l.sheets == 1 || l.sheets == 2, "lattice.sheets", "must be 1 or 2");
  require(l.repeats[0] >= 1 && l.repeats[1] >= 1, "lattice.repeats", "must be >= 1");
  require(positive(l.height), "lattice.height", "must be > 0");

  const RasterScene& r = s.raster;
  if (r.kind == RasterScene::Kind::file) {
    require(std::filesystem::is_regular_file(s.resolve(r.path)), "raster.path",
            "file not found: " + s.resolve(r.path).string());
  } else if (r.kind == RasterScene::Kind::inverse_distance) {
    require(positive(r.c), "raster.c", "must be > 0");
    require(positive(r.r_cap), "raster.r_cap", "must be > 0");
    require(r.resolution[0] >= 1 && r.resolution[1] >= 1 && r.resolution[0] <= 8192 &&
                r.resolution[1] <= 8192,
            "raster.resolution", "must be in [1, 8192]");
  }
  require(s.alpha >= 0 && std::isfinite(s.alpha), "accumulate.alpha", "must be >= 0");

  const FabricationScene& f = s.fabrication;
  require(positive(f.grid_spacing), "fabrication.grid_spacing", "must be > 0");
  require(positive(f.layer_height), "fabrication.layer_height", "must be > 0");
  require(positive(f.xy_resolution), "fabrication.xy_resolution", "must be > 0");
  require(f.overhang_deg > 0 && f.overhang_deg < 90, "fabrication.overhang_deg",
          "must be in (0, 90)");
  require(positive(f.slope_threshold_pct), "fabrication.slope_threshold_pct", "must be > 0");
  require(positive(f.memory_budget_mb), "fabrication.memory_budget_mb", "must be > 0");
  require(!s.output.empty(), "output", "must be a non-empty path");

  // Delegate geometric checks (plane membership, frame, key order).
  try {
    validate_track(make_track(s.track), "track");
  } catch (const Error& e) {
    if (e.code() == ErrorCode::validation) throw;
    throw_validation(e.path(), e.message());
  }
}

Scene parse_scene(std::string_view text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw_input_format("scene:" + std::to_string(line) + ":" + std::to_string(col),
                       "JSON syntax error");
  }

  Scene s;
  s.base_dir = base_dir;
  ObjectReader r(root, "");
  r.text("units", s.units);
  if (const json* v = r.get("track")) parse_track(*v, s.track);
  if (const json* v = r.get("span")) parse_span(*v, s.span);
  if (const json* v = r.get("shell")) parse_shell(*v, s.shell);
  if (const json* v = r.get("lattice")) parse_lattice(*v, s.lattice);
  if (const json* v = r.get("raster")) parse_raster(*v, s.raster);
  if (const json* v = r.get("accumulate")) {
    ObjectReader a(*v, "accumulate");
    a.real("alpha", s.alpha);
    a.finish();
  }
  if (const json* v = r.get("fabrication")) parse_fabrication(*v, s.fabrication);
  r.text("output", s.output);
  r.finish();
  validate(s);
  return s;
}

Scene load_scene(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_io(path.string(), "cannot open scene file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_scene(ss.str(), path.parent_path());
  } catch (const Error& e) {
    if (e.path().rfind("scene:", 0) == 0) {
      throw Error(e.code(), path.string() + e.path().substr(5), e.message());
    }
    throw;
  }
}

std::string serialize_scene(const Scene& s) {
  json root;
  root["units"] = s.units;

  json curves = json::array();
  for (const CurveSpec& c : s.track.curves) {
    json jc;
    jc["type"] = curve_kind_name(c.kind);
    if (c.kind == CurveSpec::Kind::segment || c.kind == CurveSpec::Kind::polyline) {
      json pts = json::array();
      for (const Point3& p : c.points) pts.push_back(vec_json(p));
      jc["points"] = std::move(pts);
    } else {
      jc["center"] = vec_json(c.center);
      jc["radius"] = c.radius;
      if (c.kind == CurveSpec::Kind::arc) {
        jc["start_deg"] = c.start_deg;
        jc["end_deg"] = c.end_deg;
      }
    }
    curves.push_back(std::move(jc));
  }
  json keys = json::array();
  for (const KeySpec& k : s.track.keys) {
    keys.push_back({{"t", k.t},
                    {"scale_z", k.scale_z},
                    {"rotate_deg", k.rotate_deg},
                    {"translate_y", k.translate_y}});
  }
  root["track"] = {{"origin", vec_json(s.track.origin)},
                   {"forward", vec_json(s.track.forward)},
                   {"up", vec_json(s.track.up)},
                   {"curves", std::move(curves)},
                   {"keys", std::move(keys)}};

  json bend = json::array();
  for (const auto& b : s.span.bend) bend.push_back(json::array({b[0], b[1]}));
  root["span"] = {{"direction", vec_json(s.span.direction)},
                  {"length", s.span.length},
                  {"steps", s.span.steps},
                  {"samples_across", s.span.samples_across},
                  {"bend", std::move(bend)},
                  {"deck_thickness", s.span.deck_thickness}};

  json shell;
  shell["type"] = s.shell.kind == ShellScene::Kind::mesh ? "mesh" : "auto";
  if (s.shell.kind == ShellScene::Kind::mesh) shell["path"] = s.shell.mesh_path;
  shell["ground_y"] = s.shell.ground_y;
  root["shell"] = std::move(shell);

  const LatticeScene& l = s.lattice;
  root["lattice"] = {
      {"cell", l.cell},
      {"pitch", l.pitch},
      {"phase_deg", l.phase_deg},
      {"handedness", l.handedness == Handedness::right ? "right" : "left"},
      {"ruling", l.ruling == Ruling::two_sided ? "two_sided" : "one_sided"},
      {"sheets", l.sheets},
      {"thickness", l.thickness},
      {"placement", l.placement == LatticeScene::Placement::fit ? "fit" : "explicit"},
      {"origin", vec_json(l.origin)},
      {"repeats", json::array({l.repeats[0], l.repeats[1]})},
      {"height", l.height},
      {"mirror", l.mirror == MirrorRule::none ? "none" : "checkerboard"},
      {"rotate_deg", vec_json(l.rotate_deg)}};

  json raster;
  switch (s.raster.kind) {
    case RasterScene::Kind::none:
      raster["type"] = "none";
      break;
    case RasterScene::Kind::file:
      raster["type"] = "file";
      raster["path"] = s.raster.path;
      break;
    case RasterScene::Kind::inverse_distance:
      raster["type"] = "inverse_distance";
      raster["c"] = s.raster.c;
      raster["r_cap"] = s.raster.r_cap;
      raster["resolution"] = json::array({s.raster.resolution[0], s.raster.resolution[1]});
      break;
  }
  root["raster"] = std::move(raster);
  root["accumulate"] = {{"alpha", s.alpha}};

  const FabricationScene& f = s.fabrication;
  root["fabrication"] = {{"grid_spacing", f.grid_spacing},
                         {"layer_height", f.layer_height},
                         {"xy_resolution", f.xy_resolution},
                         {"overhang_deg", f.overhang_deg},
                         {"slope_threshold_pct", f.slope_threshold_pct},
                         {"memory_budget_mb", f.memory_budget_mb}};
  root["output"] = s.output;
  return root.dump(2) + "\n";
}

}  // namespace rheo
