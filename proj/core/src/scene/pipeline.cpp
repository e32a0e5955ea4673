#include "rheo/scene/pipeline.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rheo/allometry/raster.hpp"
#include "rheo/error.hpp"
#include "rheo/fab/export.hpp"
#include "rheo/fab/marching_cubes.hpp"
#include "rheo/fab/mesh_io.hpp"
#include "rheo/fab/slicer.hpp"
#include "rheo/fab/slope.hpp"
#include "rheo/field/voxel_grid.hpp"
#include "rheo/scene/build.hpp"

namespace rheo {

namespace {

namespace fs = std::filesystem;

constexpr Stage kOrder[] = {Stage::generate, Stage::accumulate, Stage::mesh, Stage::slice,
                            Stage::analyze};

std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_io(path.string(), "cannot open for reading");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_bytes(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_io(path.string(), "cannot open for writing");
  out << bytes;
  out.flush();
  if (!out) throw_io(path.string(), "write failed");
}

std::size_t budget_bytes(const Scene& scene) {
  return static_cast<std::size_t>(scene.fabrication.memory_budget_mb * 1024.0 * 1024.0);
}

// Lazily computed pipeline state; each stage pulls what it needs.
class Context {
 public:
  explicit Context(const Scene& scene) : scene_(scene) {}

  const SceneGeometry& geometry() {
    if (!geometry_) geometry_ = build_geometry(scene_);
    return *geometry_;
  }
  const std::optional<RasterField>& raster() {
    if (!raster_done_) {
      raster_ = build_raster(scene_, geometry());
      raster_done_ = true;
    }
    return raster_;
  }
  const ScalarField& body() {
    if (!body_) body_ = build_body(scene_, geometry(), raster());
    return *body_;
  }
  const VoxelGrid& body_grid() {
    if (!body_grid_) {
      const double h = scene_.fabrication.grid_spacing;
      body_grid_ = sample_grid(body(), sampling_box(body(), h), h, budget_bytes(scene_));
    }
    return *body_grid_;
  }
  const Mesh& mesh() {
    if (!mesh_) mesh_ = marching_cubes(body_grid());
    return *mesh_;
  }
  const LayerStack& stack() {
    if (!stack_) {
      const FabricationScene& f = scene_.fabrication;
      LayerStack s = slice_field(body(), sampling_box(body(), f.xy_resolution), f.layer_height,
                                 f.xy_resolution, budget_bytes(scene_));
      estimate_support(s, f.overhang_deg);
      stack_ = std::move(s);
    }
    return *stack_;
  }

 private:
  const Scene& scene_;
  std::optional<SceneGeometry> geometry_;
  std::optional<RasterField> raster_;
  bool raster_done_ = false;
  std::optional<ScalarField> body_;
  std::optional<VoxelGrid> body_grid_;
  std::optional<Mesh> mesh_;
  std::optional<LayerStack> stack_;
};

}  // namespace

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::generate: return "generate";
    case Stage::accumulate: return "accumulate";
    case Stage::mesh: return "mesh";
    case Stage::slice: return "slice";
    case Stage::analyze: return "analyze";
  }
  return "generate";
}

std::vector<Stage> all_stages() { return {std::begin(kOrder), std::end(kOrder)}; }

std::vector<Stage> parse_stages(std::string_view list) {
  std::vector<bool> want(std::size(kOrder), false);
  std::size_t pos = 0;
  bool any = false;
  while (pos <= list.size()) {
    std::size_t comma = list.find(',', pos);
    if (comma == std::string_view::npos) comma = list.size();
    std::string_view name = list.substr(pos, comma - pos);
    while (!name.empty() && name.front() == ' ') name.remove_prefix(1);
    while (!name.empty() && name.back() == ' ') name.remove_suffix(1);
    bool found = false;
    if (name == "all") {
      want.assign(want.size(), true);
      found = true;
    }
    for (std::size_t i = 0; i < std::size(kOrder) && !found; ++i) {
      if (name == to_string(kOrder[i])) {
        want[i] = true;
        found = true;
      }
    }
    if (!found) {
      throw_invalid_argument("--stage", "unknown stage '" + std::string(name) + "'");
    }
    any = true;
    pos = comma + 1;
  }
  if (!any) throw_invalid_argument("--stage", "empty stage list");
  std::vector<Stage> out;
  for (std::size_t i = 0; i < std::size(kOrder); ++i) {
    if (want[i]) out.push_back(kOrder[i]);
  }
  return out;
}

Scene remodel_step(const Scene& scene, const fs::path& raster_file) {
  RasterField r;
  try {
    r = load_raster(raster_file);
    validate(r, raster_file.string());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::input_format) throw;
    throw_input_format(e.path(), e.message());
  }
  Scene next = scene;
  next.raster = RasterScene{};
  next.raster.kind = RasterScene::Kind::file;
  next.raster.path = fs::absolute(raster_file).lexically_normal().string();
  return next;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string file_hash(const fs::path& path) { return fnv1a_hex(read_bytes(path)); }

PipelineResult run_pipeline(const Scene& scene, const std::vector<Stage>& stages, fs::path out_dir,
                            const LogFn& log) {
  validate(scene);
  if (out_dir.empty()) out_dir = scene.resolve(scene.output);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw_io(out_dir.string(), "cannot create output directory: " + ec.message());

  auto note = [&](const std::string& msg) {
    if (log) log(msg);
  };

  PipelineResult result;
  result.out_dir = out_dir;
  for (Stage s : kOrder) {
    for (Stage want : stages) {
      if (want == s) {
        result.stages.push_back(s);
        break;
      }
    }
  }

  std::string inputs = serialize_scene(scene);
  if (scene.raster.kind == RasterScene::Kind::file) inputs += read_bytes(scene.resolve(scene.raster.path));
  if (scene.shell.kind == ShellScene::Kind::mesh) inputs += read_bytes(scene.resolve(scene.shell.mesh_path));
  result.inputs_hash = fnv1a_hex(inputs);

  auto record = [&](const std::string& rel) {
    result.products.push_back({rel, file_hash(out_dir / rel)});
  };

  Context ctx(scene);
  for (Stage stage : result.stages) {
    const std::string name(to_string(stage));
    try {
      switch (stage) {
        case Stage::generate: {
          const SceneGeometry& g = ctx.geometry();
          note("generate: deck " + std::to_string(g.deck.rows) + "x" + std::to_string(g.deck.cols) +
               ", lattice " + std::to_string(g.lattice.spec.nx) + "x" +
               std::to_string(g.lattice.spec.nz) + " cells");
          export_mesh(g.deck.triangulate(), out_dir / "deck.obj", MeshFormat::obj);
          record("deck.obj");
          const double h = scene.fabrication.grid_spacing;
          VoxelGrid pre = sample_grid(g.preform, sampling_box(g.preform, h), h, budget_bytes(scene));
          save_vgrid(pre, out_dir / "preform.vgrid");
          record("preform.vgrid");
          break;
        }
        case Stage::accumulate: {
          if (ctx.raster()) {
            save_rast(*ctx.raster(), out_dir / "raster.rast");
            record("raster.rast");
          }
          const VoxelGrid& grid = ctx.body_grid();
          note("accumulate: body grid " + std::to_string(grid.dims[0]) + "x" +
               std::to_string(grid.dims[1]) + "x" + std::to_string(grid.dims[2]));
          save_vgrid(grid, out_dir / "body.vgrid");
          record("body.vgrid");
          break;
        }
        case Stage::mesh: {
          const Mesh& m = ctx.mesh();
          note("mesh: " + std::to_string(m.vertices.size()) + " vertices, " +
               std::to_string(m.triangles.size()) + " triangles");
          export_mesh(m, out_dir / "model.obj", MeshFormat::obj);
          record("model.obj");
          export_mesh(m, out_dir / "model.stl", MeshFormat::stl_ascii);
          record("model.stl");
          break;
        }
        case Stage::slice: {
          const LayerStack& st = ctx.stack();
          note("slice: " + std::to_string(st.layers.size()) + " layers");
          export_layers(st, out_dir / "layers", LayerFormat::svg);
          export_layers(st, out_dir / "layers", LayerFormat::toolpath_text);
          for (std::size_t k = 0; k < st.layers.size(); ++k) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "layers/layer_%04zu.svg", k);
            record(buf);
          }
          record("layers/svg_manifest.json");
          record("layers/toolpath.txt");
          record("layers/toolpath_manifest.json");
          break;
        }
        case Stage::analyze: {
          SlopeReport slopes = slope_report(ctx.geometry().deck, scene.fabrication.slope_threshold_pct);
          note("analyze: max slope " + std::to_string(slopes.max_slope_pct) + "%");
          write_bytes(out_dir / "report.json",
                      report_json(slopes, ctx.stack(), mesh_stats(ctx.mesh())));
          record("report.json");
          break;
        }
      }
    } catch (const Error& e) {
      throw Error(e.code(), name + ": " + e.path(), e.message());
    }
  }

  nlohmann::ordered_json manifest;
  manifest["inputs_hash"] = result.inputs_hash;
  nlohmann::ordered_json st = nlohmann::ordered_json::array();
  for (Stage s : result.stages) st.push_back(std::string(to_string(s)));
  manifest["stages"] = std::move(st);
  nlohmann::ordered_json prods = nlohmann::ordered_json::array();
  for (const Product& p : result.products) prods.push_back({{"path", p.path}, {"fnv1a", p.hash}});
  manifest["products"] = std::move(prods);
  write_bytes(out_dir / "manifest.json", manifest.dump(2) + "\n");
  return result;
}

}  // namespace rheo
