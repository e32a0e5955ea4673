#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <nlohmann/json.hpp>

#include "rheo/allometry/raster.hpp"
#include "rheo/fab/mesh_io.hpp"
#include "rheo/field/voxel_grid.hpp"
#include "rheo/geometry/mesh.hpp"
#include "rheo/scene/build.hpp"
#include "rheo/scene/pipeline.hpp"
#include "rheo/scene/scene.hpp"
#include "test_support.hpp"

using namespace rheo;
namespace fs = std::filesystem;

namespace {

fs::path packaged(const std::string& name) { return fs::path(RHEO_SOURCE_DIR) / "scenes" / name; }

// A coarser copy of the first packaged scene, so pipeline tests stay quick.
Scene small_scene() {
  Scene s = load_scene(packaged("deney1.json"));
  s.fabrication.grid_spacing = 0.125;
  s.fabrication.xy_resolution = 0.125;
  s.fabrication.layer_height = 0.0625;
  return s;
}

Error error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  throw std::runtime_error("expected rheo::Error");
}

struct CliResult {
  int code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args, const fs::path& log) {
  std::string cmd = std::string("\"") + RHEO_CLI_PATH + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  int status = std::system(cmd.c_str());
  CliResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.output = test::slurp(log);
  return r;
}

std::map<std::string, std::string> tree_bytes(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), dir).string()] = test::slurp(e.path());
  }
  return out;
}

}  // namespace

TEST(SceneParse, EmptyObjectGivesDefaults) {
  Scene s = parse_scene("{}");
  EXPECT_EQ(s, Scene{});
  EXPECT_EQ(s.units, "m");
  EXPECT_EQ(s.lattice.cell, 1.0);
  EXPECT_EQ(s.lattice.thickness, 0.1);
  EXPECT_EQ(s.fabrication.overhang_deg, 45.0);
  EXPECT_EQ(s.fabrication.slope_threshold_pct, 50.0);
  EXPECT_EQ(s.raster.kind, RasterScene::Kind::none);
  EXPECT_EQ(s.alpha, 0.0);
}

TEST(SceneParse, XyResolutionFollowsGridSpacing) {
  Scene s = parse_scene(R"({"fabrication": {"grid_spacing": 0.05}})");
  EXPECT_EQ(s.fabrication.xy_resolution, 0.05);
  Scene t = parse_scene(R"({"fabrication": {"grid_spacing": 0.05, "xy_resolution": 0.02}})");
  EXPECT_EQ(t.fabrication.xy_resolution, 0.02);
}

TEST(SceneParse, NegativeThicknessNamesField) {
  Error e = error_of([] { (void)parse_scene(R"({"lattice": {"thickness": -1}})"); });
  EXPECT_EQ(e.code(), ErrorCode::validation);
  EXPECT_EQ(e.path(), "lattice.thickness");
  Error thick = error_of([] { (void)parse_scene(R"({"lattice": {"cell": 1, "thickness": 0.6}})"); });
  EXPECT_EQ(thick.path(), "lattice.thickness");
}

TEST(SceneParse, UnknownKeyRejected) {
  Error e = error_of([] { (void)parse_scene(R"({"lattice": {"colour": 3}})"); });
  EXPECT_EQ(e.code(), ErrorCode::validation);
  EXPECT_EQ(e.path(), "lattice.colour");
  Error top = error_of([] { (void)parse_scene(R"({"extra": true})"); });
  EXPECT_EQ(top.path(), "extra");
}

TEST(SceneParse, WrongTypeRejected) {
  Error e = error_of([] { (void)parse_scene(R"({"span": {"steps": "many"}})"); });
  EXPECT_EQ(e.code(), ErrorCode::validation);
  EXPECT_EQ(e.path(), "span.steps");
  Error nested = error_of([] { (void)parse_scene(R"({"track": {"keys": [{"t": 0}, {"t": 1, "scale_z": -2}]}})"); });
  EXPECT_EQ(nested.path(), "track.keys[1].scale_z");
}

TEST(SceneParse, SyntaxErrorHasLineAndColumn) {
  Error e = error_of([] { (void)parse_scene("{\n  \"alpha\": 0.5,\n  oops\n}"); });
  EXPECT_EQ(e.code(), ErrorCode::input_format);
  EXPECT_EQ(e.path().rfind("scene:3:", 0), 0u) << e.path();
  auto dir = test::scratch_dir("syntax");
  test::spit(dir / "bad.json", "{\"alpha\": }");
  Error f = error_of([&] { (void)load_scene(dir / "bad.json"); });
  EXPECT_EQ(f.code(), ErrorCode::input_format);
  EXPECT_NE(f.path().find("bad.json:1:"), std::string::npos) << f.path();
}

TEST(SceneParse, MissingFiles) {
  EXPECT_EQ(test::error_code_of([] { (void)load_scene("/nonexistent/scene.json"); }), ErrorCode::io);
  Error e = error_of([] { (void)parse_scene(R"({"raster": {"type": "file", "path": "nope.pgm"}})"); });
  EXPECT_EQ(e.code(), ErrorCode::validation);
  EXPECT_EQ(e.path(), "raster.path");
  Error m = error_of([] { (void)parse_scene(R"({"shell": {"type": "mesh", "path": "nope.obj"}})"); });
  EXPECT_EQ(m.path(), "shell.path");
}

TEST(SceneParse, RelativePathsResolveAgainstSceneFile) {
  auto dir = test::scratch_dir("relative");
  test::spit(dir / "r.rast", "RAST 1 1\n0.5\n");
  test::spit(dir / "s.json", R"({"raster": {"type": "file", "path": "r.rast"}, "accumulate": {"alpha": 1}})");
  Scene s = load_scene(dir / "s.json");
  EXPECT_EQ(s.resolve(s.raster.path), dir / "r.rast");
}

TEST(SceneParse, RoundTripIsIdentity) {
  for (const char* name : {"deney1.json", "deney2.json", "deney3.json"}) {
    Scene a = load_scene(packaged(name));
    Scene b = parse_scene(serialize_scene(a), a.base_dir);
    EXPECT_EQ(a, b) << name;
    EXPECT_EQ(serialize_scene(a), serialize_scene(b));
  }
  Scene d = parse_scene("{}");
  EXPECT_EQ(parse_scene(serialize_scene(d)), d);
}

TEST(SceneParse, SerializedSceneIsComplete) {
  auto j = nlohmann::json::parse(serialize_scene(Scene{}));
  for (const char* key : {"units", "track", "span", "shell", "lattice", "raster", "accumulate", "fabrication", "output"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["lattice"]["thickness"], 0.1);
}

TEST(Stages, Parsing) {
  EXPECT_EQ(parse_stages("all"), all_stages());
  EXPECT_EQ(parse_stages("mesh,generate"), (std::vector<Stage>{Stage::generate, Stage::mesh}));
  EXPECT_EQ(test::error_code_of([] { (void)parse_stages("generate,bake"); }), ErrorCode::invalid_argument);
  EXPECT_EQ(test::error_code_of([] { (void)parse_stages(""); }), ErrorCode::invalid_argument);
}

TEST(Pipeline, GenerateAndMeshGiveWatertightModel) {
  auto dir = test::scratch_dir("gen_mesh");
  PipelineResult r = run_pipeline(load_scene(packaged("deney1.json")), {Stage::generate, Stage::mesh}, dir);
  EXPECT_EQ(r.stages, (std::vector<Stage>{Stage::generate, Stage::mesh}));
  Mesh m = load_obj(dir / "model.obj");
  EXPECT_FALSE(m.empty());
  EXPECT_TRUE(is_watertight(m));
  EXPECT_GT(enclosed_volume(m), 0.0);
  EXPECT_TRUE(fs::exists(dir / "manifest.json"));
  EXPECT_FALSE(fs::exists(dir / "report.json"));
}

TEST(Pipeline, ZeroAlphaMatchesNoRaster) {
  Scene a = small_scene();
  a.alpha = 0.0;
  Scene b = small_scene();
  b.raster = RasterScene{};
  auto da = test::scratch_dir("alpha0"), db = test::scratch_dir("noraster");
  run_pipeline(a, {Stage::mesh}, da);
  run_pipeline(b, {Stage::mesh}, db);
  EXPECT_EQ(test::slurp(da / "model.obj"), test::slurp(db / "model.obj"));
  EXPECT_EQ(test::slurp(da / "model.stl"), test::slurp(db / "model.stl"));
}

TEST(Pipeline, RerunIsByteIdentical) {
  Scene s = small_scene();
  auto d1 = test::scratch_dir("rerun1"), d2 = test::scratch_dir("rerun2");
  PipelineResult r1 = run_pipeline(s, all_stages(), d1);
  PipelineResult r2 = run_pipeline(s, all_stages(), d2);
  EXPECT_EQ(test::slurp(d1 / "manifest.json"), test::slurp(d2 / "manifest.json"));
  EXPECT_EQ(tree_bytes(d1), tree_bytes(d2));
  ASSERT_EQ(r1.products.size(), r2.products.size());
  for (const auto& p : r1.products) EXPECT_EQ(file_hash(d1 / p.path), p.hash) << p.path;
  auto report = nlohmann::json::parse(test::slurp(d1 / "report.json"));
  EXPECT_TRUE(report.contains("slope"));
  EXPECT_TRUE(report.contains("support"));
}

TEST(Pipeline, ManifestHashesInputs) {
  Scene s = small_scene();
  auto d1 = test::scratch_dir("hash1"), d2 = test::scratch_dir("hash2");
  PipelineResult a = run_pipeline(s, {Stage::generate}, d1);
  s.lattice.phase_deg = 30;
  PipelineResult b = run_pipeline(s, {Stage::generate}, d2);
  EXPECT_NE(a.inputs_hash, b.inputs_hash);
  auto manifest = nlohmann::json::parse(test::slurp(d1 / "manifest.json"));
  EXPECT_EQ(manifest["inputs_hash"], a.inputs_hash);
  EXPECT_EQ(manifest["stages"], nlohmann::json::array({"generate"}));
}

TEST(Pipeline, StageErrorsNameTheStage) {
  Scene s = small_scene();
  s.fabrication.memory_budget_mb = 0.01;
  Error e = error_of([&] { (void)run_pipeline(s, {Stage::generate}, test::scratch_dir("budget")); });
  EXPECT_EQ(e.code(), ErrorCode::resource_limit);
  EXPECT_EQ(e.path().rfind("generate: ", 0), 0u) << e.path();
}

TEST(Remodel, PreviousRasterReproducesGeometry) {
  Scene s = small_scene();
  auto first = test::scratch_dir("remodel_first");
  run_pipeline(s, {Stage::accumulate, Stage::mesh}, first);
  Scene again = remodel_step(s, first / "raster.rast");
  EXPECT_EQ(again.raster.kind, RasterScene::Kind::file);
  auto second = test::scratch_dir("remodel_second");
  run_pipeline(again, {Stage::accumulate, Stage::mesh}, second);
  EXPECT_EQ(test::slurp(first / "body.vgrid"), test::slurp(second / "body.vgrid"));
  EXPECT_EQ(test::slurp(first / "model.obj"), test::slurp(second / "model.obj"));
}

TEST(Remodel, ZeroRasterMatchesZeroAlpha) {
  Scene s = small_scene();
  auto dir = test::scratch_dir("remodel_zero");
  save_rast(RasterField::filled(16, 8, 0.0), dir / "zeros.rast");
  Scene zero = remodel_step(s, dir / "zeros.rast");
  Scene off = s;
  off.alpha = 0.0;
  run_pipeline(zero, {Stage::mesh}, dir / "a");
  run_pipeline(off, {Stage::mesh}, dir / "b");
  EXPECT_EQ(test::slurp(dir / "a" / "model.obj"), test::slurp(dir / "b" / "model.obj"));
}

TEST(Remodel, IncreasingRastersNeverShrinkVolume) {
  Scene s = small_scene();
  auto dir = test::scratch_dir("remodel_grow");
  double previous = 0.0;
  for (int step = 0; step < 3; ++step) {
    auto file = dir / ("r" + std::to_string(step) + ".rast");
    save_rast(RasterField::filled(8, 8, 0.3 * step), file);
    auto out = dir / std::to_string(step);
    run_pipeline(remodel_step(s, file), {Stage::accumulate}, out);
    double volume = negative_volume(load_vgrid(out / "body.vgrid"));
    EXPECT_GE(volume, previous);
    previous = volume;
  }
}

TEST(Remodel, BadRasterIsInputFormat) {
  auto dir = test::scratch_dir("remodel_bad");
  test::spit(dir / "bad.rast", "RAST 2 2\n1 2\n");
  EXPECT_EQ(test::error_code_of([&] { (void)remodel_step(Scene{}, dir / "bad.rast"); }), ErrorCode::input_format);
  EXPECT_EQ(test::error_code_of([&] { (void)remodel_step(Scene{}, dir / "missing.rast"); }),
            ErrorCode::input_format);
}

TEST(Build, GeometryMatchesScene) {
  Scene s = load_scene(packaged("deney1.json"));
  SceneGeometry g = build_geometry(s);
  EXPECT_EQ(g.sections.size(), static_cast<std::size_t>(s.span.steps));
  EXPECT_EQ(g.deck.rows, s.span.steps);
  EXPECT_EQ(g.deck.cols, s.span.samples_across);
  EXPECT_EQ(g.structure_box.lo.y, s.shell.ground_y);
  EXPECT_EQ(g.contacts.size(), 2u);
  auto raster = build_raster(s, g);
  ASSERT_TRUE(raster.has_value());
  EXPECT_EQ(raster->width, s.raster.resolution[0]);
  EXPECT_GE(raster->min_value(), 0.0);
  EXPECT_LE(raster->max_value(), 1.0);
}

TEST(Build, RotatedLatticeKeepsStructureBoxCovered) {
  Scene s = load_scene(packaged("deney2.json"));
  SceneGeometry g = build_geometry(s);
  EXPECT_FALSE(g.lattice.post == Affine3::identity());
  ScalarField lattice = lattice_field(g.lattice);
  ASSERT_TRUE(lattice.bounds().has_value());
  Box3 b = *lattice.bounds();
  EXPECT_LE(b.lo.x, g.structure_box.lo.x + 1e-9);
  EXPECT_GE(b.hi.z, g.structure_box.hi.z - 1e-9);
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    if (std::string(RHEO_CLI_PATH).empty()) GTEST_SKIP() << "CLI not built";
    dir_ = test::scratch_dir(::testing::UnitTest::GetInstance()->current_test_info()->name());
  }
  fs::path dir_;
};

TEST_F(Cli, ValidateMalformedSceneExitsTwo) {
  test::spit(dir_ / "bad.json", R"({"lattice": {"thickness": -1}})");
  CliResult r = run_cli("validate --scene \"" + (dir_ / "bad.json").string() + "\"", dir_ / "log");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.output.find("lattice.thickness"), std::string::npos) << r.output;
  EXPECT_NE(r.output.find("validation"), std::string::npos) << r.output;
}

TEST_F(Cli, ValidatePackagedScenes) {
  for (const char* name : {"deney1.json", "deney2.json", "deney3.json"}) {
    CliResult r = run_cli("validate --scene \"" + packaged(name).string() + "\"", dir_ / "log");
    EXPECT_EQ(r.code, 0) << r.output;
  }
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("validate --scene /nonexistent.json", dir_ / "log").code, 3);
  EXPECT_EQ(run_cli("validate", dir_ / "log").code, 2);
  EXPECT_EQ(run_cli("bogus", dir_ / "log").code, 2);
  EXPECT_EQ(run_cli("run --scene x.json --threads 0", dir_ / "log").code, 2);
  Scene s = small_scene();
  s.fabrication.memory_budget_mb = 0.01;
  test::spit(dir_ / "tiny.json", serialize_scene(s));
  CliResult r = run_cli("run --scene \"" + (dir_ / "tiny.json").string() + "\" --out \"" +
                            (dir_ / "out").string() + "\"",
                        dir_ / "log");
  EXPECT_EQ(r.code, 4) << r.output;
  EXPECT_NE(r.output.find("resource_limit"), std::string::npos) << r.output;
}

TEST_F(Cli, RunWritesReport) {
  CliResult r = run_cli("run --scene \"" + packaged("deney1.json").string() + "\" --out \"" +
                            (dir_ / "out").string() + "\"",
                        dir_ / "log");
  EXPECT_EQ(r.code, 0) << r.output;
  ASSERT_TRUE(fs::exists(dir_ / "out" / "report.json"));
  auto report = nlohmann::json::parse(test::slurp(dir_ / "out" / "report.json"));
  EXPECT_TRUE(report["mesh"]["watertight"].get<bool>());
}

TEST_F(Cli, StageSubsetAndRasterOverride) {
  save_rast(RasterField::filled(4, 4, 0.5), dir_ / "r.rast");
  test::spit(dir_ / "s.json", serialize_scene(small_scene()));
  CliResult r = run_cli("run --scene \"" + (dir_ / "s.json").string() + "\" --stage accumulate --raster \"" +
                            (dir_ / "r.rast").string() + "\" --out \"" + (dir_ / "out").string() + "\"",
                        dir_ / "log");
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_TRUE(fs::exists(dir_ / "out" / "body.vgrid"));
  EXPECT_FALSE(fs::exists(dir_ / "out" / "model.obj"));
  EXPECT_EQ(load_raster(dir_ / "out" / "raster.rast"), RasterField::filled(4, 4, 0.5));
}

TEST_F(Cli, ThreadCountDoesNotChangeBytes) {
  test::spit(dir_ / "s.json", serialize_scene(small_scene()));
  std::string scene = "--scene \"" + (dir_ / "s.json").string() + "\"";
  CliResult a = run_cli("run " + scene + " --threads 1 --out \"" + (dir_ / "t1").string() + "\"", dir_ / "log1");
  CliResult b = run_cli("run " + scene + " --threads 8 --out \"" + (dir_ / "t8").string() + "\"", dir_ / "log8");
  ASSERT_EQ(a.code, 0) << a.output;
  ASSERT_EQ(b.code, 0) << b.output;
  auto ta = tree_bytes(dir_ / "t1"), tb = tree_bytes(dir_ / "t8");
  EXPECT_FALSE(ta.empty());
  EXPECT_EQ(ta, tb);
}
