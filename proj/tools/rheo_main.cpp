#include <iostream>
#include <string>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include "rheo/error.hpp"
#include "rheo/parallel.hpp"
#include "rheo/scene/pipeline.hpp"
#include "rheo/scene/scene.hpp"

namespace {

int exit_code(rheo::ErrorCode code) {
  switch (code) {
    case rheo::ErrorCode::io: return 3;
    case rheo::ErrorCode::resource_limit: return 4;
    default: return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rheo: generative bridging structures from scene files"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string scene_path;
  std::string out_dir;
  std::string stage_list = "all";
  std::string raster_path;
  unsigned threads = 1;
  bool verbose = false;

  app.add_option("--scene", scene_path, "Scene JSON file");
  app.add_option("--out", out_dir, "Output directory (default: the scene's output)");
  app.add_option("--stage", stage_list, "Comma-separated stages for 'run'");
  app.add_option("--raster", raster_path, "Raster file replacing the scene's raster");
  app.add_option("--threads", threads, "Worker threads; output does not depend on it")
      ->check(CLI::Range(1u, 1024u));
  app.add_flag("--verbose,-v", verbose, "Print progress to stderr");

  struct Command {
    const char* name;
    const char* help;
  };
  const Command commands[] = {
      {"generate", "Deck and structural preform"},
      {"accumulate", "Raster and accumulated body"},
      {"mesh", "Isosurface mesh (OBJ, STL)"},
      {"slice", "Layer contours, support, SVG and toolpath"},
      {"analyze", "Slope, support and layer report"},
      {"run", "Every stage, or those given by --stage"},
      {"validate", "Parse and check the scene only"},
  };
  for (const auto& c : commands) app.add_subcommand(c.name, c.help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  auto log = [&](const std::string& msg) {
    if (verbose) std::cerr << msg << "\n";
  };

  try {
    if (scene_path.empty()) rheo::throw_invalid_argument("--scene", "is required");
    rheo::set_thread_count(threads);
    rheo::Scene scene = rheo::load_scene(scene_path);
    if (!raster_path.empty()) scene = rheo::remodel_step(scene, raster_path);

    if (cmd == "validate") {
      if (verbose) std::cout << rheo::serialize_scene(scene);
      std::cout << "ok " << scene_path << "\n";
      return 0;
    }
    std::vector<rheo::Stage> stages =
        cmd == "run" ? rheo::parse_stages(stage_list) : rheo::parse_stages(cmd);
    rheo::PipelineResult result = rheo::run_pipeline(scene, stages, out_dir, log);
    for (const auto& p : result.products) log(p.path + " " + p.hash);
    std::cout << "wrote " << result.products.size() << " products to "
              << result.out_dir.string() << "\n";
    return 0;
  } catch (const rheo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: internal " << e.what() << "\n";
    return 1;
  }
}
