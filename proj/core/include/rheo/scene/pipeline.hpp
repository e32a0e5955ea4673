#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "rheo/scene/scene.hpp"

namespace rheo {

enum class Stage { generate, accumulate, mesh, slice, analyze };

std::string_view to_string(Stage stage);
// Parses a comma-separated list such as "generate,mesh"; "all" selects every
// stage. Order in the result follows pipeline order.
std::vector<Stage> parse_stages(std::string_view list);
std::vector<Stage> all_stages();

// Replaces the scene's raster with the one in `raster_file`. Throws an
// input_format error when the file cannot be read as a raster.
Scene remodel_step(const Scene& scene, const std::filesystem::path& raster_file);

struct Product {
  std::string path;  // relative to the output directory
  std::string hash;  // FNV-1a 64, hex
};

struct PipelineResult {
  std::filesystem::path out_dir;
  std::vector<Stage> stages;
  std::vector<Product> products;
  std::string inputs_hash;
};

using LogFn = std::function<void(const std::string&)>;

// Runs the selected stages, writing products and manifest.json under
// `out_dir` (the scene's output path when empty). Upstream results a stage
// needs are recomputed in memory, so any subset can run on its own. Stage
// errors are rethrown with the stage name prefixed to the path.
PipelineResult run_pipeline(const Scene& scene, const std::vector<Stage>& stages,
                            std::filesystem::path out_dir = {}, const LogFn& log = {});

std::string fnv1a_hex(std::string_view bytes);
std::string file_hash(const std::filesystem::path& path);

}  // namespace rheo
