#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "rheo/fab/slicer.hpp"
#include "rheo/fab/slope.hpp"
#include "rheo/geometry/mesh.hpp"

namespace rheo {

enum class LayerFormat { svg, toolpath_text };

// SVG 1.1 document for one layer: model polygons filled, support polygons
// hatched with class="support".
std::string layer_svg(const LayerStack& stack, std::size_t layer);

// "LAYER k y" per layer followed by "POLY M|S x,z x,z ..." per polygon.
void write_toolpath(const LayerStack& stack, std::ostream& out);

// svg: layer_NNNN.svg per layer plus svg_manifest.json.
// toolpath_text: toolpath.txt plus toolpath_manifest.json.
// The manifest is written even for an empty stack.
void export_layers(const LayerStack& stack, const std::filesystem::path& dir, LayerFormat format);

struct MeshStats {
  std::size_t vertices = 0;
  std::size_t triangles = 0;
  double surface_area = 0.0;
  double volume = 0.0;
  bool watertight = false;
};

MeshStats mesh_stats(const Mesh& mesh);

// JSON report: slopes, support volumes and fraction, per-layer areas and the
// minimum cross-section. Absent parts are omitted.
std::string report_json(const std::optional<SlopeReport>& slopes,
                        const std::optional<LayerStack>& stack,
                        const std::optional<MeshStats>& mesh);

}  // namespace rheo
