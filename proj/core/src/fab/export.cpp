#include "rheo/fab/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "rheo/error.hpp"
#include "rheo/format.hpp"

namespace rheo {

namespace {

using nlohmann::json;

json real_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_io(path.string(), "cannot open for writing");
  out << text;
  out.flush();
  if (!out) throw_io(path.string(), "write failed");
}

std::string layer_name(std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "layer_%04zu.svg", k);
  return buf;
}

void append_path(std::string& d, const Polygon2& poly) {
  for (std::size_t i = 0; i < poly.size(); ++i) {
    d += i == 0 ? "M" : " L";
    append_real(d, poly[i][0]);
    d.push_back(' ');
    append_real(d, -poly[i][1]);
  }
  d += " Z ";
}

}  // namespace

std::string layer_svg(const LayerStack& stack, std::size_t layer) {
  const SliceGrid& g = stack.grid;
  const Layer& l = stack.layers.at(layer);
  const double w = g.spacing * (g.nx - 1);
  const double h = g.spacing * (g.nz - 1);
  // SVG y points down, so world z is negated.
  std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"";
  append_real(s, g.x0);
  s.push_back(' ');
  append_real(s, -(g.z0 + h));
  s.push_back(' ');
  append_real(s, w);
  s.push_back(' ');
  append_real(s, h);
  s += "\">\n";
  s += "<desc>layer " + std::to_string(layer) + " y=";
  append_real(s, l.elevation);
  s += "</desc>\n<defs><pattern id=\"hatch\" patternUnits=\"userSpaceOnUse\" width=\"";
  const double hatch = 4 * g.spacing;
  append_real(s, hatch);
  s += "\" height=\"";
  append_real(s, hatch);
  s += "\" patternTransform=\"rotate(45)\"><line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"";
  append_real(s, hatch);
  s += "\" stroke=\"#c03\" stroke-width=\"";
  append_real(s, g.spacing);
  s += "\"/></pattern></defs>\n";
  if (!l.model.empty()) {
    std::string d;
    for (const auto& p : l.model) append_path(d, p);
    d.pop_back();
    s += "<path class=\"model\" fill=\"#333\" fill-rule=\"evenodd\" d=\"" + d + "\"/>\n";
  }
  if (!l.support.empty()) {
    std::string d;
    for (const auto& p : l.support) append_path(d, p);
    d.pop_back();
    s += "<path class=\"support\" fill=\"url(#hatch)\" fill-rule=\"evenodd\" d=\"" + d + "\"/>\n";
  }
  s += "</svg>\n";
  return s;
}

void write_toolpath(const LayerStack& stack, std::ostream& out) {
  std::string s;
  auto poly_line = [&](char tag, const Polygon2& poly) {
    s += "POLY ";
    s.push_back(tag);
    for (const auto& p : poly) {
      s.push_back(' ');
      append_real(s, p[0]);
      s.push_back(',');
      append_real(s, p[1]);
    }
    s.push_back('\n');
  };
  for (std::size_t k = 0; k < stack.layers.size(); ++k) {
    const Layer& l = stack.layers[k];
    s += "LAYER " + std::to_string(k) + " ";
    append_real(s, l.elevation);
    s.push_back('\n');
    for (const auto& p : l.model) poly_line('M', p);
    for (const auto& p : l.support) poly_line('S', p);
  }
  out << s;
}

void export_layers(const LayerStack& stack, const std::filesystem::path& dir, LayerFormat format) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw_io(dir.string(), "cannot create directory: " + ec.message());

  json manifest;
  manifest["layer_height"] = stack.layer_height;
  manifest["layer_count"] = stack.layers.size();
  json files = json::array();
  if (format == LayerFormat::svg) {
    manifest["format"] = "svg";
    for (std::size_t k = 0; k < stack.layers.size(); ++k) {
      std::string name = layer_name(k);
      write_text(dir / name, layer_svg(stack, k));
      files.push_back({{"layer", k}, {"elevation", stack.layers[k].elevation}, {"file", name}});
    }
  } else {
    manifest["format"] = "toolpath_text";
    std::ofstream out(dir / "toolpath.txt", std::ios::binary);
    if (!out) throw_io((dir / "toolpath.txt").string(), "cannot open for writing");
    write_toolpath(stack, out);
    out.flush();
    if (!out) throw_io((dir / "toolpath.txt").string(), "write failed");
    files.push_back({{"file", "toolpath.txt"}});
  }
  manifest["files"] = std::move(files);
  const char* name = format == LayerFormat::svg ? "svg_manifest.json" : "toolpath_manifest.json";
  write_text(dir / name, manifest.dump(2) + "\n");
}

MeshStats mesh_stats(const Mesh& mesh) {
  return {mesh.vertices.size(), mesh.triangles.size(), surface_area(mesh), enclosed_volume(mesh),
          is_watertight(mesh)};
}

std::string report_json(const std::optional<SlopeReport>& slopes,
                        const std::optional<LayerStack>& stack,
                        const std::optional<MeshStats>& mesh) {
  json r = json::object();
  if (slopes) {
    json s;
    s["threshold_pct"] = slopes->threshold_pct;
    s["max_slope_pct"] = real_or_null(slopes->max_slope_pct);
    s["max_cross_slope_pct"] = real_or_null(slopes->max_cross_slope_pct);
    s["rows"] = slopes->rows;
    s["cols"] = slopes->cols;
    std::size_t flagged = 0;
    for (double v : slopes->slopes) flagged += v >= slopes->threshold_pct ? 1 : 0;
    s["flagged_cells"] = flagged;
    json regions = json::array();
    for (const auto& g : slopes->regions) {
      regions.push_back({{"u_rows", {g.i0, g.i1}}, {"v_cols", {g.j0, g.j1}}});
    }
    s["regions"] = std::move(regions);
    json grid = json::array();
    for (int i = 0; i < slopes->rows; ++i) {
      json row = json::array();
      for (int j = 0; j < slopes->cols; ++j) row.push_back(real_or_null(slopes->at(i, j)));
      grid.push_back(std::move(row));
    }
    s["slopes_pct"] = std::move(grid);
    r["slope"] = std::move(s);
  }
  if (stack) {
    json s;
    s["overhang_deg"] = stack->overhang_deg;
    s["model_volume"] = stack->model_volume;
    s["support_volume"] = stack->support_volume;
    s["support_fraction"] = stack->support_fraction;
    s["xy_resolution"] = stack->grid.spacing;
    s["layer_height"] = stack->layer_height;
    r["support"] = std::move(s);

    json l;
    auto areas = layer_areas(*stack);
    l["count"] = stack->layers.size();
    l["areas"] = areas;
    // Thinnest printed layer: the weakest section under Z-axis loading.
    double min_area = 0.0;
    std::int64_t min_layer = -1;
    for (std::size_t k = 0; k < areas.size(); ++k) {
      if (areas[k] > 0 && (min_layer < 0 || areas[k] < min_area)) {
        min_area = areas[k];
        min_layer = static_cast<std::int64_t>(k);
      }
    }
    l["min_cross_section_area"] = min_layer < 0 ? json(nullptr) : json(min_area);
    l["min_cross_section_layer"] = min_layer;
    r["layers"] = std::move(l);
  }
  if (mesh) {
    r["mesh"] = {{"vertices", mesh->vertices},
                 {"triangles", mesh->triangles},
                 {"surface_area", mesh->surface_area},
                 {"volume", mesh->volume},
                 {"watertight", mesh->watertight}};
  }
  return r.dump(2) + "\n";
}

}  // namespace rheo
