#include "rheo/fab/mesh_io.hpp"

#include <array>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

#include "rheo/error.hpp"
#include "rheo/format.hpp"

namespace rheo {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string at_line(const std::string& source, std::size_t line) {
  return source + ":" + std::to_string(line);
}

double need_real(std::string_view tok, const std::string& where) {
  double v = 0.0;
  if (!parse_real(tok, v)) throw_input_format(where, "bad number '" + std::string(tok) + "'");
  return v;
}

void append_vertex(std::string& s, const Point3& p) {
  append_real(s, p.x);
  s.push_back(' ');
  append_real(s, p.y);
  s.push_back(' ');
  append_real(s, p.z);
}

}  // namespace

void write_obj(const Mesh& mesh, std::ostream& out) {
  std::string s;
  s.reserve(mesh.vertices.size() * 40 + mesh.triangles.size() * 24);
  for (const Point3& p : mesh.vertices) {
    s += "v ";
    append_vertex(s, p);
    s.push_back('\n');
  }
  for (const auto& t : mesh.triangles) {
    s += "f " + std::to_string(t[0] + 1) + " " + std::to_string(t[1] + 1) + " " +
         std::to_string(t[2] + 1) + "\n";
  }
  out << s;
}

Mesh read_obj(std::istream& in, const std::string& source) {
  Mesh mesh;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = split_ws(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    const std::string where = at_line(source, lineno);
    if (toks[0] == "v") {
      if (toks.size() < 4) throw_input_format(where, "vertex needs 3 coordinates");
      mesh.vertices.push_back(
          {need_real(toks[1], where), need_real(toks[2], where), need_real(toks[3], where)});
    } else if (toks[0] == "f") {
      if (toks.size() < 4) throw_input_format(where, "face needs >= 3 vertices");
      std::vector<std::uint32_t> idx;
      for (std::size_t k = 1; k < toks.size(); ++k) {
        std::string_view head = toks[k].substr(0, toks[k].find('/'));
        double v = 0.0;
        if (!parse_real(head, v) || v != static_cast<long long>(v) || v == 0) {
          throw_input_format(where, "bad face index '" + std::string(toks[k]) + "'");
        }
        long long n = static_cast<long long>(v);
        long long count = static_cast<long long>(mesh.vertices.size());
        long long zero_based = n > 0 ? n - 1 : count + n;
        if (zero_based < 0 || zero_based >= count) {
          throw_input_format(where, "face index out of range");
        }
        idx.push_back(static_cast<std::uint32_t>(zero_based));
      }
      for (std::size_t k = 1; k + 1 < idx.size(); ++k) {
        mesh.triangles.push_back({idx[0], idx[k], idx[k + 1]});
      }
    }
  }
  if (in.bad()) throw_io(source, "read failed");
  return mesh;
}

Mesh load_obj(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw_io(path.string(), "cannot open mesh file");
  return read_obj(in, path.string());
}

void write_stl_ascii(const Mesh& mesh, std::ostream& out, const std::string& name) {
  std::string s = "solid " + name + "\n";
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    s += "  facet normal ";
    append_vertex(s, triangle_normal(mesh, t));
    s += "\n    outer loop\n";
    for (std::uint32_t v : mesh.triangles[t]) {
      s += "      vertex ";
      append_vertex(s, mesh.vertices[v]);
      s.push_back('\n');
    }
    s += "    endloop\n  endfacet\n";
  }
  s += "endsolid " + name + "\n";
  out << s;
}

Mesh read_stl_ascii(std::istream& in, const std::string& source) {
  Mesh mesh;
  std::map<std::array<double, 3>, std::uint32_t> welded;
  std::vector<std::uint32_t> loop;
  std::string line;
  std::size_t lineno = 0;
  bool solid = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    const std::string where = at_line(source, lineno);
    if (toks[0] == "solid") {
      solid = true;
    } else if (toks[0] == "vertex") {
      if (toks.size() != 4) throw_input_format(where, "vertex needs 3 coordinates");
      std::array<double, 3> key{need_real(toks[1], where), need_real(toks[2], where),
                                need_real(toks[3], where)};
      auto [it, inserted] =
          welded.try_emplace(key, static_cast<std::uint32_t>(mesh.vertices.size()));
      if (inserted) mesh.vertices.push_back({key[0], key[1], key[2]});
      loop.push_back(it->second);
    } else if (toks[0] == "endloop") {
      if (loop.size() != 3) throw_input_format(where, "facet must have 3 vertices");
      mesh.triangles.push_back({loop[0], loop[1], loop[2]});
      loop.clear();
    }
  }
  if (!solid) throw_input_format(source, "missing 'solid' header");
  if (!loop.empty()) throw_input_format(source, "truncated facet");
  return mesh;
}

void export_mesh(const Mesh& mesh, const std::filesystem::path& path, MeshFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_io(path.string(), "cannot open for writing");
  if (format == MeshFormat::obj) {
    write_obj(mesh, out);
  } else {
    write_stl_ascii(mesh, out);
  }
  out.flush();
  if (!out) throw_io(path.string(), "write failed");
}

}  // namespace rheo
