#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "rheo/geometry/mesh.hpp"

namespace rheo {

enum class MeshFormat { obj, stl_ascii };

// "v x y z" and 1-based "f a b c" records with shortest round-trip numbers.
void write_obj(const Mesh& mesh, std::ostream& out);
// Reads v and f records; polygons are fan-triangulated, "a/b/c" and negative
// indices are accepted, other record types are ignored.
Mesh read_obj(std::istream& in, const std::string& source = "obj");
Mesh load_obj(const std::filesystem::path& path);

void write_stl_ascii(const Mesh& mesh, std::ostream& out, const std::string& name = "rheoform");
// Vertices with identical coordinates are merged.
Mesh read_stl_ascii(std::istream& in, const std::string& source = "stl");

void export_mesh(const Mesh& mesh, const std::filesystem::path& path, MeshFormat format);

}  // namespace rheo
