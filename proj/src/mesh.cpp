#include <fstream>
#include <sstream>

#include <json.hpp>

#include "simplexinterp/errors.hpp"
#include "simplexinterp/studies.hpp"

namespace simplexinterp {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& source, const std::string& field, const std::string& what) {
  throw IoError(source + ": " + field + ": " + what);
}

const json& member(const json& root, const std::string& source, const char* key) {
  const auto it = root.find(key);
  if (it == root.end()) fail(source, key, "missing");
  return *it;
}

}  // namespace

MeshFile parse_mesh(const std::string& text, const std::string& source) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    // what() already names line and column.
    throw IoError(source + ": " + e.what());
  }
  if (!root.is_object()) fail(source, "<root>", "expected an object");

  MeshFile mesh;
  const json& dim = member(root, source, "dimension");
  if (!dim.is_number_integer()) fail(source, "dimension", "expected an integer");
  mesh.dimension = dim.get<int>();
  if (mesh.dimension != 2 && mesh.dimension != 3) fail(source, "dimension", "must be 2 or 3");

  const json& verts = member(root, source, "vertices");
  if (!verts.is_array()) fail(source, "vertices", "expected an array");
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const std::string field = "vertices[" + std::to_string(i) + "]";
    const json& v = verts[i];
    if (!v.is_array() || v.size() != static_cast<std::size_t>(mesh.dimension))
      fail(source, field, "expected " + std::to_string(mesh.dimension) + " coordinates");
    Point p{0.0, 0.0, 0.0};
    for (std::size_t c = 0; c < v.size(); ++c) {
      if (!v[c].is_number()) fail(source, field + "[" + std::to_string(c) + "]", "expected a number");
      p[c] = v[c].get<double>();
    }
    mesh.vertices.push_back(p);
  }

  const json& cells = member(root, source, "cells");
  if (!cells.is_array()) fail(source, "cells", "expected an array");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const std::string field = "cells[" + std::to_string(i) + "]";
    const json& c = cells[i];
    if (!c.is_array()) fail(source, field, "expected an array of vertex indices");
    std::vector<int> idx;
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (!c[j].is_number_integer()) fail(source, field + "[" + std::to_string(j) + "]", "expected an integer");
      idx.push_back(c[j].get<int>());
    }
    mesh.cells.push_back(std::move(idx));
  }
  return mesh;
}

MeshFile load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open mesh file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw IoError("read error on mesh file '" + path + "'");
  return parse_mesh(os.str(), path);
}

void validate_mesh(const MeshFile& mesh, bool allow_degenerate) {
  const int d = mesh.dimension;
  if (d != 2 && d != 3) throw InvalidArgument("mesh dimension must be 2 or 3");
  const auto nv = static_cast<int>(mesh.vertices.size());
  for (std::size_t i = 0; i < mesh.cells.size(); ++i) {
    const auto& c = mesh.cells[i];
    const std::string cell = "cell " + std::to_string(i);
    if (c.size() != static_cast<std::size_t>(d + 1))
      throw InvalidArgument(cell + " has " + std::to_string(c.size()) + " vertices, expected " + std::to_string(d + 1));
    std::vector<Point> v;
    for (int idx : c) {
      if (idx < 0 || idx >= nv)
        throw InvalidArgument(cell + " references vertex " + std::to_string(idx) + " outside [0, " +
                              std::to_string(nv) + ")");
      v.push_back(mesh.vertices[static_cast<std::size_t>(idx)]);
    }
    if (allow_degenerate) continue;
    try {
      static_cast<void>(Simplex(d, v));
    } catch (const SingularGeometry& e) {
      throw InvalidArgument(cell + " is degenerate (" + e.what() + "); pass --allow-degenerate to keep it");
    }
  }
}

}  // namespace simplexinterp
