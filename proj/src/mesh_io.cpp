#include "swg/mesh_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace swg {

namespace {

using nlohmann::json;

BoundaryTag parse_tag(const std::string& s) {
  if (s == "interior") return BoundaryTag::interior;
  if (s == "dirichlet") return BoundaryTag::dirichlet;
  if (s == "neumann") return BoundaryTag::neumann;
  throw MeshError("unknown boundary tag '" + s + "'");
}

}  // namespace

std::string mesh_to_json(const PolytopalMesh& mesh) {
  json j;
  j["dim"] = mesh.dim;
  j["family"] = mesh.family;
  json verts = json::array();
  for (const Vec3& v : mesh.vertices) verts.push_back({v.x(), v.y(), v.z()});
  j["vertices"] = verts;

  json facets = json::array();
  for (const Facet& f : mesh.facets) {
    facets.push_back({{"vertices", f.vertices}, {"left", f.left}, {"right", f.right}, {"tag", to_string(f.tag)}});
  }
  j["facets"] = facets;

  // Elements as raw cells so import can rebuild geometry from scratch.
  json elements = json::array();
  for (const Element& el : mesh.elements) {
    json e;
    e["facets"] = el.facets;
    if (mesh.dim == 2) {
      e["loops"] = json::array({el.vertices});
    } else {
      json loops = json::array();
      for (int i = 0; i < el.size(); ++i) {
        std::vector<int> loop = mesh.facets[el.facets[i]].vertices;
        if (el.orientation[i] < 0) std::reverse(loop.begin(), loop.end());
        loops.push_back(loop);
      }
      e["loops"] = loops;
    }
    elements.push_back(e);
  }
  j["elements"] = elements;
  return j.dump(1);
}

PolytopalMesh mesh_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& ex) {
    throw MeshError(std::string("mesh JSON: ") + ex.what());
  }
  try {
    RawMesh raw;
    raw.dim = j.at("dim").get<int>();
    raw.family = j.value("family", std::string{});
    for (const auto& v : j.at("vertices")) raw.vertices.emplace_back(v.at(0), v.at(1), v.at(2));
    for (const auto& e : j.at("elements")) {
      raw.cells.push_back({e.at("loops").get<std::vector<std::vector<int>>>()});
    }
    PolytopalMesh mesh = build_mesh(raw);
    const auto& facets = j.at("facets");
    if (facets.size() != mesh.facets.size()) throw MeshError("mesh JSON: facet count does not match cells");
    for (std::size_t i = 0; i < facets.size(); ++i) {
      std::vector<int> a = facets[i].at("vertices").get<std::vector<int>>();
      std::vector<int> b = mesh.facets[i].vertices;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b) throw MeshError("mesh JSON: facet " + std::to_string(i) + " does not match rebuilt topology");
      const BoundaryTag tag = parse_tag(facets[i].at("tag").get<std::string>());
      if ((tag == BoundaryTag::interior) != !mesh.facets[i].on_boundary()) {
        throw MeshError("mesh JSON: facet " + std::to_string(i) + " tag disagrees with adjacency");
      }
      mesh.facets[i].tag = tag;
    }
    return mesh;
  } catch (const json::exception& ex) {
    throw MeshError(std::string("mesh JSON: ") + ex.what());
  }
}

void write_mesh_json(const PolytopalMesh& mesh, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << mesh_to_json(mesh) << '\n';
}

PolytopalMesh read_mesh_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return mesh_from_json(ss.str());
}

}  // namespace swg
