#pragma once

#include "swg/mesh.hpp"

#include <filesystem>
#include <string>

namespace swg {

/// Minimal JSON container (vertices, facets with tags, elements) for debugging.
std::string mesh_to_json(const PolytopalMesh& mesh);
PolytopalMesh mesh_from_json(const std::string& text);

void write_mesh_json(const PolytopalMesh& mesh, const std::filesystem::path& path);
PolytopalMesh read_mesh_json(const std::filesystem::path& path);

}  // namespace swg
