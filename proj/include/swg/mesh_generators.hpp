#pragma once

#include "swg/mesh.hpp"

#include <array>
#include <string>
#include <string_view>

namespace swg {

enum class MeshFamily { triangular, rectangular, hexagonal, octagonal, tetrahedral, cubic, hex_prism };

/// Axis-aligned box; `dim` selects which extents are used.
struct Box {
  Vec3 lo = Vec3::Zero();
  Vec3 hi = Vec3::Ones();
  int dim = 2;

  static Box unit(int dim) { return Box{Vec3::Zero(), Vec3::Ones(), dim}; }
  [[nodiscard]] double measure() const;
};

[[nodiscard]] int dimension(MeshFamily family);
[[nodiscard]] std::string to_string(MeshFamily family);
/// Accepts the family names plus "quadrilateral" (alias of rectangular). Throws ConfigError.
[[nodiscard]] MeshFamily parse_family(std::string_view name);

/// Cells per axis: n along the shortest side, proportionally more along longer sides.
[[nodiscard]] std::array<int, 3> cells_per_axis(int n, const Box& domain);

RawMesh generate_raw_mesh(MeshFamily family, int n, const Box& domain);

/// Structured member of a family covering `domain`. Hexagonal and octagonal tilings are
/// clipped against the box; the clipped boundary cells are kept as ordinary polygons.
PolytopalMesh generate_mesh(MeshFamily family, int n, const Box& domain);

/// Corners of the tapered Cook membrane: (0,0), (48,44), (48,60), (0,44).
[[nodiscard]] Vec3 cook_map(const Vec3& unit_square_point);

/// 2D family on the unit square pushed through the bilinear map onto the Cook membrane.
PolytopalMesh generate_cook_mesh(MeshFamily family, int n);

}  // namespace swg
