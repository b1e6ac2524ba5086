#pragma once

#include "swg/mesh.hpp"

#include <vector>

namespace swg {

struct QuadPoint {
  Vec3 x;
  double w;
};

using QuadRule = std::vector<QuadPoint>;

/// Degree-4 rule on the triangle (a, b, c), 6 points.
QuadRule triangle_rule(const Vec3& a, const Vec3& b, const Vec3& c);
/// Degree-3 rule on the tetrahedron, 5 points (one negative weight).
QuadRule tetrahedron_rule(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d);

/// Centroid fan (2D) or face-centroid pyramids split into tetrahedra (3D).
QuadRule element_rule(const PolytopalMesh& mesh, int element);
/// 2-point Gauss on an edge (2D) or the degree-4 triangle rule on a fanned face (3D).
QuadRule facet_rule(const PolytopalMesh& mesh, int facet);

}  // namespace swg
