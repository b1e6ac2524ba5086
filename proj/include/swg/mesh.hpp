#pragma once

#include "swg/types.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace swg {

enum class BoundaryTag : std::uint8_t { interior, dirichlet, neumann };

/// Edge (2D) or planar face (3D) of the partition. Carries the method's unknowns.
struct Facet {
  std::vector<int> vertices;  // 2D: endpoints; 3D: loop ordered counterclockwise about `normal`
  Vec3 centroid = Vec3::Zero();
  double measure = 0.0;   // length (2D) or area (3D)
  double diameter = 0.0;  // h_e
  Vec3 normal = Vec3::Zero();  // unit, pointing out of `left`
  int left = -1;
  int right = -1;  // -1 on the domain boundary
  BoundaryTag tag = BoundaryTag::interior;

  [[nodiscard]] bool on_boundary() const { return right < 0; }
};

struct Element {
  std::vector<int> facets;
  std::vector<int> orientation;  // +1 when this element is the facet's left neighbour, -1 otherwise
  std::vector<int> vertices;     // 2D: counterclockwise loop; 3D: sorted unique vertex ids
  double measure = 0.0;
  Vec3 centroid = Vec3::Zero();
  double diameter = 0.0;  // h_T, largest vertex-pair distance

  [[nodiscard]] int size() const { return static_cast<int>(facets.size()); }
};

/// Cell description consumed by `build_mesh`. In 2D each cell is one counterclockwise
/// vertex loop; in 3D each cell is a list of faces, every face a loop oriented outward.
struct RawCell {
  std::vector<std::vector<int>> loops;
};

struct RawMesh {
  int dim = 2;
  std::vector<Vec3> vertices;
  std::vector<RawCell> cells;
  std::string family;
};

/// Immutable polytopal partition. Safe to share across threads for reading.
struct PolytopalMesh {
  int dim = 2;
  std::vector<Vec3> vertices;
  std::vector<Facet> facets;
  std::vector<Element> elements;
  double meshsize = 0.0;  // max h_T
  std::string family;

  [[nodiscard]] int num_facets() const { return static_cast<int>(facets.size()); }
  [[nodiscard]] int num_elements() const { return static_cast<int>(elements.size()); }

  /// Unit normal of the element's local facet `i`, pointing out of the element.
  [[nodiscard]] Vec3 outward_normal(int element, int i) const {
    const Element& el = elements[element];
    return static_cast<double>(el.orientation[i]) * facets[el.facets[i]].normal;
  }

  [[nodiscard]] double total_measure() const;
};

/// Geometry of one polygon given as a counterclockwise vertex loop.
struct PolygonGeometry {
  double area = 0.0;
  Vec3 centroid = Vec3::Zero();
  double diameter = 0.0;
  std::vector<Vec3> edge_midpoints;
  std::vector<double> edge_lengths;
  std::vector<Vec3> edge_normals;  // outward unit normals
};

/// Shoelace area, exact polygon centroid and outward edge normals.
/// Throws MeshError for clockwise, zero-area or self-intersecting input.
PolygonGeometry polygon_geometry(std::span<const Vec3> loop);

struct FaceGeometry {
  double area = 0.0;
  Vec3 centroid = Vec3::Zero();
  Vec3 normal = Vec3::Zero();
  double diameter = 0.0;
};

/// Area-weighted centroid and unit normal (right-hand rule) of a planar face loop.
FaceGeometry face_geometry(std::span<const Vec3> points);

struct PolyhedronGeometry {
  double volume = 0.0;
  Vec3 centroid = Vec3::Zero();
  double diameter = 0.0;
  std::vector<FaceGeometry> faces;
};

/// Volume and centroid by pyramid decomposition from the vertex average.
/// Faces must be oriented outward. Throws MeshError for non-positive volume.
PolyhedronGeometry polyhedron_geometry(const std::vector<Vec3>& vertices,
                                       const std::vector<std::vector<int>>& faces);

/// Builds topology (shared facets, adjacency) and geometry. Every boundary facet is tagged dirichlet.
PolytopalMesh build_mesh(const RawMesh& raw);

/// Facet predicate deciding the boundary condition on a boundary facet.
using BoundaryLayout = std::function<BoundaryTag(const Vec3& centroid, const Vec3& normal)>;

/// Copy of `mesh` with every boundary facet retagged according to `layout`.
PolytopalMesh with_boundary_layout(const PolytopalMesh& mesh, const BoundaryLayout& layout);

// --- validation -------------------------------------------------------------

enum class IssueKind {
  normal_not_unit,
  nonpositive_measure,
  nonpositive_diameter,
  tag_mismatch,
  closure_identity,
  adjacency,
  euler_characteristic,
};

struct ValidationIssue {
  IssueKind kind;
  int id;  // element or facet id, -1 for mesh-wide issues
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  [[nodiscard]] bool ok() const { return issues.empty(); }
  [[nodiscard]] bool has(IssueKind kind, int id) const;
};

ValidationReport validate_mesh(const PolytopalMesh& mesh);

std::string to_string(BoundaryTag tag);
std::string to_string(IssueKind kind);

}  // namespace swg
