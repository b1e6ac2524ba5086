#include "swg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <utility>

namespace swg {

namespace {

double max_pair_distance(std::span<const Vec3> pts) {
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      d = std::max(d, (pts[i] - pts[j]).norm());
    }
  }
  return d;
}

double cross2(const Vec3& a, const Vec3& b) { return a.x() * b.y() - a.y() * b.x(); }

// Closed-segment intersection test in the xy plane.
bool segments_intersect(const Vec3& p1, const Vec3& p2, const Vec3& q1, const Vec3& q2) {
  auto orient = [](const Vec3& a, const Vec3& b, const Vec3& c) {
    const double v = cross2(b - a, c - a);
    const double scale = (b - a).norm() * (c - a).norm();
    if (std::abs(v) <= 1e-14 * scale) return 0;
    return v > 0 ? 1 : -1;
  };
  auto on_segment = [](const Vec3& a, const Vec3& b, const Vec3& c) {
    return std::min(a.x(), b.x()) <= c.x() && c.x() <= std::max(a.x(), b.x()) &&
           std::min(a.y(), b.y()) <= c.y() && c.y() <= std::max(a.y(), b.y());
  };
  const int o1 = orient(p1, p2, q1);
  const int o2 = orient(p1, p2, q2);
  const int o3 = orient(q1, q2, p1);
  const int o4 = orient(q1, q2, p2);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

std::vector<Vec3> gather(const std::vector<Vec3>& vertices, const std::vector<int>& ids) {
  std::vector<Vec3> pts;
  pts.reserve(ids.size());
  for (int id : ids) pts.push_back(vertices.at(static_cast<std::size_t>(id)));
  return pts;
}

}  // namespace

double PolytopalMesh::total_measure() const {
  double total = 0.0;
  for (const Element& el : elements) total += el.measure;
  return total;
}

PolygonGeometry polygon_geometry(std::span<const Vec3> loop) {
  const std::size_t n = loop.size();
  if (n < 3) throw MeshError("polygon needs at least 3 vertices");

  PolygonGeometry g;
  double twice_area = 0.0;
  Vec3 c = Vec3::Zero();
  // Shift by the first vertex to limit cancellation for cells far from the origin.
  const Vec3 o = loop[0];
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 a = loop[i] - o;
    const Vec3 b = loop[(i + 1) % n] - o;
    const double w = cross2(a, b);
    twice_area += w;
    c += w * (a + b);
  }
  g.area = 0.5 * twice_area;
  g.diameter = max_pair_distance(loop);
  if (!(g.area > 1e-14 * g.diameter * g.diameter)) {
    throw MeshError("polygon has non-positive area (clockwise or degenerate loop)");
  }
  g.centroid = o + c / (3.0 * twice_area);
  g.centroid.z() = 0.0;

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_intersect(loop[i], loop[(i + 1) % n], loop[j], loop[(j + 1) % n])) {
        throw MeshError("polygon is self-intersecting");
      }
    }
  }

  g.edge_midpoints.reserve(n);
  g.edge_lengths.reserve(n);
  g.edge_normals.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3& a = loop[i];
    const Vec3& b = loop[(i + 1) % n];
    const Vec3 t = b - a;
    const double len = std::hypot(t.x(), t.y());
    if (!(len > 0.0)) throw MeshError("polygon has a zero-length edge");
    g.edge_midpoints.push_back(0.5 * (a + b));
    g.edge_lengths.push_back(len);
    g.edge_normals.push_back(Vec3(t.y() / len, -t.x() / len, 0.0));
  }
  return g;
}

FaceGeometry face_geometry(std::span<const Vec3> points) {
  const std::size_t n = points.size();
  if (n < 3) throw MeshError("face needs at least 3 vertices");
  Vec3 avg = Vec3::Zero();
  for (const Vec3& p : points) avg += p;
  avg /= static_cast<double>(n);

  Vec3 area_vec = Vec3::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    area_vec += 0.5 * (points[i] - avg).cross(points[(i + 1) % n] - avg);
  }
  FaceGeometry g;
  g.area = area_vec.norm();
  g.diameter = max_pair_distance(points);
  if (!(g.area > 1e-14 * g.diameter * g.diameter)) throw MeshError("face has zero area");
  g.normal = area_vec / g.area;

  Vec3 c = Vec3::Zero();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3& a = points[i];
    const Vec3& b = points[(i + 1) % n];
    const double w = 0.5 * (a - avg).cross(b - avg).dot(g.normal);
    c += w * (avg + a + b) / 3.0;
    total += w;
  }
  g.centroid = c / total;
  return g;
}

PolyhedronGeometry polyhedron_geometry(const std::vector<Vec3>& vertices,
                                       const std::vector<std::vector<int>>& faces) {
  if (faces.size() < 4) throw MeshError("polyhedron needs at least 4 faces");
  std::set<int> ids;
  for (const auto& f : faces) ids.insert(f.begin(), f.end());
  std::vector<Vec3> pts;
  Vec3 center = Vec3::Zero();
  for (int id : ids) {
    pts.push_back(vertices.at(static_cast<std::size_t>(id)));
    center += pts.back();
  }
  center /= static_cast<double>(pts.size());

  PolyhedronGeometry g;
  g.diameter = max_pair_distance(pts);
  Vec3 c = Vec3::Zero();
  double volume = 0.0;
  for (const auto& f : faces) {
    const std::vector<Vec3> loop = gather(vertices, f);
    FaceGeometry fg = face_geometry(loop);
    Vec3 favg = Vec3::Zero();
    for (const Vec3& p : loop) favg += p;
    favg /= static_cast<double>(loop.size());
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const Vec3& a = loop[i];
      const Vec3& b = loop[(i + 1) % loop.size()];
      const double v = (favg - center).dot((a - center).cross(b - center)) / 6.0;
      volume += v;
      c += v * (center + favg + a + b) / 4.0;
    }
    g.faces.push_back(fg);
  }
  if (!(volume > 1e-14 * g.diameter * g.diameter * g.diameter)) {
    throw MeshError("polyhedron has non-positive volume (inward faces or degenerate cell)");
  }
  g.volume = volume;
  g.centroid = c / volume;
  return g;
}

PolytopalMesh build_mesh(const RawMesh& raw) {
  if (raw.dim != 2 && raw.dim != 3) throw MeshError("mesh dimension must be 2 or 3");
  PolytopalMesh mesh;
  mesh.dim = raw.dim;
  mesh.vertices = raw.vertices;
  mesh.family = raw.family;
  mesh.elements.resize(raw.cells.size());

  std::map<std::vector<int>, int> facet_index;
  for (std::size_t c = 0; c < raw.cells.size(); ++c) {
    const RawCell& cell = raw.cells[c];
    Element& el = mesh.elements[c];
    const int cid = static_cast<int>(c);

    std::vector<std::vector<int>> facet_loops;
    if (raw.dim == 2) {
      if (cell.loops.size() != 1) throw MeshError("2D cell must have exactly one vertex loop");
      const auto& loop = cell.loops[0];
      for (std::size_t i = 0; i < loop.size(); ++i) {
        facet_loops.push_back({loop[i], loop[(i + 1) % loop.size()]});
      }
      el.vertices = loop;
    } else {
      facet_loops = cell.loops;
      std::set<int> ids;
      for (const auto& f : cell.loops) ids.insert(f.begin(), f.end());
      el.vertices.assign(ids.begin(), ids.end());
    }

    for (const auto& loop : facet_loops) {
      std::vector<int> key = loop;
      std::sort(key.begin(), key.end());
      auto [it, inserted] = facet_index.try_emplace(key, mesh.num_facets());
      if (inserted) {
        Facet f;
        f.vertices = loop;
        f.left = cid;
        mesh.facets.push_back(std::move(f));
        el.orientation.push_back(1);
      } else {
        Facet& f = mesh.facets[static_cast<std::size_t>(it->second)];
        if (f.right >= 0) {
          std::ostringstream msg;
          msg << "facet shared by more than two cells (cell " << cid << ")";
          throw MeshError(msg.str());
        }
        f.right = cid;
        el.orientation.push_back(-1);
      }
      el.facets.push_back(it->second);
    }
  }

  for (Facet& f : mesh.facets) {
    const std::vector<Vec3> pts = gather(mesh.vertices, f.vertices);
    if (mesh.dim == 2) {
      const Vec3 t = pts[1] - pts[0];
      f.measure = std::hypot(t.x(), t.y());
      if (!(f.measure > 0.0)) throw MeshError("zero-length edge");
      f.centroid = 0.5 * (pts[0] + pts[1]);
      f.diameter = f.measure;
      f.normal = Vec3(t.y() / f.measure, -t.x() / f.measure, 0.0);
    } else {
      const FaceGeometry g = face_geometry(pts);
      f.measure = g.area;
      f.centroid = g.centroid;
      f.diameter = g.diameter;
      f.normal = g.normal;
    }
    f.tag = f.right < 0 ? BoundaryTag::dirichlet : BoundaryTag::interior;
  }

  for (std::size_t c = 0; c < mesh.elements.size(); ++c) {
    Element& el = mesh.elements[c];
    if (mesh.dim == 2) {
      const std::vector<Vec3> pts = gather(mesh.vertices, el.vertices);
      try {
        const PolygonGeometry g = polygon_geometry(pts);
        el.measure = g.area;
        el.centroid = g.centroid;
        el.diameter = g.diameter;
      } catch (const MeshError& e) {
        throw MeshError("element " + std::to_string(c) + ": " + e.what());
      }
    } else {
      try {
        const PolyhedronGeometry g = polyhedron_geometry(mesh.vertices, raw.cells[c].loops);
        el.measure = g.volume;
        el.centroid = g.centroid;
        el.diameter = g.diameter;
      } catch (const MeshError& e) {
        throw MeshError("element " + std::to_string(c) + ": " + e.what());
      }
    }
    mesh.meshsize = std::max(mesh.meshsize, el.diameter);
  }
  return mesh;
}

PolytopalMesh with_boundary_layout(const PolytopalMesh& mesh, const BoundaryLayout& layout) {
  PolytopalMesh out = mesh;
  for (Facet& f : out.facets) {
    if (!f.on_boundary()) continue;
    const BoundaryTag tag = layout(f.centroid, f.normal);
    if (tag == BoundaryTag::interior) throw MeshError("boundary layout returned 'interior'");
    f.tag = tag;
  }
  return out;
}

bool ValidationReport::has(IssueKind kind, int id) const {
  return std::any_of(issues.begin(), issues.end(),
                     [&](const ValidationIssue& i) { return i.kind == kind && i.id == id; });
}

ValidationReport validate_mesh(const PolytopalMesh& mesh) {
  ValidationReport report;
  auto flag = [&](IssueKind kind, int id, std::string msg) {
    report.issues.push_back({kind, id, std::move(msg)});
  };

  for (int i = 0; i < mesh.num_facets(); ++i) {
    const Facet& f = mesh.facets[i];
    if (std::abs(f.normal.norm() - 1.0) > 1e-12) flag(IssueKind::normal_not_unit, i, "facet normal not unit");
    if (!(f.measure > 0.0)) flag(IssueKind::nonpositive_measure, i, "facet measure <= 0");
    if (!(f.diameter > 0.0)) flag(IssueKind::nonpositive_diameter, i, "facet diameter <= 0");
    const bool interior_tag = f.tag == BoundaryTag::interior;
    if (interior_tag != (f.right >= 0)) flag(IssueKind::tag_mismatch, i, "tag disagrees with adjacency");
  }

  std::vector<int> refs(mesh.facets.size(), 0);
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const Element& el = mesh.elements[e];
    if (!(el.measure > 0.0)) flag(IssueKind::nonpositive_measure, e, "element measure <= 0");
    Vec3 closure = Vec3::Zero();
    double perimeter = 0.0;
    for (int i = 0; i < el.size(); ++i) {
      const int fid = el.facets[i];
      if (fid < 0 || fid >= mesh.num_facets()) {
        flag(IssueKind::adjacency, e, "element references a missing facet");
        continue;
      }
      ++refs[fid];
      const Facet& f = mesh.facets[fid];
      const int owner = el.orientation[i] > 0 ? f.left : f.right;
      if (owner != e) flag(IssueKind::adjacency, fid, "facet neighbour does not match referencing element");
      closure += f.measure * mesh.outward_normal(e, i);
      perimeter += f.measure;
    }
    if (closure.cwiseAbs().maxCoeff() > 1e-12 * perimeter) {
      flag(IssueKind::closure_identity, e, "sum of |e| n over facets is not zero");
    }
  }
  for (int i = 0; i < mesh.num_facets(); ++i) {
    const int expected = mesh.facets[i].right >= 0 ? 2 : 1;
    if (refs[i] != expected) {
      flag(IssueKind::adjacency, i,
           "facet referenced by " + std::to_string(refs[i]) + " elements, expected " + std::to_string(expected));
    }
  }

  std::map<std::vector<int>, int> seen;
  for (int i = 0; i < mesh.num_facets(); ++i) {
    std::vector<int> key = mesh.facets[i].vertices;
    std::sort(key.begin(), key.end());
    auto [it, inserted] = seen.try_emplace(key, i);
    if (!inserted) flag(IssueKind::adjacency, i, "duplicate of facet " + std::to_string(it->second));
  }

  // Euler characteristic of a contractible domain: V - E (+ F) - C = 1.
  std::set<int> used;
  for (const Element& el : mesh.elements) used.insert(el.vertices.begin(), el.vertices.end());
  const long v = static_cast<long>(used.size());
  const long c = mesh.num_elements();
  long chi = 0;
  if (mesh.dim == 2) {
    chi = v - static_cast<long>(seen.size()) + c;
  } else {
    std::set<std::pair<int, int>> edges;
    for (const Facet& f : mesh.facets) {
      for (std::size_t k = 0; k < f.vertices.size(); ++k) {
        int a = f.vertices[k];
        int b = f.vertices[(k + 1) % f.vertices.size()];
        edges.insert({std::min(a, b), std::max(a, b)});
      }
    }
    chi = v - static_cast<long>(edges.size()) + static_cast<long>(seen.size()) - c;
  }
  if (chi != 1) flag(IssueKind::euler_characteristic, -1, "Euler characteristic " + std::to_string(chi) + " != 1");

  return report;
}

std::string to_string(BoundaryTag tag) {
  switch (tag) {
    case BoundaryTag::interior: return "interior";
    case BoundaryTag::dirichlet: return "dirichlet";
    case BoundaryTag::neumann: return "neumann";
  }
  return "?";
}

std::string to_string(IssueKind kind) {
  switch (kind) {
    case IssueKind::normal_not_unit: return "normal_not_unit";
    case IssueKind::nonpositive_measure: return "nonpositive_measure";
    case IssueKind::nonpositive_diameter: return "nonpositive_diameter";
    case IssueKind::tag_mismatch: return "tag_mismatch";
    case IssueKind::closure_identity: return "closure_identity";
    case IssueKind::adjacency: return "adjacency";
    case IssueKind::euler_characteristic: return "euler_characteristic";
  }
  return "?";
}

}  // namespace swg
