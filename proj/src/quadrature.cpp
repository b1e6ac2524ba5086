#include "swg/quadrature.hpp"

#include <cmath>

namespace swg {

namespace {

Vec3 vertex_average(const PolytopalMesh& mesh, const std::vector<int>& ids) {
  Vec3 c = Vec3::Zero();
  for (int id : ids) c += mesh.vertices[id];
  return c / static_cast<double>(ids.size());
}

}  // namespace

QuadRule triangle_rule(const Vec3& a, const Vec3& b, const Vec3& c) {
  static constexpr double a1 = 0.44594849091596488632;
  static constexpr double w1 = 0.22338158967801146570;
  static constexpr double a2 = 0.09157621350977074346;
  static constexpr double w2 = 0.10995174365532186764;
  const double area = 0.5 * (b - a).cross(c - a).norm();
  QuadRule q;
  q.reserve(6);
  auto add = [&](double l1, double l2, double w) {
    q.push_back({(1.0 - l1 - l2) * a + l1 * b + l2 * c, w * area});
  };
  for (auto [l, w] : {std::pair{a1, w1}, std::pair{a2, w2}}) {
    add(l, l, w);
    add(1 - 2 * l, l, w);
    add(l, 1 - 2 * l, w);
  }
  return q;
}

QuadRule tetrahedron_rule(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  const double vol = std::abs((b - a).dot((c - a).cross(d - a))) / 6.0;
  QuadRule q;
  q.reserve(5);
  q.push_back({0.25 * (a + b + c + d), -0.8 * vol});
  const Vec3 p[4] = {a, b, c, d};
  for (int k = 0; k < 4; ++k) {
    Vec3 x = 0.5 * p[k];
    for (int l = 0; l < 4; ++l) {
      if (l != k) x += p[l] / 6.0;
    }
    q.push_back({x, 0.45 * vol});
  }
  return q;
}

QuadRule element_rule(const PolytopalMesh& mesh, int element) {
  const Element& el = mesh.elements[element];
  QuadRule q;
  if (mesh.dim == 2) {
    const auto& loop = el.vertices;
    for (std::size_t i = 0; i < loop.size(); ++i) {
      auto t = triangle_rule(el.centroid, mesh.vertices[loop[i]], mesh.vertices[loop[(i + 1) % loop.size()]]);
      q.insert(q.end(), t.begin(), t.end());
    }
    return q;
  }
  const Vec3 apex = vertex_average(mesh, el.vertices);
  for (int fid : el.facets) {
    const auto& loop = mesh.facets[fid].vertices;
    const Vec3 fc = vertex_average(mesh, loop);
    for (std::size_t i = 0; i < loop.size(); ++i) {
      auto t = tetrahedron_rule(apex, fc, mesh.vertices[loop[i]], mesh.vertices[loop[(i + 1) % loop.size()]]);
      q.insert(q.end(), t.begin(), t.end());
    }
  }
  return q;
}

QuadRule facet_rule(const PolytopalMesh& mesh, int facet) {
  const Facet& f = mesh.facets[facet];
  if (mesh.dim == 2) {
    const Vec3& a = mesh.vertices[f.vertices[0]];
    const Vec3& b = mesh.vertices[f.vertices[1]];
    const double g = 0.5 / std::sqrt(3.0);
    const Vec3 m = 0.5 * (a + b);
    return {{m - g * (b - a), 0.5 * f.measure}, {m + g * (b - a), 0.5 * f.measure}};
  }
  QuadRule q;
  const Vec3 fc = vertex_average(mesh, f.vertices);
  for (std::size_t i = 0; i < f.vertices.size(); ++i) {
    auto t = triangle_rule(fc, mesh.vertices[f.vertices[i]], mesh.vertices[f.vertices[(i + 1) % f.vertices.size()]]);
    q.insert(q.end(), t.begin(), t.end());
  }
  return q;
}

}  // namespace swg
