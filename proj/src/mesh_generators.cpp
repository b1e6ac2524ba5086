#include "swg/mesh_generators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <tuple>

namespace swg {

namespace {

// Vertex welding on exact integer keys.
template <typename Key>
class VertexPool {
 public:
  int get(const Key& key, const Vec3& point, std::vector<Vec3>& vertices) {
    auto [it, inserted] = ids_.try_emplace(key, static_cast<int>(vertices.size()));
    if (inserted) vertices.push_back(point);
    return it->second;
  }

 private:
  std::map<Key, int> ids_;
};

RawMesh grid_2d(int nx, int ny, const Box& box, bool split) {
  RawMesh raw;
  raw.dim = 2;
  const double hx = (box.hi.x() - box.lo.x()) / nx;
  const double hy = (box.hi.y() - box.lo.y()) / ny;
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      raw.vertices.emplace_back(box.lo.x() + i * hx, box.lo.y() + j * hy, 0.0);
    }
  }
  auto v = [nx](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (split) {
        raw.cells.push_back({{{v(i, j), v(i + 1, j), v(i + 1, j + 1)}}});
        raw.cells.push_back({{{v(i, j), v(i + 1, j + 1), v(i, j + 1)}}});
      } else {
        raw.cells.push_back({{{v(i, j), v(i + 1, j), v(i + 1, j + 1), v(i, j + 1)}}});
      }
    }
  }
  return raw;
}

// Sutherland-Hodgman clip of a lattice polygon against [0, xmax] x [0, ymax].
std::vector<std::array<double, 2>> clip_to_box(std::vector<std::array<double, 2>> poly, double xmax,
                                               double ymax) {
  struct Plane {
    int axis;
    double value;
    bool keep_below;
  };
  const Plane planes[4] = {{0, 0.0, false}, {0, xmax, true}, {1, 0.0, false}, {1, ymax, true}};
  for (const Plane& pl : planes) {
    if (poly.empty()) break;
    auto inside = [&](const std::array<double, 2>& p) {
      return pl.keep_below ? p[pl.axis] <= pl.value : p[pl.axis] >= pl.value;
    };
    std::vector<std::array<double, 2>> out;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const auto& a = poly[i];
      const auto& b = poly[(i + 1) % poly.size()];
      const bool ia = inside(a);
      const bool ib = inside(b);
      if (ia) out.push_back(a);
      if (ia != ib) {
        const double t = (pl.value - a[pl.axis]) / (b[pl.axis] - a[pl.axis]);
        out.push_back({a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])});
      }
    }
    poly = std::move(out);
  }
  // Lattice clipping only ever lands on lattice points.
  std::vector<std::array<double, 2>> cleaned;
  for (auto p : poly) {
    p = {std::round(p[0]), std::round(p[1])};
    if (cleaned.empty() || cleaned.back() != p) cleaned.push_back(p);
  }
  while (cleaned.size() > 1 && cleaned.front() == cleaned.back()) cleaned.pop_back();
  return cleaned;
}

double lattice_area(const std::vector<std::array<double, 2>>& p) {
  double a = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& u = p[i];
    const auto& w = p[(i + 1) % p.size()];
    a += u[0] * w[1] - w[0] * u[1];
  }
  return 0.5 * a;
}

// Offset-row hexagons on a lattice with unit w/2 horizontally and s/3 vertically.
// Row j has centres at y = 3j; even rows at x = 2i+1, odd rows at x = 2i.
RawMesh hexagonal_2d(int nx, int ny, const Box& box) {
  RawMesh raw;
  raw.dim = 2;
  const double ux = (box.hi.x() - box.lo.x()) / nx / 2.0;
  const double uy = (box.hi.y() - box.lo.y()) / ny / 3.0;
  const double xmax = 2.0 * nx;
  const double ymax = 3.0 * ny;
  const double full = 6.0;  // lattice area of an unclipped hexagon
  VertexPool<std::pair<long, long>> pool;
  for (int j = 0; j <= ny; ++j) {
    const bool odd = (j % 2) == 1;
    const int count = odd ? nx + 1 : nx;
    for (int i = 0; i < count; ++i) {
      const double cx = odd ? 2.0 * i : 2.0 * i + 1.0;
      const double cy = 3.0 * j;
      std::vector<std::array<double, 2>> hex = {{cx, cy - 2}, {cx + 1, cy - 1}, {cx + 1, cy + 1},
                                                {cx, cy + 2}, {cx - 1, cy + 1}, {cx - 1, cy - 1}};
      auto clipped = clip_to_box(std::move(hex), xmax, ymax);
      if (clipped.size() < 3 || lattice_area(clipped) < 1e-12 * full) continue;
      RawCell cell;
      cell.loops.emplace_back();
      for (const auto& p : clipped) {
        const long kx = std::lround(p[0]);
        const long ky = std::lround(p[1]);
        const Vec3 x(box.lo.x() + kx * ux, box.lo.y() + ky * uy, 0.0);
        cell.loops.back().push_back(pool.get({kx, ky}, x, raw.vertices));
      }
      raw.cells.push_back(std::move(cell));
    }
  }
  return raw;
}

// Truncated-square tiling: one octagon per grid cell, one diamond per grid vertex.
// Diamonds on the boundary are clipped to triangles.
RawMesh octagonal_2d(int nx, int ny, const Box& box) {
  RawMesh raw;
  raw.dim = 2;
  const double hx = (box.hi.x() - box.lo.x()) / nx;
  const double hy = (box.hi.y() - box.lo.y()) / ny;
  const double cut = 1.0 / (2.0 + std::sqrt(2.0));
  enum Offset { center = 0, right = 1, top = 2, left = 3, bottom = 4 };
  VertexPool<std::tuple<int, int, int>> pool;
  auto vid = [&](int i, int j, Offset o) {
    Vec3 x(box.lo.x() + i * hx, box.lo.y() + j * hy, 0.0);
    switch (o) {
      case right: x.x() += cut * hx; break;
      case left: x.x() -= cut * hx; break;
      case top: x.y() += cut * hy; break;
      case bottom: x.y() -= cut * hy; break;
      case center: break;
    }
    return pool.get({i, j, static_cast<int>(o)}, x, raw.vertices);
  };

  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      raw.cells.push_back({{{vid(i, j, right), vid(i + 1, j, left), vid(i + 1, j, top),
                             vid(i + 1, j + 1, bottom), vid(i + 1, j + 1, left), vid(i, j + 1, right),
                             vid(i, j + 1, bottom), vid(i, j, top)}}});
    }
  }
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      const std::array<std::pair<Offset, bool>, 4> ring = {
          {{right, i < nx}, {top, j < ny}, {left, i > 0}, {bottom, j > 0}}};
      const int present = static_cast<int>(std::count_if(ring.begin(), ring.end(), [](auto p) { return p.second; }));
      if (present < 2) continue;
      std::vector<int> loop;
      if (present == 2) {
        // Corner: quarter diamond, rotate the ring so the two present offsets are consecutive.
        for (int s = 0; s < 4; ++s) {
          if (ring[s].second && ring[(s + 1) % 4].second) {
            loop = {vid(i, j, ring[s].first), vid(i, j, ring[(s + 1) % 4].first), vid(i, j, center)};
            break;
          }
        }
      } else {
        for (const auto& [o, keep] : ring) {
          if (keep) loop.push_back(vid(i, j, o));
        }
      }
      raw.cells.push_back({{loop}});
    }
  }
  return raw;
}

// Prism extrusion of a 2D raw mesh through nz layers.
RawMesh extrude(const RawMesh& base, double z0, double z1, int nz) {
  RawMesh raw;
  raw.dim = 3;
  const int nv = static_cast<int>(base.vertices.size());
  const double hz = (z1 - z0) / nz;
  for (int k = 0; k <= nz; ++k) {
    for (const Vec3& p : base.vertices) raw.vertices.emplace_back(p.x(), p.y(), z0 + k * hz);
  }
  for (int k = 0; k < nz; ++k) {
    for (const RawCell& c : base.cells) {
      const auto& loop = c.loops[0];
      const int m = static_cast<int>(loop.size());
      RawCell cell;
      std::vector<int> bottom;
      std::vector<int> top;
      for (int i = m - 1; i >= 0; --i) bottom.push_back(k * nv + loop[i]);
      for (int i = 0; i < m; ++i) top.push_back((k + 1) * nv + loop[i]);
      cell.loops.push_back(bottom);
      cell.loops.push_back(top);
      for (int i = 0; i < m; ++i) {
        const int a = loop[i];
        const int b = loop[(i + 1) % m];
        cell.loops.push_back({k * nv + a, k * nv + b, (k + 1) * nv + b, (k + 1) * nv + a});
      }
      raw.cells.push_back(std::move(cell));
    }
  }
  return raw;
}

// Six tetrahedra per cube around the main diagonal; conforming across cubes.
RawMesh kuhn_tetrahedra(int nx, int ny, int nz, const Box& box) {
  RawMesh raw;
  raw.dim = 3;
  const Vec3 h((box.hi.x() - box.lo.x()) / nx, (box.hi.y() - box.lo.y()) / ny, (box.hi.z() - box.lo.z()) / nz);
  for (int k = 0; k <= nz; ++k) {
    for (int j = 0; j <= ny; ++j) {
      for (int i = 0; i <= nx; ++i) {
        raw.vertices.emplace_back(box.lo.x() + i * h.x(), box.lo.y() + j * h.y(), box.lo.z() + k * h.z());
      }
    }
  }
  auto v = [&](int i, int j, int k) { return (k * (ny + 1) + j) * (nx + 1) + i; };
  const std::array<std::array<int, 3>, 6> perms = {
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  for (int k = 0; k < nz; ++k) {
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        for (const auto& p : perms) {
          std::array<int, 3> c = {i, j, k};
          std::array<int, 4> t{};
          t[0] = v(c[0], c[1], c[2]);
          for (int s = 0; s < 3; ++s) {
            ++c[p[s]];
            t[s + 1] = v(c[0], c[1], c[2]);
          }
          Vec3 center = Vec3::Zero();
          for (int id : t) center += raw.vertices[id];
          center /= 4.0;
          RawCell cell;
          const std::array<std::array<int, 3>, 4> faces = {
              {{t[1], t[2], t[3]}, {t[0], t[3], t[2]}, {t[0], t[1], t[3]}, {t[0], t[2], t[1]}}};
          for (auto f : faces) {
            const Vec3& a = raw.vertices[f[0]];
            const Vec3 n = (raw.vertices[f[1]] - a).cross(raw.vertices[f[2]] - a);
            if (n.dot(a - center) < 0.0) std::swap(f[1], f[2]);
            cell.loops.push_back({f[0], f[1], f[2]});
          }
          raw.cells.push_back(std::move(cell));
        }
      }
    }
  }
  return raw;
}

Box footprint(const Box& box) { return Box{box.lo, box.hi, 2}; }

}  // namespace

double Box::measure() const {
  const Vec3 e = hi - lo;
  return dim == 2 ? e.x() * e.y() : e.x() * e.y() * e.z();
}

int dimension(MeshFamily family) {
  switch (family) {
    case MeshFamily::triangular:
    case MeshFamily::rectangular:
    case MeshFamily::hexagonal:
    case MeshFamily::octagonal: return 2;
    default: return 3;
  }
}

std::string to_string(MeshFamily family) {
  switch (family) {
    case MeshFamily::triangular: return "triangular";
    case MeshFamily::rectangular: return "rectangular";
    case MeshFamily::hexagonal: return "hexagonal";
    case MeshFamily::octagonal: return "octagonal";
    case MeshFamily::tetrahedral: return "tetrahedral";
    case MeshFamily::cubic: return "cubic";
    case MeshFamily::hex_prism: return "hex_prism";
  }
  return "?";
}

MeshFamily parse_family(std::string_view name) {
  if (name == "triangular") return MeshFamily::triangular;
  if (name == "rectangular" || name == "quadrilateral") return MeshFamily::rectangular;
  if (name == "hexagonal") return MeshFamily::hexagonal;
  if (name == "octagonal") return MeshFamily::octagonal;
  if (name == "tetrahedral") return MeshFamily::tetrahedral;
  if (name == "cubic") return MeshFamily::cubic;
  if (name == "hex_prism") return MeshFamily::hex_prism;
  throw ConfigError("unknown mesh family '" + std::string(name) + "'");
}

std::array<int, 3> cells_per_axis(int n, const Box& domain) {
  const Vec3 e = domain.hi - domain.lo;
  double shortest = std::min(e.x(), e.y());
  if (domain.dim == 3) shortest = std::min(shortest, e.z());
  std::array<int, 3> counts{1, 1, 1};
  for (int a = 0; a < domain.dim; ++a) {
    counts[a] = std::max(1, static_cast<int>(std::lround(n * e[a] / shortest)));
  }
  return counts;
}

RawMesh generate_raw_mesh(MeshFamily family, int n, const Box& domain) {
  if (n < 1) throw MeshError("subdivision count n must be >= 1");
  if (dimension(family) != domain.dim) {
    throw MeshError("mesh family '" + to_string(family) + "' does not match a " + std::to_string(domain.dim) +
                    "D domain");
  }
  for (int a = 0; a < domain.dim; ++a) {
    if (!(domain.hi[a] > domain.lo[a])) throw MeshError("degenerate domain box");
  }
  const auto [nx, ny, nz] = cells_per_axis(n, domain);
  RawMesh raw;
  switch (family) {
    case MeshFamily::triangular: raw = grid_2d(nx, ny, domain, true); break;
    case MeshFamily::rectangular: raw = grid_2d(nx, ny, domain, false); break;
    case MeshFamily::hexagonal: raw = hexagonal_2d(nx, ny, domain); break;
    case MeshFamily::octagonal: raw = octagonal_2d(nx, ny, domain); break;
    case MeshFamily::cubic: raw = extrude(grid_2d(nx, ny, footprint(domain), false), domain.lo.z(), domain.hi.z(), nz); break;
    case MeshFamily::hex_prism: raw = extrude(hexagonal_2d(nx, ny, footprint(domain)), domain.lo.z(), domain.hi.z(), nz); break;
    case MeshFamily::tetrahedral: raw = kuhn_tetrahedra(nx, ny, nz, domain); break;
  }
  raw.family = to_string(family);
  return raw;
}

PolytopalMesh generate_mesh(MeshFamily family, int n, const Box& domain) {
  return build_mesh(generate_raw_mesh(family, n, domain));
}

Vec3 cook_map(const Vec3& p) {
  const double xi = p.x();
  const double eta = p.y();
  return Vec3(48.0 * xi, 44.0 * xi + 44.0 * eta - 28.0 * xi * eta, 0.0);
}

PolytopalMesh generate_cook_mesh(MeshFamily family, int n) {
  if (dimension(family) != 2) throw MeshError("Cook membrane meshes are two-dimensional");
  RawMesh raw = generate_raw_mesh(family, n, Box::unit(2));
  for (Vec3& p : raw.vertices) p = cook_map(p);
  raw.family = "cook_" + raw.family;
  return build_mesh(raw);
}

}  // namespace swg
