#include "swg/postproc.hpp"

#include "swg/kernels.hpp"

#include <cmath>
#include <cstdio>
#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace swg {

std::string to_string(H1Norm n) { return n == H1Norm::discrete ? "discrete" : "reconstructed"; }

H1Norm parse_h1_norm(std::string_view s) {
  if (s == "discrete") return H1Norm::discrete;
  if (s == "reconstructed") return H1Norm::reconstructed;
  throw ConfigError("unknown h1 norm '" + std::string(s) + "' (expected discrete or reconstructed)");
}

VectorXd recover_pressure(const PolytopalMesh& mesh, const MatrixXd& ub, double lambda) {
  VectorXd p(mesh.num_elements());
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const Element& el = mesh.elements[e];
    MatrixXd U(el.size(), mesh.dim);
    for (int i = 0; i < el.size(); ++i) U.row(i) = ub.row(el.facets[i]);
    p[e] = lambda * weak_divergence(local_element(mesh, e), U);
  }
  return p;
}

namespace {

// Rows 0..d of D * U: value at x_T and gradient of s(u_b), one column per component.
MatrixXd extension_coeffs(const LocalElement& el, const MatrixXd& U) { return projection_matrix_D(el) * U; }

Vec3 eval_coeffs(const LocalElement& el, const MatrixXd& C, const Vec3& x) {
  Vec3 v = Vec3::Zero();
  for (int k = 0; k < el.dim; ++k) v[k] = extension_value(el, C.col(k), x);
  return v;
}

// Cell average of grad u, (k, l) = d u_k / d x_l, by the divergence theorem on the facets.
Mat3 cell_average_gradient(const PolytopalMesh& mesh, int e, const std::function<Vec3(const Vec3&)>& u) {
  const Element& el = mesh.elements[e];
  Mat3 G = Mat3::Zero();
  for (int i = 0; i < el.size(); ++i) {
    const Vec3 n = mesh.outward_normal(e, i);
    Vec3 s = Vec3::Zero();
    for (const auto& q : facet_rule(mesh, el.facets[i])) s += q.w * u(q.x);
    G += s * n.transpose();
  }
  return G / el.measure;
}

bool contains(const PolytopalMesh& mesh, int e, const Vec3& x) {
  const Element& el = mesh.elements[e];
  const double tol = 1e-10 * el.diameter;
  for (int i = 0; i < el.size(); ++i)
    if ((x - mesh.facets[el.facets[i]].centroid).dot(mesh.outward_normal(e, i)) > tol) return false;
  return true;
}

}  // namespace

LevelRecord compute_errors(const FieldSolution& s, const AnalyticCase& c, const PolytopalMesh& mesh, H1Norm h1) {
  if (!c.has_exact) throw Error("case " + c.name + " has no exact solution");
  const int d = mesh.dim;
  double l2 = 0.0;
  double h1sq = 0.0;
  double p2 = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const LocalElement el = local_element(mesh, e);
    const MatrixXd U = s.element_values(mesh, e);
    const MatrixXd C = extension_coeffs(el, U);
    const QuadRule rule = element_rule(mesh, e);
    for (const auto& q : rule) l2 += q.w * (c.u(q.x) - eval_coeffs(el, C, q.x)).squaredNorm();

    if (h1 == H1Norm::discrete) {
      const Mat3 G = cell_average_gradient(mesh, e, c.u);
      const MatrixXd W = weighted_normals(el);  // N x d
      const MatrixXd Gw = U.transpose() * W / el.measure;  // (k, l)
      h1sq += el.measure * (G.topLeftCorner(d, d) - Gw).squaredNorm();
    } else {
      // grad u from sigma is unavailable in general, so differentiate u centrally.
      const MatrixXd Gs = C.middleRows(1, d).transpose();  // (k, l)
      for (const auto& q : rule) {
        Mat3 G = Mat3::Zero();
        const double step = 1e-6 * el.diameter;
        for (int l = 0; l < d; ++l) {
          Vec3 dx = Vec3::Zero();
          dx[l] = step;
          G.col(l) = (c.u(q.x + dx) - c.u(q.x - dx)) / (2 * step);
        }
        h1sq += q.w * (G.topLeftCorner(d, d) - Gs).squaredNorm();
      }
    }
    if (s.ph.size() == mesh.num_elements()) {
      const double dp = c.p(el.centroid) - s.ph[e];
      p2 += el.measure * dp * dp;
    }
  }
  LevelRecord r;
  r.h = mesh.meshsize;
  r.dof = d * mesh.num_facets();
  r.e_u_l2 = std::sqrt(l2);
  r.e_u_h1 = std::sqrt(h1sq);
  r.e_p = std::sqrt(p2);
  return r;
}

ErrorReport convergence_rates(std::vector<LevelRecord> levels) {
  const LevelRecord* prev = nullptr;
  for (auto& r : levels) {
    r.r_l2.reset();
    r.r_h1.reset();
    r.r_p.reset();
    if (r.singular) {
      prev = nullptr;
      continue;
    }
    if (prev && r.n != prev->n) {
      const double lr = std::log(static_cast<double>(r.n) / prev->n);
      auto rate = [&](double a, double b) -> std::optional<double> {
        if (!(a > 0.0) || !(b > 0.0)) return std::nullopt;
        return std::log(a / b) / lr;
      };
      r.r_l2 = rate(prev->e_u_l2, r.e_u_l2);
      r.r_h1 = rate(prev->e_u_h1, r.e_u_h1);
      r.r_p = rate(prev->e_p, r.e_p);
    }
    prev = &r;
  }
  return {std::move(levels)};
}

std::string to_csv(const ErrorReport& report) {
  std::ostringstream out;
  out << "n,h,dof,e_u_l2,r_l2,e_u_h1,r_h1,e_p,r_p\n";
  char buf[64];
  auto err = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.6e", v);
    return std::string(buf);
  };
  auto rate = [&](const std::optional<double>& v) {
    if (!v) return std::string();
    std::snprintf(buf, sizeof buf, "%.4f", *v);
    return std::string(buf);
  };
  for (const auto& r : report.levels) {
    out << r.n << ',' << err(r.h) << ',' << r.dof << ',';
    if (r.singular) {
      out << "-,-,-,-,-,-\n";
      continue;
    }
    out << err(r.e_u_l2) << ',' << rate(r.r_l2) << ',' << err(r.e_u_h1) << ',' << rate(r.r_h1) << ',' << err(r.e_p)
        << ',' << rate(r.r_p) << '\n';
  }
  return out.str();
}

void export_csv(const ErrorReport& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << to_csv(report);
}

Vec3 element_displacement(const PolytopalMesh& mesh, const FieldSolution& s, int element, const Vec3& x) {
  const LocalElement el = local_element(mesh, element);
  return eval_coeffs(el, extension_coeffs(el, s.element_values(mesh, element)), x);
}

Vec3 probe_displacement(const PolytopalMesh& mesh, const FieldSolution& s, const Vec3& x) {
  Vec3 sum = Vec3::Zero();
  int count = 0;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const Element& el = mesh.elements[e];
    if ((x - el.centroid).norm() > el.diameter) continue;
    if (!contains(mesh, e, x)) continue;
    sum += element_displacement(mesh, s, e, x);
    ++count;
  }
  if (count == 0) throw Error("probe point outside the mesh");
  return sum / count;
}

namespace {

int vtk_cell_type(const PolytopalMesh& mesh, const Element& el) {
  if (mesh.dim == 2) return el.size() == 3 ? 5 : el.size() == 4 ? 9 : 7;
  return el.size() == 4 ? 10 : 42;
}

}  // namespace

void export_vtk(const PolytopalMesh& mesh, const FieldSolution& s, const std::filesystem::path& path) {
  const int nv = static_cast<int>(mesh.vertices.size());
  std::vector<Vec3> disp(nv, Vec3::Zero());
  std::vector<int> hits(nv, 0);
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const LocalElement el = local_element(mesh, e);
    const MatrixXd C = extension_coeffs(el, s.element_values(mesh, e));
    for (int v : mesh.elements[e].vertices) {
      disp[v] += eval_coeffs(el, C, mesh.vertices[v]);
      ++hits[v];
    }
  }

  // Connectivity lists, each prefixed with its own length.
  std::vector<std::vector<long>> cells(mesh.num_elements());
  std::size_t total = 0;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const Element& el = mesh.elements[e];
    auto& c = cells[e];
    const int type = vtk_cell_type(mesh, el);
    if (mesh.dim == 2) {
      c.assign(el.vertices.begin(), el.vertices.end());
    } else if (type == 10) {
      c.assign(el.vertices.begin(), el.vertices.end());
      const Vec3& a = mesh.vertices[c[0]];
      const Vec3 n = (mesh.vertices[c[1]] - a).cross(mesh.vertices[c[2]] - a);
      if (n.dot(mesh.vertices[c[3]] - a) < 0) std::swap(c[1], c[2]);
    } else {
      c.push_back(el.size());
      for (int i = 0; i < el.size(); ++i) {
        std::vector<int> loop = mesh.facets[el.facets[i]].vertices;
        if (el.orientation[i] < 0) std::reverse(loop.begin(), loop.end());
        c.push_back(static_cast<long>(loop.size()));
        c.insert(c.end(), loop.begin(), loop.end());
      }
    }
    total += c.size() + 1;
  }

  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << std::setprecision(12);
  out << "# vtk DataFile Version 3.0\nswg solution\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << nv << " double\n";
  for (const Vec3& p : mesh.vertices) out << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
  out << "CELLS " << mesh.num_elements() << ' ' << total << '\n';
  for (const auto& c : cells) {
    out << c.size();
    for (long v : c) out << ' ' << v;
    out << '\n';
  }
  out << "CELL_TYPES " << mesh.num_elements() << '\n';
  for (const auto& el : mesh.elements) out << vtk_cell_type(mesh, el) << '\n';
  out << "POINT_DATA " << nv << "\nVECTORS displacement double\n";
  for (int v = 0; v < nv; ++v) {
    const Vec3 u = hits[v] ? Vec3(disp[v] / hits[v]) : Vec3::Zero();
    out << u.x() << ' ' << u.y() << ' ' << u.z() << '\n';
  }
  out << "CELL_DATA " << mesh.num_elements() << "\nSCALARS pressure double 1\nLOOKUP_TABLE default\n";
  for (int e = 0; e < mesh.num_elements(); ++e) out << (s.ph.size() == mesh.num_elements() ? s.ph[e] : 0.0) << '\n';
}

}  // namespace swg
