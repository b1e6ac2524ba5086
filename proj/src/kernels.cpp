#include "swg/kernels.hpp"

#include <Eigen/SVD>

#include <cmath>

namespace swg {

LocalElement local_element(const PolytopalMesh& mesh, int element) {
  const Element& e = mesh.elements[element];
  LocalElement el;
  el.id = element;
  el.dim = mesh.dim;
  el.measure = e.measure;
  el.centroid = e.centroid;
  el.diameter = e.diameter;
  for (int i = 0; i < e.size(); ++i) {
    const Facet& f = mesh.facets[e.facets[i]];
    el.points.push_back(f.centroid);
    el.lengths.push_back(f.measure);
    el.normals.push_back(mesh.outward_normal(element, i));
  }
  return el;
}

LocalElement polygon_element(std::span<const Vec3> loop) {
  const PolygonGeometry g = polygon_geometry(loop);
  LocalElement el;
  el.dim = 2;
  el.measure = g.area;
  el.centroid = g.centroid;
  el.diameter = g.diameter;
  el.points = g.edge_midpoints;
  el.lengths = g.edge_lengths;
  el.normals = g.edge_normals;
  return el;
}

MatrixXd projection_matrix_D(const LocalElement& el) {
  const int N = el.size();
  const int d = el.dim;
  // Coordinates scaled by h_T keep M^t E M well conditioned on small cells.
  const double h = el.diameter;
  MatrixXd M(N, d + 1);
  VectorXd w(N);
  for (int i = 0; i < N; ++i) {
    M(i, 0) = 1.0;
    for (int l = 0; l < d; ++l) M(i, l + 1) = (el.points[i][l] - el.centroid[l]) / h;
    w(i) = el.lengths[i];
  }
  const MatrixXd MtE = M.transpose() * w.asDiagonal();
  const MatrixXd G = MtE * M;
  Eigen::JacobiSVD<MatrixXd> svd(G);
  const auto& s = svd.singularValues();
  if (N < d + 1 || !(s(d) > 1e-12 * s(0))) {
    throw KernelError("element " + std::to_string(el.id) + ": degenerate least-squares extension (M^t E M singular)");
  }
  MatrixXd D = G.ldlt().solve(MtE);
  D.bottomRows(d) /= h;
  return D;
}

MatrixXd weighted_normals(const LocalElement& el) {
  MatrixXd Q(el.size(), el.dim);
  for (int i = 0; i < el.size(); ++i) {
    for (int k = 0; k < el.dim; ++k) Q(i, k) = el.normals[i][k] * el.lengths[i];
  }
  return Q;
}

VectorXd weak_gradient(const LocalElement& el, const VectorXd& vb) {
  if (vb.size() != el.size()) throw KernelError("weak_gradient: expected " + std::to_string(el.size()) + " values");
  return weighted_normals(el).transpose() * vb / el.measure;
}

double weak_divergence(const LocalElement& el, const MatrixXd& U) {
  if (U.rows() != el.size() || U.cols() != el.dim) throw KernelError("weak_divergence: shape mismatch");
  const MatrixXd Q = weighted_normals(el);
  double div = 0.0;
  for (int k = 0; k < el.dim; ++k) div += Q.col(k).dot(U.col(k));
  return div / el.measure;
}

MatrixXd weak_curl_map(const LocalElement& el) {
  const int N = el.size();
  const MatrixXd Q = weighted_normals(el) / el.measure;
  if (el.dim == 2) {
    MatrixXd C = MatrixXd::Zero(1, 2 * N);
    C.block(0, 0, 1, N) = -Q.col(1).transpose();
    C.block(0, N, 1, N) = Q.col(0).transpose();
    return C;
  }
  // (n x u)_a = n_b u_c - n_c u_b for cyclic (a, b, c).
  MatrixXd C = MatrixXd::Zero(3, 3 * N);
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3;
    const int c = (a + 2) % 3;
    C.block(a, c * N, 1, N) = Q.col(b).transpose();
    C.block(a, b * N, 1, N) = -Q.col(c).transpose();
  }
  return C;
}

VectorXd weak_curl(const LocalElement& el, const MatrixXd& U) {
  if (U.rows() != el.size() || U.cols() != el.dim) throw KernelError("weak_curl: shape mismatch");
  const VectorXd u = U.reshaped();  // column-major == component-major
  return weak_curl_map(el) * u;
}

MatrixXd stabilizer_matrix_A(const LocalElement& el, double h_scale) {
  const int N = el.size();
  const int d = el.dim;
  if (N == d + 1) {
    (void)projection_matrix_D(el);  // still reject degenerate simplices
    return MatrixXd::Zero(N, N);  // M square: the fit interpolates
  }
  const MatrixXd D = projection_matrix_D(el);
  MatrixXd M(N, d + 1);
  for (int i = 0; i < N; ++i) {
    M(i, 0) = 1.0;
    for (int l = 0; l < d; ++l) M(i, l + 1) = el.points[i][l] - el.centroid[l];
  }
  VectorXd w(N);
  for (int i = 0; i < N; ++i) w(i) = el.lengths[i];
  MatrixXd A = MatrixXd(w.asDiagonal()) - w.asDiagonal() * M * D;
  A = (0.5 / h_scale) * (A + A.transpose()).eval();
  return A;
}

MatrixXd gradient_block_B(const LocalElement& el, double mu) {
  const MatrixXd Q = weighted_normals(el);
  return (2.0 * mu / el.measure) * Q * Q.transpose();
}

MatrixXd displacement_block(const LocalElement& el, const MaterialParams& mat, double h_scale) {
  const int N = el.size();
  const int d = el.dim;
  const MatrixXd AB = stabilizer_matrix_A(el, h_scale) + gradient_block_B(el, mat.mu);
  const MatrixXd C = weak_curl_map(el);
  MatrixXd K = -mat.mu * el.measure * C.transpose() * C;
  for (int k = 0; k < d; ++k) K.block(k * N, k * N, N, N) += AB;
  return 0.5 * (K + K.transpose());
}

MatrixXd element_stiffness_mixed(const LocalElement& el, const MaterialParams& mat, double h_scale) {
  if (!(mat.lambda > 0.0)) throw KernelError("mixed formulation needs lambda > 0");
  const int N = el.size();
  const int n = el.dim * N;
  const VectorXd q = weighted_normals(el).reshaped();
  MatrixXd K(n + 1, n + 1);
  K.topLeftCorner(n, n) = displacement_block(el, mat, h_scale);
  K.topRightCorner(n, 1) = q;
  K.bottomLeftCorner(1, n) = q.transpose();
  K(n, n) = -el.measure / mat.lambda;
  return K;
}

MatrixXd element_stiffness_primal(const LocalElement& el, const MaterialParams& mat, double h_scale) {
  const VectorXd q = weighted_normals(el).reshaped();
  MatrixXd K = displacement_block(el, mat, h_scale);
  K += (mat.lambda / el.measure) * q * q.transpose();
  return K;
}

double extension_value(const LocalElement& el, const VectorXd& coeffs, const Vec3& x) {
  double v = coeffs(0);
  for (int l = 0; l < el.dim; ++l) v += coeffs(l + 1) * (x[l] - el.centroid[l]);
  return v;
}

VectorXd element_load(const LocalElement& el, const MatrixXd& D, const QuadRule& rule, const VectorField& f) {
  const int N = el.size();
  const int d = el.dim;
  VectorXd F = VectorXd::Zero(d * N);
  VectorXd basis(N);
  for (const QuadPoint& q : rule) {
    const Vec3 fx = f(q.x);
    basis = D.row(0).transpose();
    for (int l = 0; l < d; ++l) basis += D.row(l + 1).transpose() * (q.x[l] - el.centroid[l]);
    for (int k = 0; k < d; ++k) F.segment(k * N, N) += (q.w * fx[k]) * basis;
  }
  return F;
}

Vec3 facet_neumann_load(const QuadRule& facet_rule, const VectorField& rho) {
  Vec3 g = Vec3::Zero();
  for (const QuadPoint& q : facet_rule) g += q.w * rho(q.x);
  return g;
}

EdgeJumpBlock edge_jump_stiffness(const PolytopalMesh& mesh, int facet, const StabilizationConfig& config) {
  EdgeJumpBlock block;
  const Facet& f = mesh.facets[facet];
  if (!(config.kappa > 0.0)) return block;
  if (f.on_boundary() && !config.boundary_tangential) return block;
  const int d = mesh.dim;
  const Eigen::MatrixXd n = f.normal.head(d);
  const MatrixXd P = MatrixXd::Identity(d, d) - n * n.transpose();

  // Row l of the jump functional acting on one displacement component.
  std::vector<VectorXd> rows;
  auto side = [&](int element, double sign) {
    const Element& e = mesh.elements[element];
    for (int i = 0; i < e.size(); ++i) {
      const Facet& g = mesh.facets[e.facets[i]];
      const VectorXd gi = (g.measure / e.measure) * mesh.outward_normal(element, i).head(d);
      const VectorXd pg = sign * (P * gi);
      block.columns.emplace_back(element, i);
      rows.push_back(pg);
    }
  };
  side(f.left, 1.0);
  if (!f.on_boundary()) side(f.right, -1.0);

  const int m = static_cast<int>(rows.size());
  MatrixXd J(d, m);
  for (int c = 0; c < m; ++c) J.col(c) = rows[c];
  const double gamma = f.on_boundary() ? 2.0 : 1.0;
  block.W = config.kappa * std::pow(f.diameter, gamma) * f.measure * J.transpose() * J;
  return block;
}

double stabilizer_h(const LocalElement& el, const StabilizationConfig& config, double global_h) {
  return config.h_scale == HScale::local ? el.diameter : global_h;
}

}  // namespace swg
