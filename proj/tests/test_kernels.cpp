#include "swg/kernels.hpp"
#include "swg/mesh_generators.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace swg;

namespace {

std::vector<Vec3> pts2(std::initializer_list<std::pair<double, double>> xy) {
  std::vector<Vec3> out;
  for (auto [x, y] : xy) out.emplace_back(x, y, 0.0);
  return out;
}

LocalElement unit_square() { return polygon_element(pts2({{0, 0}, {1, 0}, {1, 1}, {0, 1}})); }

LocalElement regular_hexagon() {
  std::vector<Vec3> p;
  for (int k = 0; k < 6; ++k) p.emplace_back(std::cos(k * M_PI / 3), std::sin(k * M_PI / 3), 0.0);
  return polygon_element(p);
}

VectorXd samples(const LocalElement& el, const std::function<double(const Vec3&)>& f) {
  VectorXd v(el.size());
  for (int i = 0; i < el.size(); ++i) v(i) = f(el.points[i]);
  return v;
}

MatrixXd vector_samples(const LocalElement& el, const std::function<Vec3(const Vec3&)>& f) {
  MatrixXd U(el.size(), el.dim);
  for (int i = 0; i < el.size(); ++i) U.row(i) = f(el.points[i]).head(el.dim).transpose();
  return U;
}

// Quadratic-form oracle built only from weak operators and the extension.
double energy_oracle(const LocalElement& el, const MaterialParams& mat, double h, const VectorXd& u, const VectorXd& v) {
  const int N = el.size();
  const int d = el.dim;
  auto grad = [&](const VectorXd& w) {
    MatrixXd G(d, d);
    for (int k = 0; k < d; ++k) G.row(k) = weak_gradient(el, w.segment(k * N, N)).transpose();
    return G;
  };
  const MatrixXd Gu = grad(u);
  const MatrixXd Gv = grad(v);
  const MatrixXd eu = 0.5 * (Gu + Gu.transpose());
  const MatrixXd ev = 0.5 * (Gv + Gv.transpose());
  double a = 2.0 * mat.mu * el.measure * (eu.array() * ev.array()).sum();
  const MatrixXd D = projection_matrix_D(el);
  for (int k = 0; k < d; ++k) {
    const VectorXd cu = D * u.segment(k * N, N);
    const VectorXd cv = D * v.segment(k * N, N);
    for (int i = 0; i < N; ++i) {
      const double ru = extension_value(el, cu, el.points[i]) - u(k * N + i);
      const double rv = extension_value(el, cv, el.points[i]) - v(k * N + i);
      a += el.lengths[i] * ru * rv / h;
    }
  }
  return a;
}

}  // namespace

TEST(ProjectionD, UnitSquare) {
  const MatrixXd D = projection_matrix_D(unit_square());
  MatrixXd expect(3, 4);
  expect << 0.25, 0.25, 0.25, 0.25, 0, 1, 0, -1, -1, 0, 1, 0;
  EXPECT_LT((D - expect).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(ProjectionD, TriangleReproducesAffine) {
  auto el = polygon_element(pts2({{0.1, 0.2}, {1.3, -0.1}, {0.4, 0.9}}));
  const VectorXd c = projection_matrix_D(el) * samples(el, [](const Vec3& x) { return 2 + 3 * x.x() - x.y(); });
  EXPECT_NEAR(c(0), 2 + 3 * el.centroid.x() - el.centroid.y(), 1e-13);
  EXPECT_NEAR(c(1), 3.0, 1e-13);
  EXPECT_NEAR(c(2), -1.0, 1e-13);
}

TEST(ProjectionD, Constant) {
  auto el = regular_hexagon();
  const VectorXd c = projection_matrix_D(el) * VectorXd::Constant(6, 4.5);
  EXPECT_NEAR(c(0), 4.5, 1e-14);
  EXPECT_NEAR(c(1), 0.0, 1e-14);
  EXPECT_NEAR(c(2), 0.0, 1e-14);
}

TEST(ProjectionD, DegenerateThrowsNamingElement) {
  LocalElement el = unit_square();
  el.id = 17;
  for (auto& p : el.points) p = Vec3(p.x(), 0.5, 0.0);  // collinear facet points
  try {
    (void)projection_matrix_D(el);
    FAIL() << "expected KernelError";
  } catch (const KernelError& e) {
    EXPECT_NE(std::string(e.what()).find("element 17"), std::string::npos);
  }
}

TEST(WeakGradient, Examples) {
  auto sq = unit_square();
  EXPECT_LT(weak_gradient(sq, VectorXd::Constant(4, 3.0)).norm(), 1e-15);
  VectorXd vb(4);
  vb << 0.5, 1, 0.5, 0;
  EXPECT_LT((weak_gradient(sq, vb) - Eigen::Vector2d(1, 0)).norm(), 1e-15);

  auto quad = polygon_element(pts2({{0, 0}, {2, 0}, {2, 1}, {0, 2}}));
  auto ell = [](const Vec3& x) { return x.x() + 2 * x.y(); };
  // Divergence theorem with 2-point Gauss line integrals.
  auto verts = pts2({{0, 0}, {2, 0}, {2, 1}, {0, 2}});
  Eigen::Vector2d oracle = Eigen::Vector2d::Zero();
  const double g = 0.5 / std::sqrt(3.0);
  for (int i = 0; i < 4; ++i) {
    const Vec3 a = verts[i];
    const Vec3 b = verts[(i + 1) % 4];
    const Vec3 t = b - a;
    const Eigen::Vector2d nlen(t.y(), -t.x());  // outward normal times length
    const double avg = 0.5 * (ell(0.5 * (a + b) - g * t) + ell(0.5 * (a + b) + g * t));
    oracle += avg * nlen;
  }
  oracle /= quad.measure;
  EXPECT_LT((weak_gradient(quad, samples(quad, ell)) - oracle).norm(), 1e-12);
  EXPECT_LT((oracle - Eigen::Vector2d(1, 2)).norm(), 1e-12);
}

TEST(WeakDivCurl, Examples) {
  auto sq = unit_square();
  auto U = vector_samples(sq, [](const Vec3& x) { return Vec3(x.x(), x.y(), 0); });
  EXPECT_NEAR(weak_divergence(sq, U), 2.0, 1e-14);
  auto R = vector_samples(sq, [](const Vec3& x) { return Vec3(-x.y(), x.x(), 0); });
  EXPECT_NEAR(weak_curl(sq, R)(0), 2.0, 1e-14);
  EXPECT_NEAR(weak_divergence(sq, R), 0.0, 1e-14);
  MatrixXd C = MatrixXd::Ones(4, 2) * 1.7;
  EXPECT_NEAR(weak_divergence(sq, C), 0.0, 1e-14);
  EXPECT_NEAR(weak_curl(sq, C)(0), 0.0, 1e-14);
}

TEST(WeakCurl, ThreeDimensionalRotation) {
  auto m = generate_mesh(MeshFamily::cubic, 1, Box::unit(3));
  auto el = local_element(m, 0);
  // u = w x x has curl 2w.
  const Vec3 w(0.3, -1.1, 0.7);
  auto U = vector_samples(el, [&](const Vec3& x) { return Vec3(w.cross(x)); });
  EXPECT_LT((weak_curl(el, U) - 2 * w).norm(), 1e-13);
  EXPECT_NEAR(weak_divergence(el, U), 0.0, 1e-13);
}

TEST(StabilizerA, TriangleIsZero) {
  auto el = polygon_element(pts2({{0, 0}, {1, 0}, {0.3, 0.8}}));
  EXPECT_EQ(stabilizer_matrix_A(el, 1.0).cwiseAbs().maxCoeff(), 0.0);
}

TEST(StabilizerA, UnitSquare) {
  auto el = unit_square();
  const MatrixXd A = stabilizer_matrix_A(el, 1.0);
  MatrixXd M(4, 3);
  for (int i = 0; i < 4; ++i) M.row(i) << 1.0, el.points[i].x() - 0.5, el.points[i].y() - 0.5;
  const MatrixXd expect = MatrixXd::Identity(4, 4) - M * projection_matrix_D(el);
  EXPECT_LT((A - expect).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((A * VectorXd::Ones(4)).norm(), 1e-14);
  VectorXd x(4);
  x << 0.5, 1, 0.5, 0;
  EXPECT_LT((A * x).norm(), 1e-14);
}

TEST(StabilizerA, HexagonKernel) {
  const MatrixXd A = stabilizer_matrix_A(regular_hexagon(), 1.0);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(A);
  const auto& ev = es.eigenvalues();
  for (int i = 0; i < 3; ++i) EXPECT_LT(std::abs(ev(i)), 1e-13);
  for (int i = 3; i < 6; ++i) EXPECT_GT(ev(i), 1e-3);
}

TEST(GradientB, UnitSquare) {
  const MatrixXd B = gradient_block_B(unit_square(), 1.0);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double expect = i == j ? 2.0 : ((i - j + 4) % 4 == 2 ? -2.0 : 0.0);
      EXPECT_NEAR(B(i, j), expect, 1e-14);
    }
  }
}

TEST(GradientB, RightTriangleAndClosure) {
  auto el = polygon_element(pts2({{0, 0}, {1, 0}, {0, 1}}));
  const MatrixXd B = gradient_block_B(el, 0.5);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double expect = 2 * 0.5 * el.normals[i].dot(el.normals[j]) * el.lengths[i] * el.lengths[j] / el.measure;
      EXPECT_NEAR(B(i, j), expect, 1e-14);
    }
  }
  EXPECT_LT((B * VectorXd::Ones(3)).norm(), 1e-14);
  EXPECT_LT((gradient_block_B(regular_hexagon(), 1.3) * VectorXd::Ones(6)).norm(), 1e-13);
  EXPECT_LT((weighted_normals(regular_hexagon()).transpose() * VectorXd::Ones(6)).norm(), 1e-14);
}

TEST(ElementStiffness, MixedMatchesQuadraticFormOracle) {
  const auto mat = MaterialParams::from_lame(1.0, 1.0);
  for (const LocalElement& el : {unit_square(), regular_hexagon(),
                                 polygon_element(pts2({{0, 0}, {2, 0}, {2, 1}, {0.5, 1.5}, {0, 1}}))}) {
    const double h = el.diameter;
    const MatrixXd K = element_stiffness_mixed(el, mat, h);
    const int n = 2 * el.size();
    ASSERT_EQ(K.rows(), n + 1);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        const double oracle = energy_oracle(el, mat, h, VectorXd::Unit(n, a), VectorXd::Unit(n, b));
        EXPECT_NEAR(K(a, b), oracle, 1e-12);
      }
      // Pressure coupling = |T| times weak divergence of the basis vector.
      const VectorXd ua = VectorXd::Unit(n, a);
      EXPECT_NEAR(K(a, n), el.measure * weak_divergence(el, ua.reshaped(el.size(), 2)), 1e-13);
    }
    EXPECT_NEAR(K(n, n), -el.measure / mat.lambda, 1e-15);
    EXPECT_LT((K - K.transpose()).cwiseAbs().maxCoeff(), 1e-13 * K.cwiseAbs().maxCoeff());
  }
}

TEST(ElementStiffness, RigidMotionsInKernel) {
  const auto mat = MaterialParams::from_young_poisson(1.0, 0.3);
  for (const LocalElement& el : {unit_square(), regular_hexagon()}) {
    const MatrixXd K = element_stiffness_mixed(el, mat, el.diameter);
    const int n = 2 * el.size();
    const VectorXd t = vector_samples(el, [](const Vec3&) { return Vec3(0.4, -2.0, 0); }).reshaped();
    EXPECT_LT((K.topLeftCorner(n, n) * t).norm(), 1e-13);
    const VectorXd r = vector_samples(el, [](const Vec3& x) { return Vec3(-x.y(), x.x(), 0); }).reshaped();
    EXPECT_LT(std::abs(r.dot(K.topLeftCorner(n, n) * r)), 1e-13);
    EXPECT_LT(std::abs(K.topRightCorner(n, 1).col(0).dot(r)), 1e-13);
  }
}

TEST(ElementStiffness, PrimalIsSchurComplement) {
  const auto mat = MaterialParams::from_lame(2.0, 1.0);
  for (const LocalElement& el : {unit_square(), regular_hexagon()}) {
    const MatrixXd K = element_stiffness_mixed(el, mat, el.diameter);
    const int n = 2 * el.size();
    const MatrixXd S = K.topLeftCorner(n, n) - K.topRightCorner(n, 1) * K.bottomLeftCorner(1, n) / K(n, n);
    const MatrixXd P = element_stiffness_primal(el, mat, el.diameter);
    EXPECT_LT((S - P).cwiseAbs().maxCoeff(), 1e-12);
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(P);
    EXPECT_GT(es.eigenvalues()(0), -1e-12);
  }
  // Unit square, mu = 1, lambda = 2: primal form against the oracle plus lambda |T| div^2.
  auto el = unit_square();
  const MatrixXd P = element_stiffness_primal(el, mat, 1.0);
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      const VectorXd ua = VectorXd::Unit(8, a);
      const VectorXd ub = VectorXd::Unit(8, b);
      const double oracle = energy_oracle(el, mat, 1.0, ua, ub) +
                            mat.lambda * el.measure * weak_divergence(el, ua.reshaped(4, 2)) *
                                weak_divergence(el, ub.reshaped(4, 2));
      EXPECT_NEAR(P(a, b), oracle, 1e-12);
    }
  }
}

TEST(ElementStiffness, StrainCurlIdentityRandom) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(-1, 1);
  auto m3 = generate_mesh(MeshFamily::hex_prism, 2, Box::unit(3));
  for (const LocalElement& el : {regular_hexagon(), local_element(m3, 3)}) {
    const int N = el.size();
    const int d = el.dim;
    for (int trial = 0; trial < 5; ++trial) {
      VectorXd v(d * N);
      for (int i = 0; i < v.size(); ++i) v(i) = U(rng);
      MatrixXd G(d, d);
      for (int k = 0; k < d; ++k) G.row(k) = weak_gradient(el, v.segment(k * N, N)).transpose();
      const MatrixXd eps = 0.5 * (G + G.transpose());
      const VectorXd curl = weak_curl(el, v.reshaped(N, d));
      EXPECT_NEAR(2 * eps.squaredNorm(), 2 * G.squaredNorm() - curl.squaredNorm(), 1e-12);
    }
  }
}

TEST(ElementLoad, Examples) {
  auto sq = unit_square();
  auto m = generate_mesh(MeshFamily::rectangular, 1, Box::unit(2));
  const QuadRule rule = element_rule(m, 0);
  auto el = local_element(m, 0);
  const MatrixXd D = projection_matrix_D(el);
  const VectorXd Fc = element_load(el, D, rule, [](const Vec3&) { return Vec3(2.5, 0, 0); });
  EXPECT_NEAR(Fc.head(4).sum(), 2.5, 1e-14);
  EXPECT_LT(Fc.tail(4).norm(), 1e-15);
  EXPECT_EQ(element_load(el, D, rule, [](const Vec3&) { return Vec3::Zero().eval(); }).norm(), 0.0);
  // Symbolic: int x (1/4 + D1i (x - 1/2) + D2i (y - 1/2)) = 1/8 + D1i / 12.
  const VectorXd Fx = element_load(el, D, rule, [](const Vec3& x) { return Vec3(x.x(), 0, 0); });
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(Fx(i), 0.125 + D(1, i) / 12.0, 1e-14);
}

TEST(NeumannLoad, Integral) {
  auto m = generate_mesh(MeshFamily::rectangular, 1, Box::unit(2));
  for (int f = 0; f < m.num_facets(); ++f) {
    const Vec3 g = facet_neumann_load(facet_rule(m, f), [](const Vec3& x) { return Vec3(x.x() * x.x(), 1.0, 0); });
    const Facet& fa = m.facets[f];
    const Vec3 a = m.vertices[fa.vertices[0]];
    const Vec3 b = m.vertices[fa.vertices[1]];
    // int_0^1 ((1-t) a_x + t b_x)^2 dt
    const double exact = (a.x() * a.x() + a.x() * b.x() + b.x() * b.x()) / 3.0;
    EXPECT_NEAR(g.x(), exact * fa.measure, 1e-14);
    EXPECT_NEAR(g.y(), fa.measure, 1e-14);
  }
}

TEST(EdgeJump, AffineAndConstantVanish) {
  auto m = generate_mesh(MeshFamily::hexagonal, 4, Box::unit(2));
  StabilizationConfig cfg{1.0, true, HScale::local};
  for (int f = 0; f < m.num_facets(); ++f) {
    if (m.facets[f].on_boundary()) continue;
    auto blk = edge_jump_stiffness(m, f, cfg);
    VectorXd a(blk.columns.size());
    VectorXd c = VectorXd::Constant(blk.columns.size(), 2.0);
    for (std::size_t j = 0; j < blk.columns.size(); ++j) {
      auto [e, i] = blk.columns[j];
      const Vec3 x = m.facets[m.elements[e].facets[i]].centroid;
      a(j) = 1 + 2 * x.x() - 3 * x.y();
    }
    EXPECT_LT(std::abs(a.dot(blk.W * a)), 1e-12);
    EXPECT_LT(std::abs(c.dot(blk.W * c)), 1e-12);
  }
}

TEST(EdgeJump, TwoSquaresOracle) {
  Box box{Vec3(0, 0, 0), Vec3(2, 1, 0), 2};
  auto m = generate_mesh(MeshFamily::rectangular, 1, box);
  ASSERT_EQ(m.num_elements(), 2);
  int shared = -1;
  for (int f = 0; f < m.num_facets(); ++f) {
    if (!m.facets[f].on_boundary()) shared = f;
  }
  ASSERT_GE(shared, 0);
  const int left = m.facets[shared].left;
  auto facet_value = [&](int f) {
    for (int g : m.elements[left].facets) {
      if (g == f) return m.facets[f].centroid.y();  // x has no tangential jump across a vertical edge
    }
    return 0.0;
  };
  const double kappa = 1.7;
  auto blk = edge_jump_stiffness(m, shared, {kappa, false, HScale::local});
  VectorXd v(blk.columns.size());
  for (std::size_t j = 0; j < blk.columns.size(); ++j) {
    auto [e, i] = blk.columns[j];
    v(j) = facet_value(m.elements[e].facets[i]);
  }
  auto grad = [&](int e) {
    auto el = local_element(m, e);
    VectorXd vb(el.size());
    for (int i = 0; i < el.size(); ++i) vb(i) = facet_value(m.elements[e].facets[i]);
    return Eigen::Vector2d(weak_gradient(el, vb));
  };
  const Facet& f = m.facets[shared];
  const Eigen::Vector2d tau(-f.normal.y(), f.normal.x());
  const double jump = (grad(f.left) - grad(f.right)).dot(tau);
  EXPECT_NEAR(v.dot(blk.W * v), kappa * f.diameter * f.measure * jump * jump, 1e-13);
  EXPECT_GT(jump * jump, 0.0);
}

TEST(EdgeJump, BoundaryModes) {
  auto m = generate_mesh(MeshFamily::rectangular, 2, Box::unit(2));
  int bf = 0;
  while (!m.facets[bf].on_boundary()) ++bf;
  EXPECT_TRUE(edge_jump_stiffness(m, bf, {1.0, false, HScale::local}).columns.empty());
  EXPECT_TRUE(edge_jump_stiffness(m, bf, {0.0, true, HScale::local}).columns.empty());
  auto blk = edge_jump_stiffness(m, bf, {1.0, true, HScale::local});
  EXPECT_EQ(blk.columns.size(), 4u);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(blk.W);
  EXPECT_GT(es.eigenvalues()(0), -1e-14);
}
