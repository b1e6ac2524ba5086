#pragma once

#include "swg/material.hpp"
#include "swg/mesh.hpp"
#include "swg/quadrature.hpp"

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <vector>

namespace swg {

using Eigen::MatrixXd;
using Eigen::VectorXd;

enum class HScale { local, global };

struct StabilizationConfig {
  double kappa = 1.0;
  bool boundary_tangential = false;  // include the one-sided gamma = 2 terms on boundary facets
  HScale h_scale = HScale::local;
};

/// Geometry of one element as seen by the kernels: facet data in local order with outward normals.
struct LocalElement {
  int id = -1;
  int dim = 2;
  double measure = 0.0;
  Vec3 centroid = Vec3::Zero();
  double diameter = 0.0;
  std::vector<Vec3> points;  // facet midpoints (2D) or centroids (3D)
  std::vector<double> lengths;
  std::vector<Vec3> normals;

  [[nodiscard]] int size() const { return static_cast<int>(points.size()); }
};

LocalElement local_element(const PolytopalMesh& mesh, int element);
/// Stand-alone polygon (counterclockwise loop) for tests and tooling.
LocalElement polygon_element(std::span<const Vec3> loop);

/// Local DOF ordering for vector fields is component-major: index k*N + i.
/// Vector-valued facet data `U` is N x d.

/// (d+1) x N; row 0 is the value at x_T, rows 1..d the gradient of s(v_b) in x - x_T.
/// Throws KernelError naming the element when M^t E M is numerically singular.
MatrixXd projection_matrix_D(const LocalElement& el);
/// N x d, entry (i, k) = n_{k,i} |e_i|.
MatrixXd weighted_normals(const LocalElement& el);

VectorXd weak_gradient(const LocalElement& el, const VectorXd& vb);
double weak_divergence(const LocalElement& el, const MatrixXd& U);
/// Size 1 in 2D (dv/dx - du/dy), size 3 in 3D.
VectorXd weak_curl(const LocalElement& el, const MatrixXd& U);
/// Weak-curl map acting on the component-major local vector: 1 x 2N or 3 x 3N.
MatrixXd weak_curl_map(const LocalElement& el);

MatrixXd stabilizer_matrix_A(const LocalElement& el, double h_scale);
MatrixXd gradient_block_B(const LocalElement& el, double mu);
/// dN x dN: blockdiag(A + B) - mu |T| C^t C.
MatrixXd displacement_block(const LocalElement& el, const MaterialParams& mat, double h_scale);
/// (dN+1) x (dN+1) with the pressure unknown last.
MatrixXd element_stiffness_mixed(const LocalElement& el, const MaterialParams& mat, double h_scale);
MatrixXd element_stiffness_primal(const LocalElement& el, const MaterialParams& mat, double h_scale);

/// Value of s(v_b) at x given D * v_b.
double extension_value(const LocalElement& el, const VectorXd& coeffs, const Vec3& x);

using VectorField = std::function<Vec3(const Vec3&)>;

/// dN vector, F_{k*N+i} = integral over T of f_k times the s-basis function of facet i.
VectorXd element_load(const LocalElement& el, const MatrixXd& D, const QuadRule& rule, const VectorField& f);
/// Integral of rho over the facet (d components in a Vec3).
Vec3 facet_neumann_load(const QuadRule& facet_rule, const VectorField& rho);

/// Edge-jump contribution of one facet. The same scalar block W acts on every displacement
/// component; `columns` lists (element, local facet index) pairs indexing W.
struct EdgeJumpBlock {
  std::vector<std::pair<int, int>> columns;
  MatrixXd W;
};

/// Returns an empty block when the facet gets no term (kappa = 0, or boundary facet with
/// boundary terms off).
EdgeJumpBlock edge_jump_stiffness(const PolytopalMesh& mesh, int facet, const StabilizationConfig& config);

/// Scale h used in the stabiliser for element `el`.
double stabilizer_h(const LocalElement& el, const StabilizationConfig& config, double global_h);

}  // namespace swg
