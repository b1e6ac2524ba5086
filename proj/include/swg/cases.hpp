#pragma once

#include "swg/material.hpp"
#include "swg/mesh.hpp"
#include "swg/mesh_generators.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace swg {

/// How the Neumann load on the shear beam's z = 0 face is formed.
enum class TractionMode {
  exact,      // sigma(u) n of the series solution
  uniform,    // constant (0, F, 0)
  resultant,  // constant (0, -F, 0): same resultant as sigma(u) n
};

struct CaseOptions {
  std::optional<double> E;
  std::optional<double> nu;
  TractionMode traction = TractionMode::exact;
};

struct ExactValues {
  Vec3 u = Vec3::Zero();
  double p = 0.0;
  Mat3 sigma = Mat3::Zero();
  Vec3 f = Vec3::Zero();
};

struct AnalyticCase {
  std::string name;
  int dim = 2;
  Box domain;
  bool cook_geometry = false;  // domain is the tapered Cook quadrilateral, not `domain`
  MaterialParams material;
  bool has_exact = true;

  std::function<Vec3(const Vec3&)> u;
  std::function<Mat3(const Vec3&)> sigma;
  std::function<Vec3(const Vec3&)> f;
  std::function<double(const Vec3&)> p;  // lambda div u
  BoundaryLayout layout;
  /// Neumann load at a boundary point with outward unit normal n.
  std::function<Vec3(const Vec3& x, const Vec3& n)> traction;

  std::optional<Vec3> probe;  // point whose displacement is reported
  double probe_reference = 0.0;
};

/// Names: patch, tc1, tc2, tc3_mixed, tc3d_1, tc3d_2, cook, shear_beam. Throws ConfigError.
AnalyticCase get_case(std::string_view name, const CaseOptions& options = {});
[[nodiscard]] std::vector<std::string> case_names();

ExactValues eval_exact(const AnalyticCase& c, const Vec3& x);

/// Mesh for level n of the case: generated on the case domain (or the Cook map) and retagged.
PolytopalMesh case_mesh(const AnalyticCase& c, MeshFamily family, int n);

struct ConsistencyReport {
  bool passed = true;
  double max_constitutive = 0.0;  // |sigma - (2 mu eps(u) + lambda div u I)|
  double max_equilibrium = 0.0;   // |f + div sigma|
  Vec3 worst_point = Vec3::Zero();
  std::string message;
};

/// Finite-difference check of sigma and f against u at random interior points.
ConsistencyReport verify_case_consistency(const AnalyticCase& c, int sample_count, unsigned seed = 12345);

/// Shear-beam stress potential psi (antiderivative of sigma_23 in y with psi(x, 0, z) = 0).
double shear_beam_psi(double x, double y, double F, double nu);
/// (sigma_31, sigma_23) of the shear beam.
std::pair<double, double> shear_beam_shear_stress(double x, double y, double F, double nu);

std::string to_string(TractionMode mode);
TractionMode parse_traction_mode(std::string_view s);

}  // namespace swg
