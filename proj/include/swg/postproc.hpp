#pragma once

#include "swg/cases.hpp"
#include "swg/field.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace swg {

/// p_h on each element = lambda * weak divergence of u_b.
VectorXd recover_pressure(const PolytopalMesh& mesh, const MatrixXd& ub, double lambda);

enum class H1Norm {
  discrete,       // |T|-weighted cell average of grad u against the weak gradient
  reconstructed,  // integral of |grad u - grad s(u_b)|^2
};

std::string to_string(H1Norm n);
H1Norm parse_h1_norm(std::string_view s);

struct LevelRecord {
  int n = 0;
  double h = 0.0;
  int dof = 0;
  bool singular = false;
  double e_u_l2 = 0.0;
  double e_u_h1 = 0.0;
  double e_p = 0.0;
  std::optional<double> r_l2, r_h1, r_p;
};

struct ErrorReport {
  std::vector<LevelRecord> levels;
};

/// Errors against the case's exact fields. `solution.ph` must be filled (solved or recovered).
LevelRecord compute_errors(const FieldSolution& solution, const AnalyticCase& c, const PolytopalMesh& mesh,
                           H1Norm h1 = H1Norm::discrete);

/// Rate between consecutive non-singular levels: log(e_prev / e) / log(n / n_prev).
ErrorReport convergence_rates(std::vector<LevelRecord> levels);

/// Header n,h,dof,e_u_l2,r_l2,e_u_h1,r_h1,e_p,r_p. Singular levels print "-" in every error and rate field.
std::string to_csv(const ErrorReport& report);
void export_csv(const ErrorReport& report, const std::filesystem::path& path);

/// s(u_b) of one element at x.
Vec3 element_displacement(const PolytopalMesh& mesh, const FieldSolution& s, int element, const Vec3& x);
/// s(u_b) at x averaged over every element containing x (several when x lies on a facet or vertex).
/// Throws Error when no element contains x.
Vec3 probe_displacement(const PolytopalMesh& mesh, const FieldSolution& s, const Vec3& x);

/// Legacy ASCII VTK 3.0 unstructured grid: vertex displacement (averaged s(u_b)) and cell pressure.
void export_vtk(const PolytopalMesh& mesh, const FieldSolution& s, const std::filesystem::path& path);

}  // namespace swg
