#pragma once

#include "swg/kernels.hpp"
#include "swg/mesh.hpp"

#include <Eigen/Sparse>

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace swg {

using SparseMatrix = Eigen::SparseMatrix<double>;

enum class Formulation { mixed, primal };

std::string to_string(Formulation f);
Formulation parse_formulation(std::string_view s);

/// Displacement DOF of (facet, component) = dim * facet + component.
/// Pressure DOF of element e (mixed only) = dim * #facets + e.
struct DofMap {
  int dim = 2;
  int num_facets = 0;
  int num_elements = 0;
  Formulation formulation = Formulation::primal;
  std::vector<char> constrained;  // per DOF; only displacement DOFs on Dirichlet facets are set
  std::vector<int> free_index;    // DOF -> reduced index, -1 if constrained
  std::vector<int> free_dofs;     // reduced index -> DOF

  [[nodiscard]] int num_displacement() const { return dim * num_facets; }
  [[nodiscard]] int num_pressure() const { return formulation == Formulation::mixed ? num_elements : 0; }
  [[nodiscard]] int total() const { return num_displacement() + num_pressure(); }
  [[nodiscard]] int num_free() const { return static_cast<int>(free_dofs.size()); }
  [[nodiscard]] int num_constrained() const { return total() - num_free(); }
  [[nodiscard]] int displacement_dof(int facet, int k) const { return dim * facet + k; }
  [[nodiscard]] int pressure_dof(int element) const { return num_displacement() + element; }
};

/// Throws ConfigError when no boundary facet is tagged dirichlet.
DofMap build_dof_map(const PolytopalMesh& mesh, Formulation formulation);

struct LoadData {
  std::function<Vec3(const Vec3&)> f;                           // body force
  std::function<Vec3(const Vec3& x, const Vec3& n)> traction;  // on neumann facets
  std::function<Vec3(const Vec3&)> dirichlet;                   // g on dirichlet facets
};

struct AssemblyOptions {
  Formulation formulation = Formulation::primal;
  StabilizationConfig stabilization;
};

struct GlobalSystem {
  Formulation formulation = Formulation::primal;
  DofMap dofs;
  SparseMatrix full;          // all DOFs, before elimination
  VectorXd full_rhs;          // body and Neumann loads, all DOFs
  VectorXd dirichlet_values;  // all DOFs; facet averages of g on constrained DOFs, 0 elsewhere
  SparseMatrix A;             // free x free
  VectorXd b;                 // free
};

/// Unconstrained global matrix: element blocks plus (kappa > 0) edge-jump blocks.
/// Element kernels may be evaluated on several threads (capped by SWG_THREADS); accumulation is serial.
SparseMatrix assemble_matrix(const PolytopalMesh& mesh, const MaterialParams& mat, const AssemblyOptions& options,
                             const DofMap& dofs);
VectorXd assemble_load(const PolytopalMesh& mesh, const DofMap& dofs, const LoadData& loads);
/// Facet averages of g, by facet quadrature, on the constrained DOFs.
VectorXd dirichlet_values(const PolytopalMesh& mesh, const DofMap& dofs, const std::function<Vec3(const Vec3&)>& g);

/// Reduces to the free DOFs, moving the known values to the right-hand side.
void apply_dirichlet(GlobalSystem& system, const VectorXd& values);

GlobalSystem assemble(const PolytopalMesh& mesh, const MaterialParams& mat, const AssemblyOptions& options,
                      const LoadData& loads);

/// "row col value" lines, 0-based, preceded by a "% rows cols nnz" header.
void write_triplets(const SparseMatrix& A, const std::filesystem::path& path);

/// Number of worker threads for element loops: SWG_THREADS if set, else hardware concurrency.
int worker_threads();

}  // namespace swg
