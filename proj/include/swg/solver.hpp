#pragma once

#include "swg/field.hpp"

#include <string>

namespace swg {

enum class SolveStatus { converged, singular, max_iter };
enum class SolverKind { direct, cg };

std::string to_string(SolveStatus s);

struct SolverOptions {
  double tol = 1e-10;
  SolverKind kind = SolverKind::direct;
  int max_iterations = 2000;  // cg only
  double pivot_tol = 1e-12;   // relative to the largest diagonal entry
};

struct SolveReport {
  SolveStatus status = SolveStatus::converged;
  double relative_residual = 0.0;
  int iterations = 0;          // cg iterations, or refinement steps after the factorization
  double min_pivot_ratio = 0.0;  // min |D_i| / max |A_ii|, direct only
  int negative_pivots = 0;
  std::string message;
};

/// Solves A x = b by LDLt; `spd` additionally rejects negative pivots.
/// Throws Error on dimension mismatch.
SolveReport solve_linear(const SparseMatrix& A, const VectorXd& b, VectorXd& x, bool spd, const SolverOptions& options);

struct SolveResult {
  FieldSolution solution;
  SolveReport report;
};

/// Solves the reduced system and reinserts the Dirichlet values. No pressure recovery.
SolveResult solve(const GlobalSystem& system, const SolverOptions& options = {});

}  // namespace swg
