#include "swg/solver.hpp"

#include <Eigen/CholmodSupport>
#include <Eigen/IterativeLinearSolvers>

#include <sstream>

namespace swg {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::singular: return "singular";
    case SolveStatus::max_iter: return "max_iter";
  }
  return "?";
}

FieldSolution unpack_solution(const DofMap& dofs, const VectorXd& full) {
  FieldSolution s;
  s.dim = dofs.dim;
  s.formulation = dofs.formulation;
  s.ub.resize(dofs.num_facets, dofs.dim);
  for (int f = 0; f < dofs.num_facets; ++f)
    for (int k = 0; k < dofs.dim; ++k) s.ub(f, k) = full[dofs.displacement_dof(f, k)];
  if (dofs.formulation == Formulation::mixed) s.ph = full.segment(dofs.num_displacement(), dofs.num_pressure());
  return s;
}

namespace {

// Simplicial LDLt (no BLAS, no pivoting) with CHOLMOD's fill-reducing ordering; exposes the pivots D.
class Ldlt : public Eigen::CholmodSimplicialLDLT<SparseMatrix, Eigen::Lower> {
 public:
  Ldlt() { cholmod().print = 0; }  // singularity is reported through SolveReport
  [[nodiscard]] VectorXd pivots() const {
    const cholmod_factor* L = m_cholmodFactor;
    if (!L || L->is_ll || L->is_super || !L->x) return {};
    const int* p = static_cast<const int*>(L->p);
    const double* x = static_cast<const double*>(L->x);
    VectorXd D(static_cast<Eigen::Index>(L->n));
    for (Eigen::Index j = 0; j < D.size(); ++j) D[j] = x[p[j]];  // diagonal leads each column
    return D;
  }
};

double rel_residual(const SparseMatrix& A, const VectorXd& x, const VectorXd& b) {
  const double nb = b.norm();
  const double r = (b - A * x).norm();
  return nb > 0.0 ? r / nb : r;
}

// Solve with a computed factorization plus up to three refinement steps.
template <class Factor>
void refine(Factor& factor, const SparseMatrix& A, const VectorXd& b, VectorXd& x, const SolverOptions& opt,
            SolveReport& rep) {
  x = factor.solve(b);
  rep.relative_residual = rel_residual(A, x, b);
  for (int step = 0; step < 3 && rep.relative_residual > opt.tol; ++step) {
    x += factor.solve(b - A * x);
    rep.relative_residual = rel_residual(A, x, b);
    rep.iterations = step + 1;
  }
  if (!std::isfinite(rep.relative_residual)) {
    rep.status = SolveStatus::singular;
    rep.message = "non-finite solution";
  } else if (rep.relative_residual > opt.tol) {
    rep.status = rep.relative_residual > 1e-3 ? SolveStatus::singular : SolveStatus::max_iter;
    rep.message = "residual " + std::to_string(rep.relative_residual) + " above tolerance after refinement";
  }
}

// expected_negative: 0 for SPD systems, #pressures for the saddle system, < 0 to skip the inertia check.
SolveReport solve_ldlt(const SparseMatrix& A, const VectorXd& b, VectorXd& x, const SolverOptions& opt,
                       int expected_negative) {
  SolveReport rep;
  double max_diag = 0.0;
  for (int i = 0; i < A.rows(); ++i) max_diag = std::max(max_diag, std::abs(A.coeff(i, i)));
  if (max_diag == 0.0) max_diag = 1.0;

  Ldlt ldlt;
  ldlt.compute(A);
  const VectorXd D = ldlt.pivots();
  double min_ratio = D.size() ? std::numeric_limits<double>::infinity() : 0.0;
  for (int i = 0; i < D.size(); ++i) {
    const double r = std::abs(D[i]) / max_diag;
    min_ratio = std::isfinite(r) ? std::min(min_ratio, r) : 0.0;
    if (D[i] < 0.0) ++rep.negative_pivots;
  }
  rep.min_pivot_ratio = min_ratio;
  std::ostringstream msg;
  if (ldlt.info() != Eigen::Success || D.size() != A.rows() || !(min_ratio >= opt.pivot_tol)) {
    msg << "pivot ratio " << min_ratio << " below " << opt.pivot_tol;
    rep.status = SolveStatus::singular;
  } else if (expected_negative >= 0 && rep.negative_pivots != expected_negative) {
    // Sylvester inertia: one negative pivot per pressure unknown, none for the primal system.
    msg << rep.negative_pivots << " negative pivots, expected " << expected_negative;
    rep.status = SolveStatus::singular;
  }
  if (rep.status == SolveStatus::singular) {
    rep.message = msg.str();
    x = VectorXd::Zero(b.size());
    rep.relative_residual = rel_residual(A, x, b);
    return rep;
  }
  refine(ldlt, A, b, x, opt, rep);
  return rep;
}

SolveReport solve_cg(const SparseMatrix& A, const VectorXd& b, VectorXd& x, const SolverOptions& opt) {
  SolveReport rep;
  Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper> cg;
  cg.setTolerance(opt.tol);
  cg.setMaxIterations(opt.max_iterations);
  cg.compute(A);
  x = cg.solve(b);
  rep.iterations = static_cast<int>(cg.iterations());
  rep.relative_residual = rel_residual(A, x, b);
  if (!std::isfinite(rep.relative_residual) || rep.relative_residual > 1e-3) {
    rep.status = SolveStatus::singular;
    rep.message = "cg stagnated at residual " + std::to_string(rep.relative_residual);
  } else if (rep.relative_residual > opt.tol) {
    rep.status = SolveStatus::max_iter;
    rep.message = "cg stopped at residual " + std::to_string(rep.relative_residual);
  }
  return rep;
}

}  // namespace

SolveReport solve_linear(const SparseMatrix& A, const VectorXd& b, VectorXd& x, bool spd, const SolverOptions& options) {
  if (A.rows() != A.cols() || A.rows() != b.size()) throw Error("solve: dimension mismatch");
  if (!(options.tol > 0.0) || options.tol > 1e-6) throw ConfigError("solver tolerance must lie in (0, 1e-6]");
  if (A.rows() == 0) {
    x.resize(0);
    return {};
  }
  if (options.kind == SolverKind::cg) {
    if (!spd) throw ConfigError("conjugate gradients need the primal formulation");
    return solve_cg(A, b, x, options);
  }
  return solve_ldlt(A, b, x, options, spd ? 0 : -1);
}

SolveResult solve(const GlobalSystem& s, const SolverOptions& options) {
  const DofMap& m = s.dofs;
  if (s.A.rows() != m.num_free() || s.b.size() != m.num_free()) throw Error("solve: system does not match its DOF map");
  const bool spd = s.formulation == Formulation::primal;
  VectorXd x;
  SolveReport rep;
  if (m.num_free() == 0) {
    x.resize(0);
  } else if (options.kind == SolverKind::cg || spd) {
    rep = solve_linear(s.A, s.b, x, spd, options);
  } else {
    if (!(options.tol > 0.0) || options.tol > 1e-6) throw ConfigError("solver tolerance must lie in (0, 1e-6]");
    rep = solve_ldlt(s.A, s.b, x, options, m.num_pressure());
  }
  VectorXd full = s.dirichlet_values;
  for (int r = 0; r < m.num_free(); ++r) full[m.free_dofs[r]] = x[r];
  return {unpack_solution(m, full), rep};
}

}  // namespace swg
