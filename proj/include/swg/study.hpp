#pragma once

#include "swg/postproc.hpp"
#include "swg/solver.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace swg {

struct StudyConfig {
  std::string case_name = "tc1";
  MeshFamily family = MeshFamily::rectangular;
  std::vector<int> levels{4, 8, 16, 32};
  Formulation formulation = Formulation::mixed;
  StabilizationConfig stabilization;
  CaseOptions case_options;
  SolverOptions solver;
  H1Norm h1 = H1Norm::discrete;
};

struct LevelOutcome {
  int n = 0;
  int num_elements = 0;
  SolveReport report;
  LevelRecord record;  // errors only when the case has an exact solution
  FieldSolution solution;
  std::optional<Vec3> probe;  // s(u_b) at the case probe point
};

/// Mesh, assemble, solve, pressure recovery (primal), errors and probe for one level.
/// `on_mesh` sees the mesh and outcome before the mesh is dropped (for VTK output).
LevelOutcome run_level(const AnalyticCase& c, const StudyConfig& config, int n,
                       const std::function<void(const PolytopalMesh&, const LevelOutcome&)>& on_mesh = {});

struct StudyResult {
  std::vector<LevelOutcome> levels;
  ErrorReport errors;
  [[nodiscard]] bool all_singular() const;
};

StudyResult run_study(const StudyConfig& config,
                      const std::function<void(const PolytopalMesh&, const LevelOutcome&)>& on_mesh = {});

}  // namespace swg
