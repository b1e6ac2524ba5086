#include "swg/study.hpp"

namespace swg {

LevelOutcome run_level(const AnalyticCase& c, const StudyConfig& config, int n,
                       const std::function<void(const PolytopalMesh&, const LevelOutcome&)>& on_mesh) {
  const PolytopalMesh mesh = case_mesh(c, config.family, n);
  AssemblyOptions opt;
  opt.formulation = config.formulation;
  opt.stabilization = config.stabilization;
  const GlobalSystem sys = assemble(mesh, c.material, opt, {c.f, c.traction, c.u});
  SolveResult res = solve(sys, config.solver);

  LevelOutcome out;
  out.n = n;
  out.num_elements = mesh.num_elements();
  out.report = res.report;
  out.solution = std::move(res.solution);
  out.record.n = n;
  out.record.h = mesh.meshsize;
  out.record.dof = sys.dofs.num_displacement();
  if (out.report.status != SolveStatus::converged) {
    out.record.singular = true;
  } else {
    if (config.formulation == Formulation::primal)
      out.solution.ph = recover_pressure(mesh, out.solution.ub, c.material.lambda);
    if (c.has_exact) {
      const LevelRecord r = compute_errors(out.solution, c, mesh, config.h1);
      out.record.e_u_l2 = r.e_u_l2;
      out.record.e_u_h1 = r.e_u_h1;
      out.record.e_p = r.e_p;
    }
    if (c.probe) out.probe = probe_displacement(mesh, out.solution, *c.probe);
  }
  if (on_mesh) on_mesh(mesh, out);
  return out;
}

bool StudyResult::all_singular() const {
  for (const auto& l : levels)
    if (!l.record.singular) return false;
  return !levels.empty();
}

StudyResult run_study(const StudyConfig& config,
                      const std::function<void(const PolytopalMesh&, const LevelOutcome&)>& on_mesh) {
  const AnalyticCase c = get_case(config.case_name, config.case_options);
  StudyResult result;
  std::vector<LevelRecord> records;
  for (int n : config.levels) {
    result.levels.push_back(run_level(c, config, n, on_mesh));
    records.push_back(result.levels.back().record);
  }
  result.errors = convergence_rates(std::move(records));
  return result;
}

}  // namespace swg
