#include "swg/assembly.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <thread>

namespace swg {

std::string to_string(Formulation f) { return f == Formulation::mixed ? "mixed" : "primal"; }

Formulation parse_formulation(std::string_view s) {
  if (s == "mixed") return Formulation::mixed;
  if (s == "primal") return Formulation::primal;
  throw ConfigError("unknown formulation '" + std::string(s) + "' (expected mixed or primal)");
}

int worker_threads() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  if (const char* env = std::getenv("SWG_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) n = static_cast<int>(std::min<long>(v, 256));
  }
  return n;
}

namespace {

// Runs body(i) for i in [0, count) on up to worker_threads() threads, strided.
template <class F>
void parallel_for(int count, F&& body) {
  const int nt = std::min(worker_threads(), std::max(1, count / 64));
  if (nt <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(nt);
  for (int t = 0; t < nt; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (int i = t; i < count; i += nt) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

DofMap build_dof_map(const PolytopalMesh& mesh, Formulation formulation) {
  DofMap m;
  m.dim = mesh.dim;
  m.num_facets = mesh.num_facets();
  m.num_elements = mesh.num_elements();
  m.formulation = formulation;
  m.constrained.assign(m.total(), 0);
  bool any = false;
  for (int f = 0; f < m.num_facets; ++f) {
    const Facet& fc = mesh.facets[f];
    if (!fc.on_boundary()) continue;
    if (fc.tag == BoundaryTag::interior) throw ConfigError("boundary facet " + std::to_string(f) + " has no boundary condition");
    if (fc.tag != BoundaryTag::dirichlet) continue;
    any = true;
    for (int k = 0; k < m.dim; ++k) m.constrained[m.displacement_dof(f, k)] = 1;
  }
  if (!any) throw ConfigError("no Dirichlet facets: the system would be singular (rigid motions)");
  m.free_index.assign(m.total(), -1);
  for (int i = 0; i < m.total(); ++i) {
    if (m.constrained[i]) continue;
    m.free_index[i] = static_cast<int>(m.free_dofs.size());
    m.free_dofs.push_back(i);
  }
  return m;
}

SparseMatrix assemble_matrix(const PolytopalMesh& mesh, const MaterialParams& mat, const AssemblyOptions& options,
                             const DofMap& dofs) {
  const int d = mesh.dim;
  const bool mixed = options.formulation == Formulation::mixed;
  const int ne = mesh.num_elements();
  std::vector<MatrixXd> blocks(ne);
  parallel_for(ne, [&](int e) {
    const LocalElement el = local_element(mesh, e);
    const double h = stabilizer_h(el, options.stabilization, mesh.meshsize);
    blocks[e] = mixed ? element_stiffness_mixed(el, mat, h) : element_stiffness_primal(el, mat, h);
  });

  const bool jumps = options.stabilization.kappa > 0.0;
  std::vector<EdgeJumpBlock> edge(jumps ? mesh.num_facets() : 0);
  if (jumps) parallel_for(mesh.num_facets(), [&](int f) { edge[f] = edge_jump_stiffness(mesh, f, options.stabilization); });

  // Fixed element-then-facet order; setFromTriplets sums duplicates in insertion order.
  std::vector<Eigen::Triplet<double>> trip;
  std::size_t reserve = 0;
  for (const auto& b : blocks) reserve += static_cast<std::size_t>(b.size());
  for (const auto& b : edge) reserve += static_cast<std::size_t>(b.W.size()) * d;
  trip.reserve(reserve);

  std::vector<int> ids;
  for (int e = 0; e < ne; ++e) {
    const Element& el = mesh.elements[e];
    const int N = el.size();
    ids.assign(d * N + (mixed ? 1 : 0), 0);
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < N; ++i) ids[k * N + i] = dofs.displacement_dof(el.facets[i], k);
    if (mixed) ids.back() = dofs.pressure_dof(e);
    const MatrixXd& K = blocks[e];
    for (int c = 0; c < K.cols(); ++c)
      for (int r = 0; r < K.rows(); ++r)
        if (K(r, c) != 0.0) trip.emplace_back(ids[r], ids[c], K(r, c));
  }
  for (const auto& b : edge) {
    if (b.columns.empty()) continue;
    const int m = static_cast<int>(b.columns.size());
    std::vector<int> facet_of(m);
    for (int j = 0; j < m; ++j) facet_of[j] = mesh.elements[b.columns[j].first].facets[b.columns[j].second];
    for (int k = 0; k < d; ++k)
      for (int c = 0; c < m; ++c)
        for (int r = 0; r < m; ++r)
          if (b.W(r, c) != 0.0)
            trip.emplace_back(dofs.displacement_dof(facet_of[r], k), dofs.displacement_dof(facet_of[c], k), b.W(r, c));
  }
  SparseMatrix K(dofs.total(), dofs.total());
  K.setFromTriplets(trip.begin(), trip.end());
  K.makeCompressed();
  return K;
}

VectorXd assemble_load(const PolytopalMesh& mesh, const DofMap& dofs, const LoadData& loads) {
  const int d = mesh.dim;
  VectorXd F = VectorXd::Zero(dofs.total());
  const int ne = mesh.num_elements();
  if (loads.f) {
    std::vector<VectorXd> local(ne);
    parallel_for(ne, [&](int e) {
      const LocalElement el = local_element(mesh, e);
      local[e] = element_load(el, projection_matrix_D(el), element_rule(mesh, e), loads.f);
    });
    for (int e = 0; e < ne; ++e) {
      const Element& el = mesh.elements[e];
      const int N = el.size();
      for (int k = 0; k < d; ++k)
        for (int i = 0; i < N; ++i) F[dofs.displacement_dof(el.facets[i], k)] += local[e][k * N + i];
    }
  }
  if (loads.traction) {
    for (int f = 0; f < mesh.num_facets(); ++f) {
      const Facet& fc = mesh.facets[f];
      if (!fc.on_boundary() || fc.tag != BoundaryTag::neumann) continue;
      const Vec3 n = fc.normal;  // boundary facets point out of their only element
      const Vec3 load = facet_neumann_load(facet_rule(mesh, f), [&](const Vec3& x) { return loads.traction(x, n); });
      for (int k = 0; k < d; ++k) F[dofs.displacement_dof(f, k)] += load[k];
    }
  }
  return F;
}

VectorXd dirichlet_values(const PolytopalMesh& mesh, const DofMap& dofs, const std::function<Vec3(const Vec3&)>& g) {
  VectorXd v = VectorXd::Zero(dofs.total());
  if (!g) return v;
  for (int f = 0; f < mesh.num_facets(); ++f) {
    if (!dofs.constrained[dofs.displacement_dof(f, 0)]) continue;
    Vec3 avg = Vec3::Zero();
    double w = 0.0;
    for (const auto& q : facet_rule(mesh, f)) {
      avg += q.w * g(q.x);
      w += q.w;
    }
    avg /= w;
    for (int k = 0; k < mesh.dim; ++k) v[dofs.displacement_dof(f, k)] = avg[k];
  }
  return v;
}

void apply_dirichlet(GlobalSystem& s, const VectorXd& values) {
  const DofMap& m = s.dofs;
  s.dirichlet_values = values;
  for (int i = 0; i < m.total(); ++i)
    if (!m.constrained[i]) s.dirichlet_values[i] = 0.0;
  const VectorXd Kg = s.full * s.dirichlet_values;
  const int nf = m.num_free();
  s.b.resize(nf);
  for (int r = 0; r < nf; ++r) s.b[r] = s.full_rhs[m.free_dofs[r]] - Kg[m.free_dofs[r]];
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(s.full.nonZeros()));
  for (int c = 0; c < s.full.outerSize(); ++c) {
    const int fc = m.free_index[c];
    if (fc < 0) continue;
    for (SparseMatrix::InnerIterator it(s.full, c); it; ++it) {
      const int fr = m.free_index[it.row()];
      if (fr >= 0) trip.emplace_back(fr, fc, it.value());
    }
  }
  s.A.resize(nf, nf);
  s.A.setFromTriplets(trip.begin(), trip.end());
  s.A.makeCompressed();
}

GlobalSystem assemble(const PolytopalMesh& mesh, const MaterialParams& mat, const AssemblyOptions& options,
                      const LoadData& loads) {
  GlobalSystem s;
  s.formulation = options.formulation;
  s.dofs = build_dof_map(mesh, options.formulation);
  s.full = assemble_matrix(mesh, mat, options, s.dofs);
  s.full_rhs = assemble_load(mesh, s.dofs, loads);
  apply_dirichlet(s, dirichlet_values(mesh, s.dofs, loads.dirichlet));
  return s;
}

void write_triplets(const SparseMatrix& A, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "% " << A.rows() << ' ' << A.cols() << ' ' << A.nonZeros() << '\n' << std::setprecision(17);
  for (int c = 0; c < A.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(A, c); it; ++it) out << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
}

}  // namespace swg
