#pragma once

#include "swg/assembly.hpp"

namespace swg {

/// Discrete unknowns: u_b per facet (num_facets x dim) and p_h per element.
struct FieldSolution {
  int dim = 2;
  Formulation formulation = Formulation::primal;
  MatrixXd ub;
  VectorXd ph;  // solved (mixed) or recovered (primal)

  /// Local facet data of an element, N x dim, in the element's facet order.
  [[nodiscard]] MatrixXd element_values(const PolytopalMesh& mesh, int element) const {
    const Element& el = mesh.elements[element];
    MatrixXd U(el.size(), dim);
    for (int i = 0; i < el.size(); ++i) U.row(i) = ub.row(el.facets[i]);
    return U;
  }
};

/// Scatter a full-length DOF vector into facet and element values. ph is left empty for primal.
FieldSolution unpack_solution(const DofMap& dofs, const VectorXd& full);

}  // namespace swg
