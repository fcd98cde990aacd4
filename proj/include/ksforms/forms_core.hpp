// Copyright 2026 The ksforms Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef KSFORMS_FORMS_CORE_HPP
#define KSFORMS_FORMS_CORE_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "ksforms/analytic.hpp"
#include "ksforms/fe_space.hpp"

namespace ksforms
{

using SpMat = Eigen::SparseMatrix<double>;

inline int form_components(int p) { return p == 1 ? 2 : 1; }

// Nodal p-form. Component c of node i is coefficient c * num_nodes + i.
struct FormField
{
  int p = 0;
  int order = 1;
  int num_nodes = 0;
  Eigen::VectorXd coefficients;

  static FormField zeros(const FESpace &space, int p);
  // Nodal interpolation of an analytic form.
  static FormField interpolate(const FESpace &space, const PolyForm &w);
};

// Piecewise polynomial p-form, one PolyForm per triangle.
struct ElementField
{
  int p = 0;
  std::vector<PolyForm> cells;
};

struct DiscreteOperators
{
  int p = 0;
  std::shared_ptr<const FESpace> space;

  SpMat M;        // interior mass
  SpMat B;        // int |dw|^2 + |delta w|^2
  SpMat G;        // int |grad w|^2, componentwise
  SpMat Mb;       // boundary mass of the tangential part iota^* w
  SpMat Mb_full;  // boundary mass of the full trace
  SpMat Mb_normal;  // boundary mass of the normal part nu _| w

  // Weak codifferential: M_lower * delta_h(beta) = R * beta; absent for p = 0.
  SpMat R;
  SpMat M_lower;

  // Pointwise traces at (facet, local facet node) pairs: row
  // f * nodes_per_facet + j. Tangential uses the facet tangent (-n_y, n_x)
  // and normal the outward facet normal.
  SpMat trace_tangential;
  SpMat trace_normal;

  int num_dofs() const { return static_cast<int>(M.rows()); }
};

// Scalar building blocks shared by every degree.
struct ScalarBlocks
{
  SpMat M, K;
  SpMat S[2][2];  // int d_i phi_a d_j phi_b
  SpMat C[2];     // int d_i phi_a phi_b
  SpMat Mb;       // boundary mass
  SpMat T[2][2];  // sum_f t_i t_j int phi phi
  SpMat N[2][2];  // sum_f n_i n_j int phi phi
  SpMat Nb[2];    // sum_f n_i int phi phi
  SpMat Tb[2];    // sum_f t_i int phi phi
};

ScalarBlocks assemble_scalar(const FESpace &space);

DiscreteOperators assemble(const Mesh &mesh, int p, int nodal_order);
DiscreteOperators assemble(std::shared_ptr<const FESpace> space, int p);

ElementField to_elements(const FESpace &space, const FormField &field);
ElementField apply_d(const FESpace &space, const FormField &field);
ElementField apply_d(const ElementField &field);

FormField weak_delta(const DiscreteOperators &ops, const FormField &field);

// Integrals over the mesh of polynomial data, exact up to rounding.
double integrate(const Mesh &mesh, const Poly2 &f);
double integrate_cells(const Mesh &mesh, const ElementField &a, const ElementField &b);
// Boundary integral; `integrand` receives the outward facet normal.
double integrate_boundary(const Mesh &mesh,
                          const std::function<Poly2(const Vec2 &outward)> &integrand);

struct IbpResiduals
{
  // Absolute residual and the largest magnitude among the identity's terms.
  double ipp = 0.0, ipp3p = 0.0, ipp1 = 0.0, ipp2 = 0.0, ipp3 = 0.0;
  double ipp_scale = 0.0, ipp3p_scale = 0.0, ipp1_scale = 0.0, ipp2_scale = 0.0,
         ipp3_scale = 0.0;
  // Residuals divided by max(1, largest term).
  double max_relative() const;
};

// w, w2 are p-forms; w_up is a (p+1)-form for the first identity (ignored
// when p = 2). The inward normal is the negated stored facet normal.
IbpResiduals ibp_residuals(const Mesh &mesh, const PolyForm &w, const PolyForm &w2,
                           const PolyForm &w_up);

// max over samples of |grad_X w| - |X| |grad w|.
double grad_contraction_check(const PolyForm &w, const PolyVec &X,
                              const std::vector<Vec2> &samples);

void write_matrix_market(const SpMat &A, const std::string &path);

}  // namespace ksforms

#endif  // KSFORMS_FORMS_CORE_HPP
