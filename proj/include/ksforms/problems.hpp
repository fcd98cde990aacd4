// Copyright 2026 The ksforms Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef KSFORMS_PROBLEMS_HPP
#define KSFORMS_PROBLEMS_HPP

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ksforms/forms_core.hpp"
#include "ksforms/mesh.hpp"
#include "ksforms/spectra.hpp"

namespace ksforms
{

// problem_id: dirichlet, neumann_absolute, steklov, bsd1, bsd2, bsd_scalar,
// bsn_scalar.
struct ProblemSpec
{
  std::string problem_id = "dirichlet";
  int p = 0;
  int k = 5;
  Mesh mesh;
  int nodal_order = 1;
  // Boundary vertices whose facet normals differ by more than this are corners.
  double corner_angle_deg = 15.0;
  // Negative selects the default relative threshold.
  double zero_threshold = -1.0;
  SolveOptions solve;

  void validate() const;
};

const std::vector<std::string> &problem_ids();

// Constrained space: full nodal dofs = P * reduced dofs.
struct Discretization
{
  std::shared_ptr<const FESpace> space;
  DiscreteOperators ops;
  SpMat P;
  // Reduced dofs attached to boundary nodes, ascending.
  std::vector<int> boundary_columns;
};

// constraint: "dirichlet" (zero trace) or "absolute" (nu _| w = 0).
Discretization discretize(const ProblemSpec &spec, const std::string &constraint);

SpectralResult dirichlet_spectrum(const ProblemSpec &spec);
SpectralResult neumann_absolute_spectrum(const ProblemSpec &spec);
SpectralResult steklov_spectrum(const ProblemSpec &spec);
// Harmonic-ratio spectrum ||w||^2_{bdry} / ||w||^2 over discretely harmonic
// fields; its first value is q_{1,p}.
SpectralResult harmonic_ratio_spectrum(const ProblemSpec &spec);
double bsd1_first(const ProblemSpec &spec);
SpectralResult bsd2_spectrum(const ProblemSpec &spec);
SpectralResult bsd_scalar_spectrum(const ProblemSpec &spec);
SpectralResult bsn_scalar_spectrum(const ProblemSpec &spec);

// Dispatch on spec.problem_id.
SpectralResult solve_problem(const ProblemSpec &spec);

// Dense matrices of the full (unreduced) formulation used by dense_brute.
// kind: "definite" (A x = t B x, B positive definite), "semidefinite"
// (B x = tau (A + c B) x), "saddle" (A^{-1} B x = x / t).
struct FullSystem
{
  std::string kind;
  Eigen::MatrixXd A, B;
  double c = 0.0;
  int primal_dofs = 0;
  bool deflate_kernel = false;
};

FullSystem assemble_full_system(const ProblemSpec &spec);

}  // namespace ksforms

#endif  // KSFORMS_PROBLEMS_HPP
