// Copyright 2026 The ksforms Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef KSFORMS_SPECTRA_HPP
#define KSFORMS_SPECTRA_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "ksforms/forms_core.hpp"

namespace ksforms
{

struct SpectralResult
{
  std::string problem_id;
  int p = 0;
  // Ascending; after deflation only the retained (non-kernel) values.
  std::vector<double> eigenvalues;
  // Columns are B-orthonormal eigenvectors in the solver's coordinates.
  Eigen::MatrixXd vectors;
  // Eigenvectors as nodal fields, when the problem lives on a FESpace.
  std::vector<FormField> eigenvectors;
  // ||A x - theta B x|| / ((||A|| + |theta| ||B||) ||x||) per pair.
  std::vector<double> residual_norms;
  int kernel_dim = 0;
  std::vector<double> kernel_values;
  double zero_threshold = 0.0;
};

struct SolveOptions
{
  double tolerance = 1e-10;
  int max_iterations = 500;
  // NaN selects the shift automatically: 0 when A factors as positive
  // definite, a negative shift otherwise.
  double shift = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t seed = 20260101;
  int extra_vectors = 8;
};

// Linear operators of a symmetric pencil (A, B); `solve_shifted` applies
// (A - shift B)^{-1}.
struct Pencil
{
  int n = 0;
  double shift = 0.0;
  std::function<Eigen::MatrixXd(const Eigen::MatrixXd &)> apply_A;
  std::function<Eigen::MatrixXd(const Eigen::MatrixXd &)> apply_B;
  std::function<Eigen::MatrixXd(const Eigen::MatrixXd &)> solve_shifted;
};

// Block shift-invert subspace iteration with Rayleigh-Ritz. Returns the
// `count` smallest eigenvalues above the shift, kernel included.
SpectralResult subspace_iteration(const Pencil &pencil, int count, const SolveOptions &opts = {});

// Smallest `count` eigenvalues of A x = theta B x for sparse symmetric A, B
// (A PSD, B PSD, A + B positive definite). Kernel values are counted but kept;
// call deflate to drop them.
SpectralResult solve_gevp(const SpMat &A, const SpMat &B, int count,
                          double zero_threshold = -1.0, const SolveOptions &opts = {});

// Dense generalized eigensolve for B positive definite.
SpectralResult dense_gevp(const Eigen::MatrixXd &A, const Eigen::MatrixXd &B);
// Dense solve for B semidefinite via B x = tau (A + c B) x; infinite
// eigenvalues are dropped. A + c B must be positive definite.
SpectralResult dense_gevp_semidefinite(const Eigen::MatrixXd &A, const Eigen::MatrixXd &B,
                                       double c);

// Schur complement A_bb - A_bi A_ii^{-1} A_ib onto `boundary_dofs`.
Eigen::MatrixXd trace_reduce(const SpMat &A, const std::vector<int> &boundary_dofs);

// Moves eigenvalues below the threshold into the kernel. A negative
// threshold selects 1e-8 times the largest computed eigenvalue.
SpectralResult deflate(const SpectralResult &result, double zero_threshold = -1.0);

double default_zero_threshold(const std::vector<double> &values);

// Entries of `x` at the given indices, and the inverse scatter.
Eigen::VectorXd gather(const Eigen::VectorXd &x, const std::vector<int> &idx);
SpMat restrict_matrix(const SpMat &A, const std::vector<int> &rows, const std::vector<int> &cols);

}  // namespace ksforms

#endif  // KSFORMS_SPECTRA_HPP
