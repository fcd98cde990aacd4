// Copyright 2026 The ksforms Authors
// SPDX-License-Identifier: Apache-2.0

#include "ksforms/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include "ksforms/error.hpp"

namespace ksforms
{

namespace
{

using Mat = Eigen::MatrixXd;

Mat random_block(int n, int b, std::mt19937_64 &rng)
{
  std::normal_distribution<double> g;
  Mat X(n, b);
  for (int j = 0; j < b; ++j)
  {
    for (int i = 0; i < n; ++i)
    {
      X(i, j) = g(rng);
    }
  }
  return X;
}

// Largest eigenvalue magnitude of a symmetric operator, by power iteration.
double norm_estimate(const std::function<Mat(const Mat &)> &op, int n, std::mt19937_64 &rng)
{
  Mat x = random_block(n, 1, rng);
  x /= x.norm();
  double est = 0.0;
  for (int it = 0; it < 30; ++it)
  {
    Mat y = op(x);
    const double ny = y.norm();
    if (ny == 0.0)
    {
      return 0.0;
    }
    est = ny;
    x = y / ny;
  }
  return est;
}

struct Ritz
{
  Eigen::VectorXd theta;
  Mat X, AX, BX;
};

// Rayleigh-Ritz on span(Y); directions with negligible B-norm are dropped.
Ritz rayleigh_ritz(const Mat &Y, const Mat &AY, const Mat &BY)
{
  Mat Br = Y.transpose() * BY;
  Br = 0.5 * (Br + Br.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Mat> eb(Br);
  const double top = eb.eigenvalues().cwiseAbs().maxCoeff();
  std::vector<int> keep;
  for (int i = 0; i < Br.rows(); ++i)
  {
    if (eb.eigenvalues()[i] > 1e-13 * top)
    {
      keep.push_back(i);
    }
  }
  Mat W(Y.cols(), keep.size());
  for (std::size_t k = 0; k < keep.size(); ++k)
  {
    W.col(static_cast<long>(k)) =
      eb.eigenvectors().col(keep[k]) / std::sqrt(eb.eigenvalues()[keep[k]]);
  }
  Mat Ar = W.transpose() * (Y.transpose() * AY) * W;
  Ar = 0.5 * (Ar + Ar.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Mat> ea(Ar);
  const Mat V = W * ea.eigenvectors();
  return {ea.eigenvalues(), Y * V, AY * V, BY * V};
}

double relative_residual(const Eigen::VectorXd &ax, const Eigen::VectorXd &bx,
                         const Eigen::VectorXd &x, double theta, double nA, double nB)
{
  const double denom = (nA + std::abs(theta) * nB) * x.norm();
  return denom > 0.0 ? (ax - theta * bx).norm() / denom : 0.0;
}

}  // namespace

SpectralResult subspace_iteration(const Pencil &pencil, int count, const SolveOptions &opts)
{
  const int n = pencil.n;
  if (count < 1)
  {
    throw DomainError("eigenvalue count must be positive");
  }
  if (count > n)
  {
    throw DomainError("requested more eigenvalues than degrees of freedom");
  }
  std::mt19937_64 rng(opts.seed);
  const double nA = norm_estimate(pencil.apply_A, n, rng);
  const double nB = norm_estimate(pencil.apply_B, n, rng);

  const int b = std::min(n, count + std::max(opts.extra_vectors, count));
  if (n <= 2 * b)
  {
    const Mat I = Mat::Identity(n, n);
    SpectralResult r = dense_gevp_semidefinite(pencil.apply_A(I), pencil.apply_B(I), -pencil.shift);
    if (static_cast<int>(r.eigenvalues.size()) < count)
    {
      throw SolverError("pencil has fewer finite eigenvalues than requested");
    }
    r.eigenvalues.resize(count);
    r.vectors = r.vectors.leftCols(count).eval();
    r.residual_norms.resize(count);
    return r;
  }

  Mat X = random_block(n, b, rng);
  for (int it = 0; it < opts.max_iterations; ++it)
  {
    Mat Y = pencil.solve_shifted(pencil.apply_B(X));
    for (int j = 0; j < Y.cols(); ++j)
    {
      const double nrm = Y.col(j).norm();
      if (nrm > 0.0)
      {
        Y.col(j) /= nrm;
      }
    }
    const Ritz rr = rayleigh_ritz(Y, pencil.apply_A(Y), pencil.apply_B(Y));
    const int got = static_cast<int>(rr.theta.size());
    if (got < count)
    {
      throw SolverError("subspace lost rank; B is too degenerate for the requested count");
    }
    std::vector<double> res(count);
    bool converged = true;
    for (int i = 0; i < count; ++i)
    {
      res[i] = relative_residual(rr.AX.col(i), rr.BX.col(i), rr.X.col(i), rr.theta[i], nA, nB);
      converged = converged && res[i] <= opts.tolerance;
    }
    if (converged)
    {
      SpectralResult r;
      r.eigenvalues.assign(rr.theta.data(), rr.theta.data() + count);
      r.vectors = rr.X.leftCols(count);
      r.residual_norms = res;
      return r;
    }
    X = rr.X;
    if (got < b)
    {
      Mat Z(n, b);
      Z << X, random_block(n, b - got, rng);
      X = Z;
    }
  }
  throw SolverError("subspace iteration did not converge in " +
                    std::to_string(opts.max_iterations) + " iterations");
}

double default_zero_threshold(const std::vector<double> &values)
{
  double top = 0.0;
  for (double v : values)
  {
    top = std::max(top, std::abs(v));
  }
  return 1e-8 * top;
}

SpectralResult solve_gevp(const SpMat &A, const SpMat &B, int count, double zero_threshold,
                          const SolveOptions &opts)
{
  if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
  {
    throw DomainError("pencil matrices must be square and of equal size");
  }
  const int n = static_cast<int>(A.rows());
  auto factor = std::make_shared<Eigen::SimplicialLDLT<SpMat>>();
  double shift = opts.shift;
  auto positive_definite = [&](const SpMat &S) {
    factor->compute(S);
    if (factor->info() != Eigen::Success)
    {
      return false;
    }
    const auto &D = factor->vectorD();
    return D.minCoeff() > 1e-12 * D.cwiseAbs().maxCoeff();
  };
  if (std::isnan(shift))
  {
    shift = 0.0;
    if (!positive_definite(A))
    {
      const double scale = A.diagonal().cwiseAbs().sum() / std::max(B.diagonal().cwiseAbs().sum(), 1e-300);
      shift = -1e-3 * scale;
      if (!positive_definite(SpMat(A - shift * B)))
      {
        throw SolverError("A - shift B is not positive definite; the pencil is not definite");
      }
    }
  }
  else if (!positive_definite(SpMat(A - shift * B)))
  {
    throw SolverError("factorization of A - shift B failed or is indefinite");
  }

  Pencil pencil;
  pencil.n = n;
  pencil.shift = shift;
  pencil.apply_A = [&A](const Mat &X) { return Mat(A * X); };
  pencil.apply_B = [&B](const Mat &X) { return Mat(B * X); };
  pencil.solve_shifted = [factor](const Mat &X) { return Mat(factor->solve(X)); };
  SpectralResult r = subspace_iteration(pencil, count, opts);
  r.zero_threshold = zero_threshold >= 0.0 ? zero_threshold : default_zero_threshold(r.eigenvalues);
  r.kernel_dim = static_cast<int>(
    std::count_if(r.eigenvalues.begin(), r.eigenvalues.end(),
                  [&](double v) { return v < r.zero_threshold; }));
  return r;
}

namespace
{

void fill_dense_residuals(SpectralResult &r, const Mat &A, const Mat &B)
{
  Eigen::SelfAdjointEigenSolver<Mat> sa(A, Eigen::EigenvaluesOnly), sb(B, Eigen::EigenvaluesOnly);
  const double nA = sa.eigenvalues().cwiseAbs().maxCoeff();
  const double nB = sb.eigenvalues().cwiseAbs().maxCoeff();
  r.residual_norms.clear();
  for (std::size_t i = 0; i < r.eigenvalues.size(); ++i)
  {
    const Eigen::VectorXd x = r.vectors.col(static_cast<long>(i));
    r.residual_norms.push_back(relative_residual(A * x, B * x, x, r.eigenvalues[i], nA, nB));
  }
  r.zero_threshold = default_zero_threshold(r.eigenvalues);
  r.kernel_dim = static_cast<int>(
    std::count_if(r.eigenvalues.begin(), r.eigenvalues.end(),
                  [&](double v) { return v < r.zero_threshold; }));
}

}  // namespace

SpectralResult dense_gevp(const Mat &A, const Mat &B)
{
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(A, B);
  if (es.info() != Eigen::Success)
  {
    throw SolverError("dense generalized eigensolve failed (B not positive definite?)");
  }
  SpectralResult r;
  r.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  r.vectors = es.eigenvectors();
  fill_dense_residuals(r, A, B);
  return r;
}

SpectralResult dense_gevp_semidefinite(const Mat &A, const Mat &B, double c)
{
  const Mat Ac = A + c * B;
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(B, Ac);
  if (es.info() != Eigen::Success)
  {
    throw SolverError("dense eigensolve failed: A + c B is not positive definite");
  }
  const Eigen::VectorXd tau = es.eigenvalues();
  const double top = tau.cwiseAbs().maxCoeff();
  std::vector<std::pair<double, int>> order;
  for (int i = 0; i < tau.size(); ++i)
  {
    if (tau[i] > 1e-12 * top)
    {
      order.emplace_back(1.0 / tau[i] - c, i);
    }
  }
  std::sort(order.begin(), order.end());
  SpectralResult r;
  r.vectors.resize(A.rows(), static_cast<long>(order.size()));
  for (std::size_t k = 0; k < order.size(); ++k)
  {
    r.eigenvalues.push_back(order[k].first);
    Eigen::VectorXd x = es.eigenvectors().col(order[k].second);
    r.vectors.col(static_cast<long>(k)) = x / std::sqrt(x.dot(B * x));
  }
  fill_dense_residuals(r, A, B);
  return r;
}

Eigen::VectorXd gather(const Eigen::VectorXd &x, const std::vector<int> &idx)
{
  Eigen::VectorXd r(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
  {
    r[static_cast<long>(i)] = x[idx[i]];
  }
  return r;
}

SpMat restrict_matrix(const SpMat &A, const std::vector<int> &rows, const std::vector<int> &cols)
{
  std::vector<int> rmap(A.rows(), -1), cmap(A.cols(), -1);
  for (std::size_t i = 0; i < rows.size(); ++i)
  {
    rmap[rows[i]] = static_cast<int>(i);
  }
  for (std::size_t j = 0; j < cols.size(); ++j)
  {
    cmap[cols[j]] = static_cast<int>(j);
  }
  std::vector<Eigen::Triplet<double>> t;
  for (int k = 0; k < A.outerSize(); ++k)
  {
    for (SpMat::InnerIterator it(A, k); it; ++it)
    {
      const int r = rmap[it.row()], c = cmap[it.col()];
      if (r >= 0 && c >= 0)
      {
        t.emplace_back(r, c, it.value());
      }
    }
  }
  SpMat R(static_cast<long>(rows.size()), static_cast<long>(cols.size()));
  R.setFromTriplets(t.begin(), t.end());
  return R;
}

Eigen::MatrixXd trace_reduce(const SpMat &A, const std::vector<int> &boundary_dofs)
{
  std::vector<char> is_b(A.rows(), 0);
  for (int b : boundary_dofs)
  {
    is_b.at(b) = 1;
  }
  std::vector<int> interior;
  for (int i = 0; i < A.rows(); ++i)
  {
    if (!is_b[i])
    {
      interior.push_back(i);
    }
  }
  const Mat Abb = Mat(restrict_matrix(A, boundary_dofs, boundary_dofs));
  if (interior.empty())
  {
    return Abb;
  }
  const SpMat Aii = restrict_matrix(A, interior, interior);
  const SpMat Aib = restrict_matrix(A, interior, boundary_dofs);
  Eigen::SimplicialLDLT<SpMat> ldlt(Aii);
  if (ldlt.info() != Eigen::Success ||
      ldlt.vectorD().minCoeff() <= 1e-14 * ldlt.vectorD().cwiseAbs().maxCoeff())
  {
    throw SolverError("interior block is singular");
  }
  const SpMat Abi = Aib.transpose();
  Mat S = Abb;
  const long nb = static_cast<long>(boundary_dofs.size());
  constexpr long chunk = 64;
  for (long c0 = 0; c0 < nb; c0 += chunk)
  {
    const long w = std::min(chunk, nb - c0);
    const Mat X = ldlt.solve(Mat(Aib.middleCols(c0, w)));
    S.middleCols(c0, w) -= Abi * X;
  }
  return 0.5 * (S + S.transpose());
}

SpectralResult deflate(const SpectralResult &result, double zero_threshold)
{
  const double thr = zero_threshold >= 0.0 ? zero_threshold : default_zero_threshold(result.eigenvalues);
  SpectralResult r = result;
  r.eigenvalues.clear();
  r.residual_norms.clear();
  r.eigenvectors.clear();
  r.kernel_values = result.kernel_values;
  r.kernel_dim = static_cast<int>(result.kernel_values.size());
  std::vector<int> keep;
  for (std::size_t i = 0; i < result.eigenvalues.size(); ++i)
  {
    if (result.eigenvalues[i] < thr)
    {
      r.kernel_values.push_back(result.eigenvalues[i]);
      ++r.kernel_dim;
      continue;
    }
    keep.push_back(static_cast<int>(i));
    r.eigenvalues.push_back(result.eigenvalues[i]);
    if (i < result.residual_norms.size())
    {
      r.residual_norms.push_back(result.residual_norms[i]);
    }
    if (i < result.eigenvectors.size())
    {
      r.eigenvectors.push_back(result.eigenvectors[i]);
    }
  }
  if (result.vectors.cols() == static_cast<long>(result.eigenvalues.size()))
  {
    r.vectors.resize(result.vectors.rows(), static_cast<long>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k)
    {
      r.vectors.col(static_cast<long>(k)) = result.vectors.col(keep[k]);
    }
  }
  r.zero_threshold = thr;
  return r;
}

}  // namespace ksforms
