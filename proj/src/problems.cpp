// Copyright 2026 The ksforms Authors
// SPDX-License-Identifier: Apache-2.0

#include "ksforms/problems.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Cholesky>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include "ksforms/error.hpp"
#include "ksforms/geometry.hpp"

namespace ksforms
{

namespace
{

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using Triplet = Eigen::Triplet<double>;

bool is_biharmonic(const std::string &id)
{
  return id == "bsd1" || id == "bsd2" || id == "bsd_scalar" || id == "bsn_scalar";
}

// Length scale of the domain: radius of the disk of equal area.
double length_scale(const Mesh &mesh) { return std::sqrt(mesh.total_area() / M_PI); }

void keep_first(SpectralResult &r, int k)
{
  const auto n = static_cast<std::size_t>(k);
  if (r.eigenvalues.size() > n)
  {
    r.eigenvalues.resize(n);
  }
  if (r.residual_norms.size() > n)
  {
    r.residual_norms.resize(n);
  }
  if (r.eigenvectors.size() > n)
  {
    r.eigenvectors.resize(n);
  }
  if (r.vectors.cols() > k)
  {
    r.vectors = r.vectors.leftCols(k).eval();
  }
}

// Kernel threshold. An explicit threshold wins. Otherwise the relative
// numeric threshold is used unless it finds fewer than `expected` kernel
// values while the first `expected` values are separated from the rest by a
// factor of at least 10; then the threshold is the geometric mean across that
// gap.
double kernel_threshold(const std::vector<double> &values, const ProblemSpec &spec, int expected)
{
  if (spec.zero_threshold >= 0.0)
  {
    return spec.zero_threshold;
  }
  const double numeric = default_zero_threshold(values);
  const auto below = std::count_if(values.begin(), values.end(),
                                   [numeric](double v) { return v < numeric; });
  const auto e = static_cast<std::size_t>(expected);
  if (below >= expected || values.size() <= e || expected == 0)
  {
    return numeric;
  }
  const double last = std::max(values[e - 1], 0.0);
  const double next = values[e];
  if (next > 0.0 && last < 0.1 * next)
  {
    return std::sqrt(std::max(last, numeric) * next);
  }
  return numeric;
}

// Dimension of the kernel predicted by the topology of the domain.
int expected_kernel(const ProblemSpec &spec)
{
  const std::string &id = spec.problem_id;
  if (id == "neumann_absolute" || id == "steklov")
  {
    return spec.p == 2 ? 0 : betti_number(spec.mesh, spec.p);
  }
  return id == "bsn_scalar" ? betti_number(spec.mesh, 0) : 0;
}

// Deflates the kernel and keeps k values; `solve(count)` is retried with a
// larger count until k nonzero values are available.
SpectralResult solve_past_kernel(const std::function<SpectralResult(int)> &solve,
                                 const ProblemSpec &spec, int n)
{
  const int expected = expected_kernel(spec);
  int extra = 3 + expected;
  for (;;)
  {
    const int count = std::min(n, spec.k + extra);
    SpectralResult raw = solve(count);
    SpectralResult r = deflate(raw, kernel_threshold(raw.eigenvalues, spec, expected));
    if (static_cast<int>(r.eigenvalues.size()) >= spec.k)
    {
      keep_first(r, spec.k);
      return r;
    }
    if (count == n)
    {
      throw DomainError("discrete space has fewer than k nonzero eigenvalues; refine the mesh");
    }
    extra *= 2;
  }
}

SpectralResult finish_dense(SpectralResult r, const ProblemSpec &spec)
{
  r = deflate(r, kernel_threshold(r.eigenvalues, spec, expected_kernel(spec)));
  if (static_cast<int>(r.eigenvalues.size()) < spec.k)
  {
    throw DomainError("discrete space has fewer than k nonzero eigenvalues; refine the mesh");
  }
  keep_first(r, spec.k);
  r.problem_id = spec.problem_id;
  r.p = spec.p;
  return r;
}

FormField make_field(const FESpace &space, int p, const Vec &coefficients)
{
  FormField f = FormField::zeros(space, p);
  f.coefficients = coefficients;
  return f;
}

std::vector<int> complement(int n, const std::vector<int> &idx)
{
  std::vector<char> mark(n, 0);
  for (int i : idx)
  {
    mark[i] = 1;
  }
  std::vector<int> rest;
  for (int i = 0; i < n; ++i)
  {
    if (!mark[i])
    {
      rest.push_back(i);
    }
  }
  return rest;
}

// Scalar discrete harmonic extension: boundary values g on `bnodes`, interior
// values -K_ii^{-1} K_ib g.
struct HarmonicTrace
{
  std::vector<int> bnodes, inodes;
  SpMat Kii, Kib, Mii, Mib, Mbb_sparse;
  std::shared_ptr<Eigen::SimplicialLDLT<SpMat>> Kii_solver;
  Mat Mbb;  // boundary mass on the boundary nodes
  Mat H;    // Gram matrix of extensions in the interior mass

  Mat extend(const Mat &G, int num_nodes) const
  {
    Mat U = Mat::Zero(num_nodes, G.cols());
    for (std::size_t j = 0; j < bnodes.size(); ++j)
    {
      U.row(bnodes[j]) = G.row(static_cast<long>(j));
    }
    if (!inodes.empty())
    {
      const Mat Ui = -Kii_solver->solve(Mat(Kib * G));
      for (std::size_t j = 0; j < inodes.size(); ++j)
      {
        U.row(inodes[j]) = Ui.row(static_cast<long>(j));
      }
    }
    return U;
  }
};

HarmonicTrace harmonic_trace(const FESpace &space, const ScalarBlocks &blocks)
{
  HarmonicTrace h;
  h.bnodes = space.boundary_nodes();
  h.inodes = space.interior_nodes();
  const SpMat Mb = restrict_matrix(blocks.Mb, h.bnodes, h.bnodes);
  h.Mbb = Mat(Mb);
  const SpMat Mbb_int = restrict_matrix(blocks.M, h.bnodes, h.bnodes);
  if (h.inodes.empty())
  {
    h.H = Mat(Mbb_int);
    return h;
  }
  h.Kii = restrict_matrix(blocks.K, h.inodes, h.inodes);
  h.Kib = restrict_matrix(blocks.K, h.inodes, h.bnodes);
  h.Mii = restrict_matrix(blocks.M, h.inodes, h.inodes);
  h.Mib = restrict_matrix(blocks.M, h.inodes, h.bnodes);
  h.Kii_solver = std::make_shared<Eigen::SimplicialLDLT<SpMat>>(h.Kii);
  if (h.Kii_solver->info() != Eigen::Success ||
      h.Kii_solver->vectorD().minCoeff() <= 1e-14 * h.Kii_solver->vectorD().cwiseAbs().maxCoeff())
  {
    throw SolverError("interior block is singular");
  }
  const long nb = static_cast<long>(h.bnodes.size());
  const SpMat Kbi = h.Kib.transpose();
  const SpMat Mbi = h.Mib.transpose();
  h.H.resize(nb, nb);
  constexpr long chunk = 64;
  for (long c0 = 0; c0 < nb; c0 += chunk)
  {
    const long w = std::min(chunk, nb - c0);
    const Mat Ui = -h.Kii_solver->solve(Mat(h.Kib.middleCols(c0, w)));
    const Mat zi = h.Mii * Ui + Mat(h.Mib.middleCols(c0, w));
    const Mat zb = Mbi * Ui + Mat(Mbb_int.middleCols(c0, w));
    h.H.middleCols(c0, w) = zb - Kbi * h.Kii_solver->solve(zi);
  }
  h.H = (0.5 * (h.H + h.H.transpose())).eval();
  return h;
}

// Tangent columns of the boundary nodes for 1-forms: rows c * nb + j for
// component c of boundary node j; corner nodes get no column.
Mat boundary_tangents(const FESpace &space, const HarmonicTrace &h, double corner_angle_deg)
{
  const auto frames = boundary_frames(space, corner_angle_deg);
  std::vector<int> pos(space.num_nodes(), -1);
  for (std::size_t j = 0; j < h.bnodes.size(); ++j)
  {
    pos[h.bnodes[j]] = static_cast<int>(j);
  }
  const long nb = static_cast<long>(h.bnodes.size());
  std::vector<std::pair<int, Vec2>> cols;
  for (const auto &f : frames)
  {
    if (!f.corner)
    {
      cols.emplace_back(pos[f.node], f.tangent());
    }
  }
  Mat T = Mat::Zero(2 * nb, static_cast<long>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c)
  {
    T(cols[c].first, static_cast<long>(c)) = cols[c].second.x();
    T(nb + cols[c].first, static_cast<long>(c)) = cols[c].second.y();
  }
  return T;
}

// Dofs c * num_nodes + node for every component and the given nodes.
std::vector<int> component_dofs(const std::vector<int> &nodes, int ncomp, int num_nodes)
{
  std::vector<int> dofs;
  for (int c = 0; c < ncomp; ++c)
  {
    for (int i : nodes)
    {
      dofs.push_back(c * num_nodes + i);
    }
  }
  return dofs;
}

struct BsdData
{
  std::shared_ptr<const FESpace> space;
  ScalarBlocks blocks;
  HarmonicTrace trace;
  Mat T;  // boundary data = T s, rows c * nb + j
  Mat D;  // denominator mass of s
};

BsdData bsd_data(const ProblemSpec &spec)
{
  BsdData d;
  d.space = std::make_shared<const FESpace>(spec.mesh, spec.nodal_order);
  d.blocks = assemble_scalar(*d.space);
  d.trace = harmonic_trace(*d.space, d.blocks);
  const long nb = static_cast<long>(d.trace.bnodes.size());
  if (spec.p == 1)
  {
    d.T = boundary_tangents(*d.space, d.trace, spec.corner_angle_deg);
    const DiscreteOperators ops = assemble(d.space, 1);
    const auto bdofs = component_dofs(d.trace.bnodes, 2, d.space->num_nodes());
    const Mat Mt = Mat(restrict_matrix(ops.Mb, bdofs, bdofs));
    d.D = d.T.transpose() * Mt * d.T;
  }
  else
  {
    d.T = Mat::Identity(nb, nb);
    d.D = d.trace.Mbb;
  }
  return d;
}

// Boundary mass applied per component to boundary data (rows c * nb + j).
Mat per_component(const Mat &block, const Mat &X, int ncomp)
{
  const long nb = block.rows();
  Mat Y(X.rows(), X.cols());
  for (int c = 0; c < ncomp; ++c)
  {
    Y.middleRows(c * nb, nb) = block * X.middleRows(c * nb, nb);
  }
  return Y;
}

}  // namespace

void ProblemSpec::validate() const
{
  const auto &ids = problem_ids();
  if (std::find(ids.begin(), ids.end(), problem_id) == ids.end())
  {
    throw DomainError("unknown problem_id '" + problem_id + "'");
  }
  if (p < 0 || p > 2)
  {
    throw DomainError("form degree p must be 0, 1 or 2");
  }
  if ((problem_id == "bsd_scalar" || problem_id == "bsn_scalar") && p != 0)
  {
    throw DomainError(problem_id + " is a scalar problem and requires p = 0");
  }
  if ((problem_id == "steklov" || problem_id == "bsd2") && p == 2)
  {
    throw DomainError(problem_id + " is defined for p = 0 and p = 1 only");
  }
  if (k < 1)
  {
    throw DomainError("eigenvalue count k must be positive");
  }
  if (nodal_order != 1 && nodal_order != 2)
  {
    throw DomainError("nodal_order must be 1 or 2");
  }
  if (is_biharmonic(problem_id) && problem_id != "bsd1" && nodal_order < 2)
  {
    throw DomainError(problem_id + " requires nodal_order 2");
  }
  if (mesh.num_triangles() == 0)
  {
    throw DomainError("mesh is empty");
  }
}

const std::vector<std::string> &problem_ids()
{
  static const std::vector<std::string> ids = {"dirichlet", "neumann_absolute", "steklov", "bsd1",
                                               "bsd2",      "bsd_scalar",       "bsn_scalar"};
  return ids;
}

Discretization discretize(const ProblemSpec &spec, const std::string &constraint)
{
  spec.validate();
  const bool dirichlet = constraint == "dirichlet";
  if (!dirichlet && constraint != "absolute")
  {
    throw DomainError("constraint must be 'dirichlet' or 'absolute'");
  }
  Discretization d;
  d.space = std::make_shared<const FESpace>(spec.mesh, spec.nodal_order);
  d.ops = assemble(d.space, spec.p);
  const FESpace &V = *d.space;
  const int nn = V.num_nodes();
  const int nc = form_components(spec.p);
  const auto &mask = V.boundary_mask();
  std::vector<int> frame_of(nn, -1);
  std::vector<BoundaryNodeFrame> frames;
  if (!dirichlet && spec.p == 1)
  {
    frames = boundary_frames(V, spec.corner_angle_deg);
    for (std::size_t i = 0; i < frames.size(); ++i)
    {
      frame_of[frames[i].node] = static_cast<int>(i);
    }
  }
  std::vector<Triplet> t;
  int col = 0;
  for (int i = 0; i < nn; ++i)
  {
    if (!mask[i])
    {
      for (int c = 0; c < nc; ++c)
      {
        t.emplace_back(c * nn + i, col++, 1.0);
      }
      continue;
    }
    if (dirichlet || spec.p == 2)
    {
      continue;
    }
    if (spec.p == 0)
    {
      t.emplace_back(i, col, 1.0);
    }
    else
    {
      const BoundaryNodeFrame &f = frames.at(frame_of[i]);
      if (f.corner)
      {
        continue;
      }
      const Vec2 tan = f.tangent();
      t.emplace_back(i, col, tan.x());
      t.emplace_back(nn + i, col, tan.y());
    }
    d.boundary_columns.push_back(col++);
  }
  d.P.resize(nc * nn, col);
  d.P.setFromTriplets(t.begin(), t.end());
  return d;
}

namespace
{

SpectralResult volume_spectrum(const ProblemSpec &spec, const std::string &constraint, double shift)
{
  const Discretization d = discretize(spec, constraint);
  const SpMat Pt = d.P.transpose();
  const SpMat A = Pt * d.ops.B * d.P;
  const SpMat Mr = Pt * d.ops.M * d.P;
  const int n = static_cast<int>(A.rows());
  if (n == 0)
  {
    throw DomainError("no interior degrees of freedom; refine the mesh");
  }
  SolveOptions opts = spec.solve;
  if (std::isnan(opts.shift))
  {
    opts.shift = shift;
  }
  SpectralResult r = solve_past_kernel(
    [&](int count) { return solve_gevp(A, Mr, count, spec.zero_threshold, opts); }, spec, n);
  r.problem_id = spec.problem_id;
  r.p = spec.p;
  for (long i = 0; i < r.vectors.cols(); ++i)
  {
    r.eigenvectors.push_back(make_field(*d.space, spec.p, d.P * r.vectors.col(i)));
  }
  return r;
}

}  // namespace

SpectralResult dirichlet_spectrum(const ProblemSpec &spec)
{
  return volume_spectrum(spec, "dirichlet", 0.0);
}

SpectralResult neumann_absolute_spectrum(const ProblemSpec &spec)
{
  const double L = length_scale(spec.mesh);
  return volume_spectrum(spec, "absolute", -1.0 / (L * L));
}

SpectralResult steklov_spectrum(const ProblemSpec &spec)
{
  const Discretization d = discretize(spec, "absolute");
  const SpMat Pt = d.P.transpose();
  const SpMat A = Pt * d.ops.B * d.P;
  const SpMat Mb = Pt * d.ops.Mb * d.P;
  const auto &bcols = d.boundary_columns;
  if (bcols.empty())
  {
    throw DomainError("no boundary degrees of freedom");
  }
  const Mat S = trace_reduce(A, bcols);
  const Mat Mbb = Mat(restrict_matrix(Mb, bcols, bcols));
  SpectralResult r = finish_dense(dense_gevp(S, Mbb), spec);

  const int n = static_cast<int>(A.rows());
  const auto icols = complement(n, bcols);
  Mat X = Mat::Zero(n, r.vectors.cols());
  for (std::size_t j = 0; j < bcols.size(); ++j)
  {
    X.row(bcols[j]) = r.vectors.row(static_cast<long>(j));
  }
  if (!icols.empty())
  {
    const SpMat Aii = restrict_matrix(A, icols, icols);
    const SpMat Aib = restrict_matrix(A, icols, bcols);
    Eigen::SimplicialLDLT<SpMat> solver(Aii);
    const Mat Xi = -solver.solve(Mat(Aib * r.vectors));
    for (std::size_t j = 0; j < icols.size(); ++j)
    {
      X.row(icols[j]) = Xi.row(static_cast<long>(j));
    }
  }
  r.vectors = X;
  for (long i = 0; i < X.cols(); ++i)
  {
    r.eigenvectors.push_back(make_field(*d.space, spec.p, d.P * X.col(i)));
  }
  return r;
}

SpectralResult harmonic_ratio_spectrum(const ProblemSpec &spec)
{
  spec.validate();
  const auto space = std::make_shared<const FESpace>(spec.mesh, spec.nodal_order);
  const ScalarBlocks blocks = assemble_scalar(*space);
  const HarmonicTrace h = harmonic_trace(*space, blocks);
  const int nc = form_components(spec.p);
  const int nn = space->num_nodes();
  // Componentwise decoupled: scalar values, each repeated per component.
  ProblemSpec scalar = spec;
  scalar.k = (spec.k + nc - 1) / nc;
  SpectralResult s = finish_dense(dense_gevp(h.Mbb, h.H), scalar);
  const Mat U = h.extend(s.vectors, nn);

  SpectralResult r;
  r.problem_id = spec.problem_id == "bsd1" ? "bsd1" : "harmonic_ratio";
  r.p = spec.p;
  r.zero_threshold = s.zero_threshold;
  r.kernel_dim = nc * s.kernel_dim;
  for (double v : s.kernel_values)
  {
    r.kernel_values.insert(r.kernel_values.end(), nc, v);
  }
  r.vectors = Mat::Zero(static_cast<long>(nc) * nn, static_cast<long>(s.eigenvalues.size()) * nc);
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
  {
    for (int c = 0; c < nc; ++c)
    {
      const long col = static_cast<long>(i) * nc + c;
      r.eigenvalues.push_back(s.eigenvalues[i]);
      r.residual_norms.push_back(s.residual_norms[i]);
      r.vectors.col(col).segment(static_cast<long>(c) * nn, nn) = U.col(static_cast<long>(i));
      r.eigenvectors.push_back(make_field(*space, spec.p, r.vectors.col(col)));
    }
  }
  keep_first(r, spec.k);
  return r;
}

double bsd1_first(const ProblemSpec &spec)
{
  ProblemSpec one = spec;
  one.k = 1;
  return harmonic_ratio_spectrum(one).eigenvalues.front();
}

SpectralResult bsd2_spectrum(const ProblemSpec &spec)
{
  spec.validate();
  const BsdData d = bsd_data(spec);
  const int nc = form_components(spec.p);
  const int nn = d.space->num_nodes();
  const HarmonicTrace &h = d.trace;
  if (d.T.cols() == 0)
  {
    throw DomainError("no admissible boundary degrees of freedom");
  }
  // tau_b = -H^{-1} Mb psi per component; numerator psi^T Mb H^{-1} Mb psi.
  const Eigen::LLT<Mat> Hllt(h.H);
  if (Hllt.info() != Eigen::Success)
  {
    throw SolverError("extension Gram matrix is not positive definite");
  }
  const Mat MbT = per_component(h.Mbb, d.T, nc);
  Mat HinvMbT(MbT.rows(), MbT.cols());
  const long nb = h.Mbb.rows();
  for (int c = 0; c < nc; ++c)
  {
    HinvMbT.middleRows(c * nb, nb) = Hllt.solve(MbT.middleRows(c * nb, nb));
  }
  Mat N = MbT.transpose() * HinvMbT;
  N = (0.5 * (N + N.transpose())).eval();
  SpectralResult r = finish_dense(dense_gevp(N, d.D), spec);

  // Recover w from M tau = K w - Mb psi at interior rows, per component.
  const Mat tau_b = -HinvMbT * r.vectors;
  r.vectors.resize(static_cast<long>(nc) * nn, tau_b.cols());
  r.vectors.setZero();
  for (int c = 0; c < nc; ++c)
  {
    const Mat tau = h.extend(tau_b.middleRows(c * nb, nb), nn);
    if (h.inodes.empty())
    {
      continue;
    }
    const Mat Mtau = d.blocks.M * tau;
    Mat rhs_i(static_cast<long>(h.inodes.size()), tau.cols());
    for (std::size_t j = 0; j < h.inodes.size(); ++j)
    {
      rhs_i.row(static_cast<long>(j)) = Mtau.row(h.inodes[j]);
    }
    const Mat wi = h.Kii_solver->solve(rhs_i);
    for (std::size_t j = 0; j < h.inodes.size(); ++j)
    {
      r.vectors.row(static_cast<long>(c) * nn + h.inodes[j]) = wi.row(static_cast<long>(j));
    }
  }
  for (long i = 0; i < r.vectors.cols(); ++i)
  {
    r.eigenvectors.push_back(make_field(*d.space, spec.p, r.vectors.col(i)));
  }
  return r;
}

SpectralResult bsd_scalar_spectrum(const ProblemSpec &spec)
{
  ProblemSpec s = spec;
  s.p = 0;
  SpectralResult r = bsd2_spectrum(s);
  r.problem_id = spec.problem_id;
  return r;
}

SpectralResult bsn_scalar_spectrum(const ProblemSpec &spec)
{
  spec.validate();
  if (spec.p != 0)
  {
    throw DomainError("bsn_scalar requires p = 0");
  }
  const auto space = std::make_shared<const FESpace>(spec.mesh, spec.nodal_order);
  const ScalarBlocks blocks = assemble_scalar(*space);
  const int n = space->num_nodes();
  const double L = length_scale(spec.mesh);
  const double shift = std::isnan(spec.solve.shift) ? -1.0 / (L * L * L) : spec.solve.shift;
  if (!(shift < 0.0))
  {
    throw DomainError("bsn_scalar needs a negative shift");
  }

  auto Msolver = std::make_shared<Eigen::SimplicialLDLT<SpMat>>(blocks.M);
  if (Msolver->info() != Eigen::Success)
  {
    throw SolverError("mass matrix factorization failed");
  }
  // (K M^{-1} K - shift Mb) x = b through [[M, K], [K, shift Mb]] [y; x] = [0; -b].
  std::vector<Triplet> t;
  auto add = [&t](const SpMat &A, int r0, int c0, double s) {
    for (int k = 0; k < A.outerSize(); ++k)
    {
      for (SpMat::InnerIterator it(A, k); it; ++it)
      {
        t.emplace_back(r0 + static_cast<int>(it.row()), c0 + static_cast<int>(it.col()), s * it.value());
      }
    }
  };
  add(blocks.M, 0, 0, 1.0);
  add(blocks.K, 0, n, 1.0);
  add(blocks.K, n, 0, 1.0);
  add(blocks.Mb, n, n, shift);
  SpMat Z(2 * n, 2 * n);
  Z.setFromTriplets(t.begin(), t.end());
  Z.makeCompressed();
  auto lu = std::make_shared<Eigen::SparseLU<SpMat>>();
  lu->compute(Z);
  if (lu->info() != Eigen::Success)
  {
    throw SolverError("saddle-system factorization failed: " + lu->lastErrorMessage());
  }

  const SpMat &K = blocks.K;
  const SpMat &Mb = blocks.Mb;
  Pencil pencil;
  pencil.n = n;
  pencil.shift = shift;
  pencil.apply_A = [&K, Msolver](const Mat &X) { return Mat(K * Msolver->solve(Mat(K * X))); };
  pencil.apply_B = [&Mb](const Mat &X) { return Mat(Mb * X); };
  pencil.solve_shifted = [lu, n](const Mat &X) {
    Mat rhs = Mat::Zero(2 * n, X.cols());
    rhs.bottomRows(n) = -X;
    const Mat sol = lu->solve(rhs);
    return Mat(sol.bottomRows(n));
  };
  SpectralResult r = solve_past_kernel(
    [&](int count) {
      SpectralResult s = subspace_iteration(pencil, count, spec.solve);
      s.zero_threshold = spec.zero_threshold >= 0.0 ? spec.zero_threshold
                                                    : default_zero_threshold(s.eigenvalues);
      return s;
    },
    spec, static_cast<int>(space->boundary_nodes().size()));
  r.problem_id = spec.problem_id;
  r.p = 0;
  for (long i = 0; i < r.vectors.cols(); ++i)
  {
    r.eigenvectors.push_back(make_field(*space, 0, r.vectors.col(i)));
  }
  return r;
}

SpectralResult solve_problem(const ProblemSpec &spec)
{
  spec.validate();
  const std::string &id = spec.problem_id;
  if (id == "dirichlet")
  {
    return dirichlet_spectrum(spec);
  }
  if (id == "neumann_absolute")
  {
    return neumann_absolute_spectrum(spec);
  }
  if (id == "steklov")
  {
    return steklov_spectrum(spec);
  }
  if (id == "bsd1")
  {
    return harmonic_ratio_spectrum(spec);
  }
  if (id == "bsd2")
  {
    return bsd2_spectrum(spec);
  }
  if (id == "bsd_scalar")
  {
    return bsd_scalar_spectrum(spec);
  }
  return bsn_scalar_spectrum(spec);
}

FullSystem assemble_full_system(const ProblemSpec &spec)
{
  spec.validate();
  const std::string &id = spec.problem_id;
  const int nc = form_components(spec.p);
  const double L = length_scale(spec.mesh);
  FullSystem fs;
  {
    const FESpace probe(spec.mesh, spec.nodal_order);
    fs.primal_dofs = nc * probe.num_nodes();
  }
  if (fs.primal_dofs > 500)
  {
    throw DomainError("dense brute force is limited to 500 degrees of freedom; got " +
                      std::to_string(fs.primal_dofs));
  }
  if (id == "dirichlet" || id == "neumann_absolute" || id == "steklov")
  {
    const Discretization d = discretize(spec, id == "dirichlet" ? "dirichlet" : "absolute");
    const SpMat Pt = d.P.transpose();
    fs.A = Mat(Pt * d.ops.B * d.P);
    if (id == "steklov")
    {
      fs.kind = "semidefinite";
      fs.B = Mat(Pt * d.ops.Mb * d.P);
      fs.c = 1.0 / L;
    }
    else
    {
      fs.kind = "definite";
      fs.B = Mat(Pt * d.ops.M * d.P);
    }
    fs.deflate_kernel = id != "dirichlet";
    return fs;
  }

  const FESpace space(spec.mesh, spec.nodal_order);
  const ScalarBlocks blocks = assemble_scalar(space);
  const int nn = space.num_nodes();
  fs.kind = "semidefinite";
  if (id == "bsn_scalar")
  {
    const Mat K = Mat(blocks.K);
    fs.A = K * Eigen::LLT<Mat>(Mat(blocks.M)).solve(K);
    fs.A = (0.5 * (fs.A + fs.A.transpose())).eval();
    fs.B = Mat(blocks.Mb);
    fs.c = 1.0 / (L * L * L);
    fs.deflate_kernel = true;
    return fs;
  }

  // Unknowns (interior w, boundary parameters s); tau = M^{-1}(K0 w + C s)
  // and the quotient is |tau|_M^2 / s^T D s.
  const int p = spec.p;
  const auto inodes = space.interior_nodes();
  const auto bnodes = space.boundary_nodes();
  const auto idofs = component_dofs(inodes, nc, nn);
  const auto bdofs = component_dofs(bnodes, nc, nn);
  const DiscreteOperators ops = assemble(std::make_shared<const FESpace>(space), p);
  std::vector<int> all(static_cast<std::size_t>(nc) * nn);
  for (std::size_t i = 0; i < all.size(); ++i)
  {
    all[i] = static_cast<int>(i);
  }
  const Mat G0 = Mat(restrict_matrix(ops.G, all, idofs));
  const Mat Mbf = Mat(restrict_matrix(ops.Mb_full, all, bdofs));
  Mat T, D;
  if (id == "bsd2" && p == 1)
  {
    HarmonicTrace h;
    h.bnodes = bnodes;
    T = boundary_tangents(space, h, spec.corner_angle_deg);
    D = T.transpose() * Mat(restrict_matrix(ops.Mb, bdofs, bdofs)) * T;
  }
  else
  {
    T = Mat::Identity(static_cast<long>(bdofs.size()), static_cast<long>(bdofs.size()));
    D = Mat(restrict_matrix(ops.Mb_full, bdofs, bdofs));
  }
  Mat W(G0.rows(), G0.cols() + T.cols());
  W << G0, Mbf * T;
  const Mat Mfull = Mat(ops.M);
  fs.A = W.transpose() * Eigen::LLT<Mat>(Mfull).solve(W);
  fs.A = (0.5 * (fs.A + fs.A.transpose())).eval();
  fs.B = Mat::Zero(fs.A.rows(), fs.A.cols());
  fs.B.bottomRightCorner(D.rows(), D.cols()) = D;
  fs.c = 1.0 / L;
  return fs;
}

}  // namespace ksforms
