// Copyright 2026 The ksforms Authors
// SPDX-License-Identifier: Apache-2.0

#include "ksforms/forms_core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <tuple>

#include <Eigen/SparseCholesky>

#include "ksforms/error.hpp"
#include "ksforms/quadrature.hpp"

namespace ksforms
{

namespace
{

using Trip = Eigen::Triplet<double>;

SpMat from_triplets(int rows, int cols, const std::vector<Trip> &t)
{
  SpMat A(rows, cols);
  A.setFromTriplets(t.begin(), t.end());
  A.prune(0.0);
  return A;
}

// Assembles a block matrix; an empty entry (0 x 0) stands for a zero block.
SpMat block(const std::vector<std::vector<SpMat>> &b, int block_rows, int block_cols)
{
  std::vector<Trip> t;
  for (std::size_t i = 0; i < b.size(); ++i)
  {
    for (std::size_t j = 0; j < b[i].size(); ++j)
    {
      const SpMat &m = b[i][j];
      for (int k = 0; k < m.outerSize(); ++k)
      {
        for (SpMat::InnerIterator it(m, k); it; ++it)
        {
          t.emplace_back(static_cast<int>(i) * block_rows + it.row(),
                         static_cast<int>(j) * block_cols + it.col(), it.value());
        }
      }
    }
  }
  return from_triplets(static_cast<int>(b.size()) * block_rows,
                       static_cast<int>(b.front().size()) * block_cols, t);
}

}  // namespace

FormField FormField::zeros(const FESpace &space, int p)
{
  if (p < 0 || p > 2)
  {
    throw DomainError("form degree must be 0, 1 or 2");
  }
  FormField f;
  f.p = p;
  f.order = space.order();
  f.num_nodes = space.num_nodes();
  f.coefficients = Eigen::VectorXd::Zero(form_components(p) * space.num_nodes());
  return f;
}

FormField FormField::interpolate(const FESpace &space, const PolyForm &w)
{
  FormField f = zeros(space, w.degree());
  const int nn = space.num_nodes();
  for (int c = 0; c < w.size(); ++c)
  {
    for (int i = 0; i < nn; ++i)
    {
      f.coefficients[c * nn + i] = w[c](space.nodes()[i]);
    }
  }
  return f;
}

ScalarBlocks assemble_scalar(const FESpace &space)
{
  const Mesh &mesh = space.mesh();
  const int nn = space.num_nodes();
  const int nl = space.nodes_per_cell();
  const TriangleRule rule = triangle_rule(2 * space.order() + 2);

  std::vector<Trip> tm, ts[2][2], tc[2];
  Eigen::VectorXd N;
  Eigen::MatrixXd dlam;
  for (int t = 0; t < mesh.num_triangles(); ++t)
  {
    const auto G = space.barycentric_gradients(t);
    const double area = mesh.triangle_area(t);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(nl, nl);
    Eigen::MatrixXd s[2][2], c[2];
    for (auto &row : s)
    {
      for (auto &e : row)
      {
        e = Eigen::MatrixXd::Zero(nl, nl);
      }
    }
    c[0] = c[1] = Eigen::MatrixXd::Zero(nl, nl);
    for (std::size_t q = 0; q < rule.points.size(); ++q)
    {
      space.shape(rule.points[q], N, dlam);
      const Eigen::MatrixXd grad = dlam * G;  // nl x 2
      const double w = rule.weights[q] * area;
      m.noalias() += w * N * N.transpose();
      for (int i = 0; i < 2; ++i)
      {
        c[i].noalias() += w * grad.col(i) * N.transpose();
        for (int j = 0; j < 2; ++j)
        {
          s[i][j].noalias() += w * grad.col(i) * grad.col(j).transpose();
        }
      }
    }
    const auto &cn = space.cell_nodes(t);
    for (int a = 0; a < nl; ++a)
    {
      for (int b = 0; b < nl; ++b)
      {
        tm.emplace_back(cn[a], cn[b], m(a, b));
        for (int i = 0; i < 2; ++i)
        {
          tc[i].emplace_back(cn[a], cn[b], c[i](a, b));
          for (int j = 0; j < 2; ++j)
          {
            ts[i][j].emplace_back(cn[a], cn[b], s[i][j](a, b));
          }
        }
      }
    }
  }

  ScalarBlocks sb;
  sb.M = from_triplets(nn, nn, tm);
  for (int i = 0; i < 2; ++i)
  {
    sb.C[i] = from_triplets(nn, nn, tc[i]);
    for (int j = 0; j < 2; ++j)
    {
      sb.S[i][j] = from_triplets(nn, nn, ts[i][j]);
    }
  }
  sb.K = sb.S[0][0] + sb.S[1][1];

  const LineRule lr = line_rule(2 * space.order() + 2);
  const int fl = space.nodes_per_facet();
  std::vector<Trip> tb, tt[2][2], tnn[2][2], tn[2], ttb[2];
  const auto &facets = mesh.boundary_facets();
  for (std::size_t f = 0; f < facets.size(); ++f)
  {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(fl, fl);
    for (std::size_t q = 0; q < lr.points.size(); ++q)
    {
      const Eigen::VectorXd phi = space.facet_shape(lr.points[q]);
      m.noalias() += lr.weights[q] * facets[f].length * phi * phi.transpose();
    }
    const Vec2 n = facets[f].outward_normal;
    const Vec2 tg = facets[f].tangent();
    const auto &fn = space.facet_nodes(static_cast<int>(f));
    for (int a = 0; a < fl; ++a)
    {
      for (int b = 0; b < fl; ++b)
      {
        tb.emplace_back(fn[a], fn[b], m(a, b));
        for (int i = 0; i < 2; ++i)
        {
          tn[i].emplace_back(fn[a], fn[b], n[i] * m(a, b));
          ttb[i].emplace_back(fn[a], fn[b], tg[i] * m(a, b));
          for (int j = 0; j < 2; ++j)
          {
            tt[i][j].emplace_back(fn[a], fn[b], tg[i] * tg[j] * m(a, b));
            tnn[i][j].emplace_back(fn[a], fn[b], n[i] * n[j] * m(a, b));
          }
        }
      }
    }
  }
  sb.Mb = from_triplets(nn, nn, tb);
  for (int i = 0; i < 2; ++i)
  {
    sb.Nb[i] = from_triplets(nn, nn, tn[i]);
    sb.Tb[i] = from_triplets(nn, nn, ttb[i]);
    for (int j = 0; j < 2; ++j)
    {
      sb.T[i][j] = from_triplets(nn, nn, tt[i][j]);
      sb.N[i][j] = from_triplets(nn, nn, tnn[i][j]);
    }
  }
  return sb;
}

DiscreteOperators assemble(const Mesh &mesh, int p, int nodal_order)
{
  return assemble(std::make_shared<const FESpace>(mesh, nodal_order), p);
}

DiscreteOperators assemble(std::shared_ptr<const FESpace> space, int p)
{
  if (p < 0 || p > 2)
  {
    throw DomainError("form degree must be 0, 1 or 2");
  }
  const ScalarBlocks s = assemble_scalar(*space);
  const int nn = space->num_nodes();
  const SpMat Z(nn, nn);

  DiscreteOperators ops;
  ops.p = p;
  ops.space = space;
  switch (p)
  {
    case 0:
      ops.M = s.M;
      ops.B = s.K;
      ops.G = s.K;
      ops.Mb = s.Mb;
      ops.Mb_full = s.Mb;
      ops.Mb_normal = Z;
      break;
    case 1:
    {
      const SpMat cross01 = s.S[0][1] - s.S[1][0];
      ops.M = block({{s.M, Z}, {Z, s.M}}, nn, nn);
      ops.B = block({{s.K, cross01}, {SpMat(-cross01), s.K}}, nn, nn);
      ops.G = block({{s.K, Z}, {Z, s.K}}, nn, nn);
      ops.Mb = block({{s.T[0][0], s.T[0][1]}, {s.T[1][0], s.T[1][1]}}, nn, nn);
      ops.Mb_full = block({{s.Mb, Z}, {Z, s.Mb}}, nn, nn);
      ops.Mb_normal = block({{s.N[0][0], s.N[0][1]}, {s.N[1][0], s.N[1][1]}}, nn, nn);
      ops.R = block({{SpMat(s.C[0] - s.Nb[0]), SpMat(s.C[1] - s.Nb[1])}}, nn, nn);
      ops.M_lower = s.M;
      break;
    }
    default:
      ops.M = s.M;
      ops.B = s.K;
      ops.G = s.K;
      ops.Mb = Z;
      ops.Mb_full = s.Mb;
      ops.Mb_normal = s.Mb;
      ops.R = block({{SpMat(-s.C[1] - s.Tb[0])}, {SpMat(s.C[0] - s.Tb[1])}}, nn, nn);
      ops.M_lower = block({{s.M, Z}, {Z, s.M}}, nn, nn);
      break;
  }

  const auto &facets = space->mesh().boundary_facets();
  const int fl = space->nodes_per_facet();
  const int rows = static_cast<int>(facets.size()) * fl;
  std::vector<Trip> tt, tn;
  for (std::size_t f = 0; f < facets.size(); ++f)
  {
    const Vec2 n = facets[f].outward_normal, tg = facets[f].tangent();
    const auto &fn = space->facet_nodes(static_cast<int>(f));
    for (int j = 0; j < fl; ++j)
    {
      const int r = static_cast<int>(f) * fl + j;
      if (p == 0)
      {
        tt.emplace_back(r, fn[j], 1.0);
      }
      else if (p == 1)
      {
        for (int c = 0; c < 2; ++c)
        {
          tt.emplace_back(r, c * nn + fn[j], tg[c]);
          tn.emplace_back(r, c * nn + fn[j], n[c]);
        }
      }
      else
      {
        tn.emplace_back(r, fn[j], 1.0);
      }
    }
  }
  ops.trace_tangential = from_triplets(rows, ops.num_dofs(), tt);
  ops.trace_normal = from_triplets(rows, ops.num_dofs(), tn);
  return ops;
}

ElementField to_elements(const FESpace &space, const FormField &field)
{
  if (field.num_nodes != space.num_nodes() || field.order != space.order())
  {
    throw DomainError("field does not belong to this space");
  }
  ElementField e;
  e.p = field.p;
  const int nn = space.num_nodes();
  for (int t = 0; t < space.mesh().num_triangles(); ++t)
  {
    const auto phi = space.shape_polys(t);
    const auto &cn = space.cell_nodes(t);
    PolyForm w(field.p);
    for (int c = 0; c < w.size(); ++c)
    {
      for (std::size_t a = 0; a < cn.size(); ++a)
      {
        w[c] += field.coefficients[c * nn + cn[a]] * phi[a];
      }
    }
    e.cells.push_back(std::move(w));
  }
  return e;
}

ElementField apply_d(const ElementField &field)
{
  if (field.p >= 2)
  {
    throw DomainError("d of a 2-form vanishes identically in the plane");
  }
  ElementField r;
  r.p = field.p + 1;
  for (const auto &w : field.cells)
  {
    r.cells.push_back(ext_d(w));
  }
  return r;
}

ElementField apply_d(const FESpace &space, const FormField &field)
{
  return apply_d(to_elements(space, field));
}

FormField weak_delta(const DiscreteOperators &ops, const FormField &field)
{
  if (field.p == 0)
  {
    throw DomainError("codifferential of a 0-form is not defined");
  }
  if (field.p != ops.p || field.coefficients.size() != ops.num_dofs())
  {
    throw DomainError("field does not match the operators");
  }
  Eigen::SimplicialLDLT<SpMat> solver(ops.M_lower);
  if (solver.info() != Eigen::Success)
  {
    throw SolverError("mass factorization failed");
  }
  FormField r = FormField::zeros(*ops.space, field.p - 1);
  r.coefficients = solver.solve(ops.R * field.coefficients);
  return r;
}

double integrate(const Mesh &mesh, const Poly2 &f)
{
  if (f.is_zero())
  {
    return 0.0;
  }
  const TriangleRule rule = triangle_rule(f.degree());
  double s = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t)
  {
    const auto &tri = mesh.triangles()[t];
    const Vec2 &a = mesh.vertices()[tri[0]], &b = mesh.vertices()[tri[1]],
               &c = mesh.vertices()[tri[2]];
    double st = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q)
    {
      const auto &l = rule.points[q];
      st += rule.weights[q] * f(l[0] * a + l[1] * b + l[2] * c);
    }
    s += st * mesh.triangle_area(t);
  }
  return s;
}

double integrate_cells(const Mesh &mesh, const ElementField &a, const ElementField &b)
{
  double s = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t)
  {
    const Poly2 f = inner(a.cells[t], b.cells[t]);
    if (f.is_zero())
    {
      continue;
    }
    const TriangleRule rule = triangle_rule(f.degree());
    const auto &tri = mesh.triangles()[t];
    const Vec2 &p0 = mesh.vertices()[tri[0]], &p1 = mesh.vertices()[tri[1]],
               &p2 = mesh.vertices()[tri[2]];
    double st = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q)
    {
      const auto &l = rule.points[q];
      st += rule.weights[q] * f(l[0] * p0 + l[1] * p1 + l[2] * p2);
    }
    s += st * mesh.triangle_area(t);
  }
  return s;
}

double integrate_boundary(const Mesh &mesh,
                          const std::function<Poly2(const Vec2 &outward)> &integrand)
{
  double s = 0.0;
  for (const auto &f : mesh.boundary_facets())
  {
    const Poly2 g = integrand(f.outward_normal);
    if (g.is_zero())
    {
      continue;
    }
    const LineRule lr = line_rule(g.degree());
    const Vec2 &a = mesh.vertices()[f.endpoints[0]], &b = mesh.vertices()[f.endpoints[1]];
    double sf = 0.0;
    for (std::size_t q = 0; q < lr.points.size(); ++q)
    {
      sf += lr.weights[q] * g(a + lr.points[q] * (b - a));
    }
    s += sf * f.length;
  }
  return s;
}

double IbpResiduals::max_relative() const
{
  auto rel = [](double r, double s) { return r / std::max(s, 1.0); };
  return std::max({rel(ipp, ipp_scale), rel(ipp3p, ipp3p_scale), rel(ipp1, ipp1_scale),
                   rel(ipp2, ipp2_scale), rel(ipp3, ipp3_scale)});
}

namespace
{

// Residual of sum(terms with signs) and the largest term magnitude.
std::pair<double, double> balance(std::initializer_list<double> terms)
{
  double s = 0.0, m = 0.0;
  for (double t : terms)
  {
    s += t;
    m = std::max(m, std::abs(t));
  }
  return {std::abs(s), m};
}

double interior_pair(const Mesh &mesh, const PolyForm &a, const PolyForm &b)
{
  return integrate(mesh, inner(a, b));
}

// Boundary pairing of f(nu) and g(nu) with nu the inward normal.
double boundary_pair(const Mesh &mesh,
                     const std::function<PolyForm(const Vec2 &)> &f,
                     const std::function<PolyForm(const Vec2 &)> &g)
{
  return integrate_boundary(mesh, [&](const Vec2 &out) {
    const Vec2 nu = -out;
    return inner(f(nu), g(nu));
  });
}

// <nu _| dw, i* w2> - <i* delta w, nu _| w2> on the boundary.
double green_boundary(const Mesh &mesh, const PolyForm &w, const PolyForm &w2)
{
  const PolyForm dw = ext_d(w), dlw = codiff(w);
  return boundary_pair(
           mesh, [&](const Vec2 &nu) { return normal_part(dw, nu); },
           [&](const Vec2 &nu) { return tangential(w2, nu); }) -
         boundary_pair(
           mesh, [&](const Vec2 &nu) { return tangential(dlw, nu); },
           [&](const Vec2 &nu) { return normal_part(w2, nu); });
}

// Boundary side of the symmetric Green formula for (w, w2).
double green_symmetric(const Mesh &mesh, const PolyForm &w, const PolyForm &w2)
{
  const PolyForm dw2 = ext_d(w2), dlw2 = codiff(w2);
  return green_boundary(mesh, w, w2) -
         boundary_pair(
           mesh, [&](const Vec2 &nu) { return tangential(w, nu); },
           [&](const Vec2 &nu) { return normal_part(dw2, nu); }) +
         boundary_pair(
           mesh, [&](const Vec2 &nu) { return normal_part(w, nu); },
           [&](const Vec2 &nu) { return tangential(dlw2, nu); });
}

}  // namespace

IbpResiduals ibp_residuals(const Mesh &mesh, const PolyForm &w, const PolyForm &w2,
                           const PolyForm &w_up)
{
  if (w.degree() != w2.degree())
  {
    throw DomainError("identity inputs must share their degree");
  }
  IbpResiduals r;
  const int p = w.degree();
  if (p < 2)
  {
    if (w_up.degree() != p + 1)
    {
      throw DomainError("first identity needs a (p+1)-form");
    }
    const double lhs = interior_pair(mesh, ext_d(w), w_up);
    const double a = interior_pair(mesh, w, codiff(w_up));
    const double b = boundary_pair(
      mesh, [&](const Vec2 &nu) { return tangential(w, nu); },
      [&](const Vec2 &nu) { return normal_part(w_up, nu); });
    std::tie(r.ipp, r.ipp_scale) = balance({lhs, -a, b});
  }

  auto ipp3p = [&](const PolyForm &a, const PolyForm &b) {
    const double lhs = interior_pair(mesh, hodge_laplacian(a), b);
    const double t1 = interior_pair(mesh, ext_d(a), ext_d(b));
    const double t2 = interior_pair(mesh, codiff(a), codiff(b));
    const double t3 = green_boundary(mesh, a, b);
    return balance({lhs, -t1, -t2, -t3});
  };
  std::tie(r.ipp3p, r.ipp3p_scale) = ipp3p(w, w2);
  std::tie(r.ipp3, r.ipp3_scale) = ipp3p(w, w);

  {
    const double l1 = interior_pair(mesh, hodge_laplacian(w), w2);
    const double l2 = interior_pair(mesh, w, hodge_laplacian(w2));
    std::tie(r.ipp1, r.ipp1_scale) = balance({l1, -l2, -green_symmetric(mesh, w, w2)});
  }
  {
    const PolyForm lw = hodge_laplacian(w);
    const double l1 = interior_pair(mesh, hodge_laplacian(lw), w2);
    const double l2 = interior_pair(mesh, lw, hodge_laplacian(w2));
    std::tie(r.ipp2, r.ipp2_scale) = balance({l1, -l2, -green_symmetric(mesh, lw, w2)});
  }
  return r;
}

double grad_contraction_check(const PolyForm &w, const PolyVec &X,
                              const std::vector<Vec2> &samples)
{
  double worst = -std::numeric_limits<double>::infinity();
  for (const Vec2 &x : samples)
  {
    const double x0 = X[0](x), x1 = X[1](x);
    double dir = 0.0, full = 0.0;
    for (int c = 0; c < w.size(); ++c)
    {
      const double gx = w[c].dx()(x), gy = w[c].dy()(x);
      const double v = x0 * gx + x1 * gy;
      dir += v * v;
      full += gx * gx + gy * gy;
    }
    worst = std::max(worst, std::sqrt(dir) - std::hypot(x0, x1) * std::sqrt(full));
  }
  return worst;
}

void write_matrix_market(const SpMat &A, const std::string &path)
{
  std::FILE *f = std::fopen(path.c_str(), "w");
  if (!f)
  {
    throw std::runtime_error("cannot write " + path);
  }
  std::fprintf(f, "%%%%MatrixMarket matrix coordinate real general\n%ld %ld %ld\n",
               static_cast<long>(A.rows()), static_cast<long>(A.cols()),
               static_cast<long>(A.nonZeros()));
  for (int k = 0; k < A.outerSize(); ++k)
  {
    for (SpMat::InnerIterator it(A, k); it; ++it)
    {
      std::fprintf(f, "%ld %ld %.17g\n", static_cast<long>(it.row()) + 1,
                   static_cast<long>(it.col()) + 1, it.value());
    }
  }
  if (std::fclose(f) != 0)
  {
    throw std::runtime_error("write failed for " + path);
  }
}

}  // namespace ksforms
