// Copyright 2026 The ksforms Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include "doctest.h"
#include "ksforms/error.hpp"
#include "ksforms/forms_core.hpp"
#include "ksforms/quadrature.hpp"

using namespace ksforms;

namespace
{

const Mesh &unit_square()
{
  static const Mesh m = gen_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, 0.2);
  return m;
}

double energy(const SpMat &A, const Eigen::VectorXd &x) { return x.dot(A * x); }

Eigen::VectorXd random_vector(int n, std::mt19937_64 &rng)
{
  std::normal_distribution<double> g;
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i)
  {
    v[i] = g(rng);
  }
  return v;
}

// Boundary term of the first identity evaluated cell by cell.
double boundary_term(const Mesh &mesh, const ElementField &a, const ElementField &b)
{
  double s = 0.0;
  for (const auto &f : mesh.boundary_facets())
  {
    const Vec2 nu = -f.outward_normal;
    const Poly2 g = inner(tangential(a.cells[f.triangle], nu), normal_part(b.cells[f.triangle], nu));
    const LineRule lr = line_rule(g.degree());
    const Vec2 x0 = mesh.vertices()[f.endpoints[0]], x1 = mesh.vertices()[f.endpoints[1]];
    for (std::size_t q = 0; q < lr.points.size(); ++q)
    {
      s += f.length * lr.weights[q] * g(x0 + lr.points[q] * (x1 - x0));
    }
  }
  return s;
}

}  // namespace

TEST_CASE("quadrature exactness")
{
  const TriangleRule r = triangle_rule(6);
  double s = 0.0;
  for (std::size_t q = 0; q < r.points.size(); ++q)
  {
    s += r.weights[q] * std::pow(r.points[q][1], 4) * std::pow(r.points[q][2], 2);
  }
  // int over the reference triangle / area: 2 * 4! 2! / 8!
  CHECK(s == doctest::Approx(2.0 * 24.0 * 2.0 / 40320.0).epsilon(1e-14));
  const LineRule g = gauss_legendre(5);
  double m = 0.0;
  for (std::size_t q = 0; q < g.points.size(); ++q)
  {
    m += g.weights[q] * std::pow(g.points[q], 9);
  }
  CHECK(m == doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("form energies of simple fields")
{
  const Mesh &sq = unit_square();
  for (int order : {1, 2})
  {
    auto space = std::make_shared<const FESpace>(sq, order);
    const auto ops1 = assemble(space, 1);
    const auto c = FormField::interpolate(*space, PolyForm(1, {Poly2(2.0), Poly2(-1.0)}));
    CHECK(std::abs(energy(ops1.B, c.coefficients)) < 1e-12);

    const auto rot = FormField::interpolate(*space, PolyForm(1, {-Poly2::y(), Poly2::x()}));
    CHECK(energy(ops1.B, rot.coefficients) == doctest::Approx(4.0).epsilon(1e-12));

    const auto ops0 = assemble(space, 0);
    const auto u = FormField::interpolate(*space, PolyForm(0, {Poly2::x()}));
    CHECK(energy(ops0.B, u.coefficients) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(energy(ops0.M, u.coefficients) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(energy(ops0.Mb, u.coefficients) == doctest::Approx(1.0 + 2.0 / 3.0).epsilon(1e-12));
  }
}

TEST_CASE("exterior derivative on elements")
{
  const Mesh &sq = unit_square();
  const FESpace p2(sq, 2);
  const auto u = FormField::interpolate(p2, PolyForm(0, {Poly2::x() * Poly2::x()}));
  const auto du = apply_d(p2, u);
  for (const auto &w : du.cells)
  {
    CHECK(w.eval(Vec2(0.3, 0.7)).isApprox(Eigen::Vector2d(0.6, 0.0), 1e-12));
  }
  const auto w = FormField::interpolate(p2, PolyForm(1, {Poly2(), Poly2::x()}));
  for (const auto &c : apply_d(p2, w).cells)
  {
    CHECK(std::abs(c[0](Vec2(0.1, 0.2)) - 1.0) < 1e-12);
  }
  std::mt19937_64 rng(5);
  FormField r = FormField::zeros(p2, 0);
  r.coefficients = random_vector(p2.num_nodes(), rng);
  for (const auto &c : apply_d(apply_d(p2, r)).cells)
  {
    CHECK(std::abs(c[0](Vec2(0.4, 0.4))) < 1e-9);
  }
  FormField two = FormField::zeros(p2, 2);
  CHECK_THROWS_AS(apply_d(p2, two), DomainError);
}

TEST_CASE("weak codifferential")
{
  const Mesh &sq = unit_square();
  for (int order : {1, 2})
  {
    auto space = std::make_shared<const FESpace>(sq, order);
    const auto ops = assemble(space, 1);
    const auto w = FormField::interpolate(*space, PolyForm(1, {Poly2::x(), Poly2::y()}));
    const auto dw = weak_delta(ops, w);
    CHECK((dw.coefficients.array() + 2.0).abs().maxCoeff() < 1e-10);
    const auto c = FormField::interpolate(*space, PolyForm(1, {Poly2(1.0), Poly2(3.0)}));
    CHECK(weak_delta(ops, c).coefficients.cwiseAbs().maxCoeff() < 1e-10);

    // delta of delta vanishes when delta(beta) is representable
    const auto ops2 = assemble(space, 2);
    const Poly2 v = order == 2 ? Poly2::x() * Poly2::y() + Poly2::y() * Poly2::y()
                               : Poly2::x() + 2.0 * Poly2::y();
    const auto beta = FormField::interpolate(*space, PolyForm(2, {v}));
    const auto db = weak_delta(ops2, beta);
    CHECK(weak_delta(ops, db).coefficients.cwiseAbs().maxCoeff() < 1e-9);
    CHECK_THROWS_AS(weak_delta(assemble(space, 0), FormField::zeros(*space, 0)), DomainError);
  }
}

TEST_CASE("discrete integration by parts holds exactly")
{
  std::mt19937_64 rng(11);
  const Mesh mesh = gen_disk(1.0, 0.3);
  for (int order : {1, 2})
  {
    auto space = std::make_shared<const FESpace>(mesh, order);
    for (int p : {1, 2})
    {
      const auto ops = assemble(space, p);
      FormField a = FormField::zeros(*space, p - 1), b = FormField::zeros(*space, p);
      a.coefficients = random_vector(static_cast<int>(a.coefficients.size()), rng);
      b.coefficients = random_vector(static_cast<int>(b.coefficients.size()), rng);
      const auto db = weak_delta(ops, b);
      const double lhs = a.coefficients.dot(ops.R * b.coefficients);
      const double solved = a.coefficients.dot(ops.M_lower * db.coefficients);
      CHECK(std::abs(solved - lhs) <=
            1e-12 * a.coefficients.norm() * (ops.R * b.coefficients).norm());
      const auto ea = to_elements(*space, a), eb = to_elements(*space, b);
      const double vol = integrate_cells(mesh, apply_d(ea), eb);
      const double bnd = boundary_term(mesh, ea, eb);
      // roundoff scale of the summed element contributions
      const double scale =
        a.coefficients.cwiseAbs().dot(SpMat(ops.R.cwiseAbs()) * b.coefficients.cwiseAbs());
      CHECK(std::abs(lhs - vol - bnd) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("Gaffney identity on zero-trace fields and duality")
{
  std::mt19937_64 rng(2);
  const Mesh mesh = gen_disk(1.0, 0.25);
  for (int order : {1, 2})
  {
    auto space = std::make_shared<const FESpace>(mesh, order);
    for (int p : {0, 1, 2})
    {
      const auto ops = assemble(space, p);
      Eigen::VectorXd x = random_vector(ops.num_dofs(), rng);
      const int nn = space->num_nodes();
      for (int i = 0; i < ops.num_dofs(); ++i)
      {
        if (space->boundary_mask()[i % nn])
        {
          x[i] = 0.0;
        }
      }
      const double b = energy(ops.B, x), g = energy(ops.G, x);
      CHECK(std::abs(b - g) <= 1e-10 * g);
    }
    const auto o0 = assemble(space, 0), o2 = assemble(space, 2);
    CHECK((o0.M - o2.M).norm() <= 1e-12 * o0.M.norm());
    CHECK((o0.B - o2.B).norm() <= 1e-12 * o0.B.norm());
    CHECK((o0.G - o2.G).norm() <= 1e-12 * o0.G.norm());
  }
}

TEST_CASE("analytic integration by parts identities")
{
  std::mt19937_64 rng(7);
  const Mesh &sq = unit_square();
  const Mesh tri = gen_polygon({{0, 0}, {1, 0}, {0, 1}}, 1.0);
  for (int trial = 0; trial < 20; ++trial)
  {
    for (int p : {0, 1, 2})
    {
      const auto w = PolyForm::random(p, 3, rng), w2 = PolyForm::random(p, 3, rng);
      const auto up = p < 2 ? PolyForm::random(p + 1, 3, rng) : PolyForm(3);
      CHECK(ibp_residuals(sq, w, w2, up).max_relative() <= 1e-10);
      CHECK(ibp_residuals(tri, w, w2, up).max_relative() <= 1e-10);
    }
  }
  const PolyForm a(1, {Poly2::x() * Poly2::x(), Poly2::x() * Poly2::y()});
  const PolyForm b(1, {Poly2::y(), Poly2::x()});
  CHECK(ibp_residuals(sq, a, b, PolyForm(2, {Poly2::x()})).max_relative() <= 1e-10);
  const PolyForm harm(1, {Poly2::x() * Poly2::x() - Poly2::y() * Poly2::y(),
                          2.0 * (Poly2::x() * Poly2::y())});
  CHECK(ibp_residuals(sq, harm, harm, PolyForm(2, {Poly2(1.0)})).ipp3 <= 1e-10);
  const PolyForm c(1, {Poly2(1.0), Poly2(-2.0)});
  const auto r = ibp_residuals(sq, c, c, PolyForm(2, {Poly2(1.0)}));
  CHECK(r.ipp3 == 0.0);
  CHECK(r.ipp1 == 0.0);
}

TEST_CASE("Hodge Laplacian is the componentwise negative Laplacian")
{
  std::mt19937_64 rng(9);
  for (int p : {0, 1, 2})
  {
    const auto w = PolyForm::random(p, 4, rng);
    const auto L = hodge_laplacian(w);
    for (int c = 0; c < w.size(); ++c)
    {
      const Poly2 diff = L[c] + w[c].dx().dx() + w[c].dy().dy();
      CHECK(diff.is_zero());
    }
  }
}

TEST_CASE("directional derivative bound")
{
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Vec2> samples;
  for (int i = 0; i < 20; ++i)
  {
    samples.emplace_back(u(rng), u(rng));
  }
  // X = e1 with an x-independent form
  const PolyForm wy(1, {Poly2::y() * Poly2::y(), Poly2::y()});
  CHECK(grad_contraction_check(wy, {Poly2(1.0), Poly2()}, samples) <= 1e-12);
  const PolyForm pos(1, {Poly2::x(), Poly2::y()});
  const PolyVec X{Poly2::x(), Poly2::y()};
  for (const auto &x : samples)
  {
    // |grad_X w| = |X| while |grad w| = sqrt 2
    CHECK(grad_contraction_check(pos, X, {x}) ==
          doctest::Approx(x.norm() * (1.0 - std::sqrt(2.0))).epsilon(1e-12));
  }
  double worst = -1.0;
  for (int trial = 0; trial < 1000; ++trial)
  {
    const auto w = PolyForm::random(1 + trial % 2, 3, rng);
    const PolyVec Y{Poly2::random(2, rng), Poly2::random(2, rng)};
    worst = std::max(worst, grad_contraction_check(w, Y, {samples[trial % 20]}));
  }
  CHECK(worst <= 1e-12);
}
