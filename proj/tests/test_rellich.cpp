// Copyright 2026 The ksforms Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ksforms/error.hpp"
#include "ksforms/forms_core.hpp"
#include "ksforms/geometry.hpp"
#include "ksforms/rellich.hpp"

using namespace ksforms;

namespace
{

const Mesh &square()
{
  static const Mesh m = gen_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, 0.5);
  return m;
}

const Mesh &triangle()
{
  static const Mesh m = gen_polygon({{0, 0}, {2, 0}, {0.5, 1.5}}, 0.7);
  return m;
}

std::vector<Vec2> samples()
{
  std::vector<Vec2> s;
  for (int i = 0; i < 7; ++i)
  {
    for (int j = 0; j < 7; ++j)
    {
      s.emplace_back(-1.0 + i / 3.0, -1.0 + j / 3.0);
    }
  }
  return s;
}

}  // namespace

TEST_CASE("T_F examples")
{
  const Poly2 one = Poly2::monomial(0, 0);
  const Poly2 zero;
  std::mt19937_64 rng(5);
  const VectorFieldSpec pos = VectorFieldSpec::position(Vec2(0.3, -0.2));
  const VectorFieldSpec cst = VectorFieldSpec::constant(Vec2(1.5, 2.0));
  for (int p : {1, 2})
  {
    const PolyForm w = PolyForm::random(p, 3, rng);
    for (const Vec2 &x : samples())
    {
      CHECK((t_f_apply(pos, w, x) - p * w.eval(x)).norm() <= 1e-12 * (1.0 + w.eval(x).norm()));
      CHECK(t_f_apply(cst, w, x).norm() == 0.0);
    }
  }
  VectorFieldSpec F;
  F.F = {Poly2::x() * Poly2::x(), zero};
  // grad_{e1} F = (2x, 0) and grad_{e2} F = 0, so at (1, 0) dy maps to 0 and
  // dx to 2 dx.
  const PolyForm dy(1, {zero, one});
  const Eigen::VectorXd v = t_f_apply(F, dy, Vec2(1.0, 0.0));
  CHECK(v[0] == 0.0);
  CHECK(v[1] == 0.0);
  const PolyForm dx(1, {one, zero});
  const Eigen::VectorXd u = t_f_apply(F, dx, Vec2(1.0, 0.0));
  CHECK(u[0] == 2.0);
  CHECK(u[1] == 0.0);
}

TEST_CASE("Lie derivative decomposition")
{
  std::mt19937_64 rng(11);
  const auto pts = samples();
  for (int trial = 0; trial < 200; ++trial)
  {
    const int p = trial % 3;
    const PolyForm w = PolyForm::random(p, 1 + trial % 4, rng);
    const VectorFieldSpec F = VectorFieldSpec::random(1 + trial % 3, trial % 2 == 0, rng);
    CHECK(lie_decomposition_residual(F, w, pts) <= 1e-10);
  }
  const VectorFieldSpec pos = VectorFieldSpec::position(Vec2(0.1, 0.2));
  const PolyForm w = PolyForm::random(1, 2, rng);
  for (const Vec2 &x : pts)
  {
    const Eigen::VectorXd diff =
      (lie_derivative(pos.F, w) - nabla(pos.F, w)).eval(x) - 1.0 * w.eval(x);
    CHECK(diff.norm() <= 1e-10 * (1.0 + w.eval(x).norm()));
  }
}

TEST_CASE("Rellich ledger: constant forms give zero terms")
{
  const Poly2 c = Poly2::monomial(0, 0, 2.5);
  const PolyForm w(1, {c, c});
  const RellichLedger L =
    rellich_ledger(square(), VectorFieldSpec::position(Vec2(0.5, 0.5)), w);
  CHECK(L.scale() == 0.0);
  CHECK(L.residual == 0.0);
}

TEST_CASE("Rellich ledger: worked example on the square")
{
  const PolyForm w(1, {Poly2::x() * Poly2::x(), Poly2::x() * Poly2::y()});
  const VectorFieldSpec F = VectorFieldSpec::position(centroid(square()));
  const RellichLedger L = rellich_ledger(square(), F, w);
  CHECK(L.residual <= 1e-10);
  CHECK(L.scale() > 0.1);
  // F = position: div F = 2 and T_F acts on 2-forms as multiplication by 2.
  const PolyForm dw = ext_d(w);
  CHECK(L.rhs_terms[6] == doctest::Approx(2.0 * integrate(square(), inner(dw, dw))).epsilon(1e-13));
  CHECK(std::abs(L.rhs_terms[5]) <= 1e-12);
}

TEST_CASE("Rellich ledger: random forms on square and triangle")
{
  for (const Mesh *m : {&square(), &triangle()})
  {
    for (std::uint64_t seed = 0; seed < 50; ++seed)
    {
      std::mt19937_64 rng(seed);
      for (int p : {0, 1, 2})
      {
        const PolyForm w = PolyForm::random(p, 3, rng);
        const RellichLedger L = rellich_ledger(*m, VectorFieldSpec::position(Vec2(0.2, 0.3)), w);
        CHECK(L.residual <= 1e-10 * std::max(1.0, L.scale()));
        CHECK(std::abs(L.rhs_terms[5]) <= 1e-12 * std::max(1.0, L.scale()));
      }
      // General fields: the dF term participates.
      const PolyForm w = PolyForm::random(1, 2, rng);
      const VectorFieldSpec F = VectorFieldSpec::random(2, false, rng);
      const RellichLedger L = rellich_ledger(*m, F, w);
      CHECK(L.residual <= 1e-10 * std::max(1.0, L.scale()));
      const VectorFieldSpec G = VectorFieldSpec::random(3, true, rng);
      CHECK(std::abs(rellich_ledger(*m, G, w).rhs_terms[5]) <=
            1e-12 * std::max(1.0, rellich_ledger(*m, G, w).scale()));
    }
  }
}

TEST_CASE("Rellich ledger is insensitive to refinement of the quadrature mesh")
{
  std::mt19937_64 rng(3);
  const PolyForm w = PolyForm::random(1, 3, rng);
  const VectorFieldSpec F = VectorFieldSpec::position(Vec2(0.4, 0.4));
  const RellichLedger a = rellich_ledger(square(), F, w);
  const RellichLedger b = rellich_ledger(refine_uniform(square()), F, w);
  for (int i = 0; i < 8; ++i)
  {
    CHECK(std::abs(a.rhs_terms[i] - b.rhs_terms[i]) <= 1e-13 * std::max(1.0, a.scale()));
  }
}

TEST_CASE("Reilly formula on the disk")
{
  const Poly2 zero;
  const PolyForm rot(1, {-1.0 * Poly2::y(), Poly2::x()});
  double previous = 0.0;
  for (double h : {0.2, 0.1, 0.05})
  {
    const Mesh m = gen_disk(1.0, h);
    const double r = reilly_residual(m, rot, 1.0);
    CHECK(r < 0.2);
    if (previous > 0.0)
    {
      CHECK(std::log2(previous / r) >= 1.0);
    }
    previous = r;
  }
  const PolyForm z(1, {zero, zero});
  CHECK(reilly_residual(gen_disk(1.0, 0.2), z, 1.0) == 0.0);
  CHECK_THROWS_AS(reilly_residual(gen_disk(1.0, 0.2), PolyForm(0, {zero}), 1.0), DomainError);
}
