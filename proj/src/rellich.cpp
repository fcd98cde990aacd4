// Copyright 2026 The ksforms Authors
// SPDX-License-Identifier: Apache-2.0

#include "ksforms/rellich.hpp"

#include <algorithm>
#include <cmath>

#include "ksforms/error.hpp"
#include "ksforms/forms_core.hpp"

namespace ksforms
{

namespace
{

Poly2 constant(double c) { return Poly2::monomial(0, 0, c); }

PolyVec to_polyvec(const Vec2 &v) { return {constant(v.x()), constant(v.y())}; }

double checked_integral(const Mesh &mesh, const Poly2 &f)
{
  if (f.degree() > kMaxQuadratureDegree)
  {
    throw DomainError("quadrature degree cap exceeded: integrand degree " +
                      std::to_string(f.degree()));
  }
  return integrate(mesh, f);
}

double checked_boundary(const Mesh &mesh, const std::function<Poly2(const Vec2 &)> &g)
{
  return integrate_boundary(mesh, [&g](const Vec2 &outward) {
    Poly2 v = g(outward);
    if (v.degree() > kMaxQuadratureDegree)
    {
      throw DomainError("quadrature degree cap exceeded: integrand degree " +
                        std::to_string(v.degree()));
    }
    return v;
  });
}

}  // namespace

double RellichLedger::rhs() const
{
  double s = 0.0;
  for (double t : rhs_terms)
  {
    s += t;
  }
  return s;
}

double RellichLedger::scale() const
{
  double s = 0.0;
  for (double t : lhs_terms)
  {
    s = std::max(s, std::abs(t));
  }
  for (double t : rhs_terms)
  {
    s = std::max(s, std::abs(t));
  }
  return s;
}

const std::array<std::string, 2> &RellichLedger::lhs_names()
{
  static const std::array<std::string, 2> n = {"lap_w.F_dw", "delta_w.F_lap_w"};
  return n;
}

const std::array<std::string, 8> &RellichLedger::rhs_names()
{
  static const std::array<std::string, 8> n = {
    "boundary_A", "boundary_B", "boundary_C", "boundary_D",
    "interior_divF", "interior_dF", "interior_T_dw", "interior_T_delta_w"};
  return n;
}

const std::string &RellichLedger::normal_convention()
{
  static const std::string s =
    "nu is the inward unit normal, the negated outward facet normal of the mesh";
  return s;
}

Eigen::VectorXd t_f_apply(const VectorFieldSpec &F, const PolyForm &w, const Vec2 &point)
{
  return t_f(F, w).eval(point);
}

double lie_decomposition_residual(const VectorFieldSpec &F, const PolyForm &w,
                                  const std::vector<Vec2> &samples)
{
  const PolyForm r = lie_derivative(F.F, w) - nabla(F.F, w) - t_f(F, w);
  double worst = 0.0;
  for (const Vec2 &x : samples)
  {
    if (r.size() > 0)
    {
      worst = std::max(worst, r.eval(x).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

RellichLedger rellich_ledger(const Mesh &mesh, const VectorFieldSpec &F, const PolyForm &w)
{
  const int p = w.degree();
  if (p < 0 || p > 2)
  {
    throw DomainError("form degree must be 0, 1 or 2");
  }
  const PolyForm dw = ext_d(w);
  const PolyForm dl = codiff(w);
  const PolyForm lap = hodge_laplacian(w);
  const Poly2 energy = inner(dw, dw) + inner(dl, dl);
  const PolyVec &Fv = F.F;

  RellichLedger L;
  L.p = p;
  L.lhs_terms[0] = checked_integral(mesh, inner(lap, interior(Fv, dw)));
  L.lhs_terms[1] = checked_integral(mesh, inner(dl, interior(Fv, lap)));

  auto inward = [](const Vec2 &outward) -> Vec2 { return -outward; };
  L.rhs_terms[0] = checked_boundary(mesh, [&](const Vec2 &o) {
    const Vec2 nu = inward(o);
    return constant(-0.5) * energy * (Fv[0] * constant(nu.x()) + Fv[1] * constant(nu.y()));
  });
  L.rhs_terms[1] = checked_boundary(mesh, [&](const Vec2 &o) {
    const Vec2 nu = inward(o);
    return inner(wedge1(Fv, tangential(dl, nu)), interior(to_polyvec(nu), dw));
  });
  L.rhs_terms[2] = checked_boundary(mesh, [&](const Vec2 &o) {
    const Vec2 nu = inward(o);
    return inner(tangential(interior(Fv, dw), nu), interior(to_polyvec(nu), dw));
  });
  L.rhs_terms[3] = checked_boundary(mesh, [&](const Vec2 &o) {
    const Vec2 nu = inward(o);
    return inner(tangential(interior(Fv, dl), nu), interior(to_polyvec(nu), dl));
  });
  L.rhs_terms[4] = checked_integral(mesh, constant(-0.5) * energy * F.divergence());
  L.rhs_terms[5] = checked_integral(mesh, inner(dl, df_contract(F, dw)));
  L.rhs_terms[6] = checked_integral(mesh, inner(t_f(F, dw), dw));
  L.rhs_terms[7] = checked_integral(mesh, inner(t_f(F, dl), dl));
  L.residual = std::abs(L.lhs() - L.rhs());
  return L;
}

double reilly_residual(const Mesh &mesh, const PolyForm &w, double radius)
{
  if (w.degree() != 1)
  {
    throw DomainError("the Reilly check is implemented for 1-forms");
  }
  if (!(radius > 0.0))
  {
    throw DomainError("radius must be positive");
  }
  const PolyForm dw = ext_d(w);
  const PolyForm dl = codiff(w);
  const double lhs = checked_integral(mesh, inner(dw, dw) + inner(dl, dl));
  Poly2 grad2;
  for (int i = 0; i < 2; ++i)
  {
    PolyVec e = {constant(i == 0 ? 1.0 : 0.0), constant(i == 1 ? 1.0 : 0.0)};
    const PolyForm di = nabla(e, w);
    grad2 = grad2 + inner(di, di);
  }
  const double interior_term = checked_integral(mesh, grad2);
  const double boundary = checked_boundary(mesh, [&](const Vec2 &o) {
    const PolyForm t = tangential(w, o);
    return inner(t, t);
  });
  return std::abs(lhs - interior_term - boundary / radius);
}

}  // namespace ksforms
