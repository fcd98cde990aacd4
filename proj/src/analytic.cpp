// Copyright 2026 The ksforms Authors
// SPDX-License-Identifier: Apache-2.0

#include "ksforms/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ksforms/error.hpp"

namespace ksforms
{

Poly2::Poly2(double constant)
{
  if (constant != 0.0)
  {
    terms_[{0, 0}] = constant;
  }
}

Poly2 Poly2::monomial(int i, int j, double c)
{
  Poly2 p;
  if (c != 0.0)
  {
    p.terms_[{i, j}] = c;
  }
  return p;
}

Poly2 Poly2::random(int degree, std::mt19937_64 &rng)
{
  std::uniform_int_distribution<int> coef(-3, 3);
  Poly2 p;
  for (int i = 0; i <= degree; ++i)
  {
    for (int j = 0; i + j <= degree; ++j)
    {
      p += monomial(i, j, coef(rng));
    }
  }
  return p;
}

double Poly2::operator()(double x, double y) const
{
  double s = 0.0;
  for (const auto &[e, c] : terms_)
  {
    s += c * std::pow(x, e.first) * std::pow(y, e.second);
  }
  return s;
}

Poly2 Poly2::dx() const
{
  Poly2 r;
  for (const auto &[e, c] : terms_)
  {
    if (e.first > 0)
    {
      r.terms_[{e.first - 1, e.second}] += c * e.first;
    }
  }
  return r;
}

Poly2 Poly2::dy() const
{
  Poly2 r;
  for (const auto &[e, c] : terms_)
  {
    if (e.second > 0)
    {
      r.terms_[{e.first, e.second - 1}] += c * e.second;
    }
  }
  return r;
}

int Poly2::degree() const
{
  int d = 0;
  for (const auto &[e, c] : terms_)
  {
    d = std::max(d, e.first + e.second);
  }
  return d;
}

void Poly2::prune()
{
  for (auto it = terms_.begin(); it != terms_.end();)
  {
    it = it->second == 0.0 ? terms_.erase(it) : std::next(it);
  }
}

Poly2 &Poly2::operator+=(const Poly2 &o)
{
  for (const auto &[e, c] : o.terms_)
  {
    terms_[e] += c;
  }
  prune();
  return *this;
}

Poly2 &Poly2::operator-=(const Poly2 &o)
{
  for (const auto &[e, c] : o.terms_)
  {
    terms_[e] -= c;
  }
  prune();
  return *this;
}

Poly2 &Poly2::operator*=(double s)
{
  for (auto &[e, c] : terms_)
  {
    c *= s;
  }
  prune();
  return *this;
}

Poly2 operator*(const Poly2 &a, const Poly2 &b)
{
  Poly2 r;
  for (const auto &[ea, ca] : a.terms_)
  {
    for (const auto &[eb, cb] : b.terms_)
    {
      r.terms_[{ea.first + eb.first, ea.second + eb.second}] += ca * cb;
    }
  }
  r.prune();
  return r;
}

std::string Poly2::to_string() const
{
  if (terms_.empty())
  {
    return "0";
  }
  std::string s;
  char buf[64];
  for (const auto &[e, c] : terms_)
  {
    std::snprintf(buf, sizeof(buf), "%s%.17g*x^%d*y^%d", s.empty() ? "" : " + ", c, e.first,
                  e.second);
    s += buf;
  }
  return s;
}

const std::vector<std::vector<int>> &form_basis(int p)
{
  static const std::vector<std::vector<int>> b0{{}};
  static const std::vector<std::vector<int>> b1{{0}, {1}};
  static const std::vector<std::vector<int>> b2{{0, 1}};
  static const std::vector<std::vector<int>> none{};
  switch (p)
  {
    case 0: return b0;
    case 1: return b1;
    case 2: return b2;
    default: return none;
  }
}

namespace
{

int basis_index(int p, const std::vector<int> &set)
{
  const auto &b = form_basis(p);
  return static_cast<int>(std::find(b.begin(), b.end(), set) - b.begin());
}

// Sign of the permutation sorting `seq`; 0 when an index repeats.
int perm_sign(std::vector<int> seq)
{
  int s = 1;
  for (std::size_t i = 0; i < seq.size(); ++i)
  {
    for (std::size_t j = i + 1; j < seq.size(); ++j)
    {
      if (seq[i] == seq[j])
      {
        return 0;
      }
      if (seq[i] > seq[j])
      {
        s = -s;
      }
    }
  }
  return s;
}

}  // namespace

PolyForm::PolyForm(int p) : p_(p), c_(form_basis(p).size()) {}

PolyForm::PolyForm(int p, std::vector<Poly2> components) : p_(p), c_(std::move(components))
{
  if (c_.size() != form_basis(p).size())
  {
    throw DomainError("component count does not match the form degree");
  }
}

PolyForm PolyForm::random(int p, int degree, std::mt19937_64 &rng)
{
  PolyForm w(p);
  for (auto &c : w.c_)
  {
    c = Poly2::random(degree, rng);
  }
  return w;
}

int PolyForm::poly_degree() const
{
  int d = 0;
  for (const auto &c : c_)
  {
    d = std::max(d, c.degree());
  }
  return d;
}

Eigen::VectorXd PolyForm::eval(const Eigen::Vector2d &x) const
{
  Eigen::VectorXd v(size());
  for (int i = 0; i < size(); ++i)
  {
    v[i] = c_[i](x);
  }
  return v;
}

PolyForm &PolyForm::operator+=(const PolyForm &o)
{
  if (o.p_ != p_)
  {
    throw DomainError("adding forms of different degree");
  }
  for (int i = 0; i < size(); ++i)
  {
    c_[i] += o.c_[i];
  }
  return *this;
}

PolyForm &PolyForm::operator-=(const PolyForm &o)
{
  if (o.p_ != p_)
  {
    throw DomainError("subtracting forms of different degree");
  }
  for (int i = 0; i < size(); ++i)
  {
    c_[i] -= o.c_[i];
  }
  return *this;
}

PolyForm operator*(const Poly2 &s, const PolyForm &a)
{
  PolyForm r(a.degree());
  for (int i = 0; i < a.size(); ++i)
  {
    r[i] = s * a[i];
  }
  return r;
}

PolyForm wedge1(const PolyVec &v, const PolyForm &w)
{
  const int p = w.degree() + 1;
  PolyForm r(p);
  if (w.degree() < 0)
  {
    return r;
  }
  const auto &b = form_basis(p);
  for (std::size_t I = 0; I < b.size(); ++I)
  {
    for (std::size_t k = 0; k < b[I].size(); ++k)
    {
      std::vector<int> rest = b[I];
      rest.erase(rest.begin() + static_cast<long>(k));
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      r[static_cast<int>(I)] += sign * (v[b[I][k]] * w[basis_index(w.degree(), rest)]);
    }
  }
  return r;
}

PolyForm interior(const PolyVec &v, const PolyForm &w)
{
  const int p = w.degree() - 1;
  PolyForm r(p);
  if (p < 0)
  {
    return r;
  }
  const auto &b = form_basis(p);
  for (std::size_t J = 0; J < b.size(); ++J)
  {
    for (int j = 0; j < 2; ++j)
    {
      std::vector<int> seq{j};
      seq.insert(seq.end(), b[J].begin(), b[J].end());
      const int s = perm_sign(seq);
      if (s == 0)
      {
        continue;
      }
      std::sort(seq.begin(), seq.end());
      r[static_cast<int>(J)] += static_cast<double>(s) * (v[j] * w[basis_index(w.degree(), seq)]);
    }
  }
  return r;
}

namespace
{

PolyForm partial(const PolyForm &w, int axis)
{
  PolyForm r(w.degree());
  for (int i = 0; i < w.size(); ++i)
  {
    r[i] = w[i].diff(axis);
  }
  return r;
}

const PolyVec &unit(int i)
{
  static const PolyVec e0{Poly2(1.0), Poly2()};
  static const PolyVec e1{Poly2(), Poly2(1.0)};
  return i == 0 ? e0 : e1;
}

PolyVec constant_vec(const Eigen::Vector2d &v) { return {Poly2(v.x()), Poly2(v.y())}; }

}  // namespace

PolyForm ext_d(const PolyForm &w)
{
  PolyForm r(w.degree() + 1);
  for (int i = 0; i < 2; ++i)
  {
    r += wedge1(unit(i), partial(w, i));
  }
  return r;
}

PolyForm codiff(const PolyForm &w)
{
  PolyForm r(w.degree() - 1);
  for (int i = 0; i < 2; ++i)
  {
    r -= interior(unit(i), partial(w, i));
  }
  return r;
}

PolyForm hodge_laplacian(const PolyForm &w)
{
  PolyForm r(w.degree());
  if (w.degree() < 2)
  {
    r += codiff(ext_d(w));
  }
  if (w.degree() > 0)
  {
    r += ext_d(codiff(w));
  }
  return r;
}

PolyForm nabla(const PolyVec &v, const PolyForm &w)
{
  PolyForm r(w.degree());
  for (int i = 0; i < w.size(); ++i)
  {
    r[i] = v[0] * w[i].dx() + v[1] * w[i].dy();
  }
  return r;
}

PolyForm normal_part(const PolyForm &w, const Eigen::Vector2d &nu)
{
  return interior(constant_vec(nu), w);
}

PolyForm tangential(const PolyForm &w, const Eigen::Vector2d &nu)
{
  if (w.degree() <= 0)
  {
    return w;
  }
  const PolyVec n = constant_vec(nu);
  return w - wedge1(n, interior(n, w));
}

Poly2 inner(const PolyForm &a, const PolyForm &b)
{
  Poly2 s;
  if (a.degree() < 0 || b.degree() < 0)
  {
    return s;
  }
  if (a.degree() != b.degree())
  {
    throw DomainError("inner product of forms of different degree");
  }
  for (int i = 0; i < a.size(); ++i)
  {
    s += a[i] * b[i];
  }
  return s;
}

VectorFieldSpec VectorFieldSpec::position(const Eigen::Vector2d &x0)
{
  return {{Poly2::x() - Poly2(x0.x()), Poly2::y() - Poly2(x0.y())}, true};
}

VectorFieldSpec VectorFieldSpec::constant(const Eigen::Vector2d &c)
{
  return {constant_vec(c), true};
}

VectorFieldSpec VectorFieldSpec::random(int degree, bool gradient, std::mt19937_64 &rng)
{
  if (gradient)
  {
    const Poly2 phi = Poly2::random(degree + 1, rng);
    return {{phi.dx(), phi.dy()}, true};
  }
  return {{Poly2::random(degree, rng), Poly2::random(degree, rng)}, false};
}

PolyForm t_f(const VectorFieldSpec &F, const PolyForm &w)
{
  const int p = w.degree();
  PolyForm r(p);
  if (p <= 0)
  {
    return r;
  }
  const auto &b = form_basis(p);
  for (std::size_t I = 0; I < b.size(); ++I)
  {
    for (int k = 0; k < p; ++k)
    {
      // slot k receives grad_{e_{I_k}} F = sum_j d_{I_k} F_j e_j
      for (int j = 0; j < 2; ++j)
      {
        std::vector<int> seq = b[I];
        seq[k] = j;
        const int s = perm_sign(seq);
        if (s == 0)
        {
          continue;
        }
        std::vector<int> sorted = seq;
        std::sort(sorted.begin(), sorted.end());
        r[static_cast<int>(I)] +=
          static_cast<double>(s) * (F.F[j].diff(b[I][k]) * w[basis_index(p, sorted)]);
      }
    }
  }
  return r;
}

PolyForm df_contract(const VectorFieldSpec &F, const PolyForm &w)
{
  PolyForm r(w.degree() - 2);
  for (int i = 0; i < 2; ++i)
  {
    r += interior(F.derivative(i), interior(unit(i), w));
  }
  return r;
}

PolyForm lie_derivative(const PolyVec &F, const PolyForm &w)
{
  PolyForm r(w.degree());
  if (w.degree() > 0)
  {
    r += ext_d(interior(F, w));
  }
  if (w.degree() < 2)
  {
    r += interior(F, ext_d(w));
  }
  return r;
}

}  // namespace ksforms
