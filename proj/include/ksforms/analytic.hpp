// Copyright 2026 The ksforms Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef KSFORMS_ANALYTIC_HPP
#define KSFORMS_ANALYTIC_HPP

#include <array>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace ksforms
{

// Bivariate polynomial sum c_ij x^i y^j with exact differentiation.
class Poly2
{
public:
  Poly2() = default;
  Poly2(double constant);  // NOLINT(google-explicit-constructor)

  static Poly2 monomial(int i, int j, double c = 1.0);
  static Poly2 x() { return monomial(1, 0); }
  static Poly2 y() { return monomial(0, 1); }
  // Integer coefficients in [-3, 3] on every monomial of total degree <= deg.
  static Poly2 random(int degree, std::mt19937_64 &rng);

  double operator()(double x, double y) const;
  double operator()(const Eigen::Vector2d &p) const { return (*this)(p.x(), p.y()); }

  Poly2 dx() const;
  Poly2 dy() const;
  Poly2 diff(int axis) const { return axis == 0 ? dx() : dy(); }
  int degree() const;
  bool is_zero() const { return terms_.empty(); }

  Poly2 &operator+=(const Poly2 &o);
  Poly2 &operator-=(const Poly2 &o);
  Poly2 &operator*=(double s);
  friend Poly2 operator+(Poly2 a, const Poly2 &b) { return a += b; }
  friend Poly2 operator-(Poly2 a, const Poly2 &b) { return a -= b; }
  friend Poly2 operator-(Poly2 a) { return a *= -1.0; }
  friend Poly2 operator*(Poly2 a, double s) { return a *= s; }
  friend Poly2 operator*(double s, Poly2 a) { return a *= s; }
  friend Poly2 operator*(const Poly2 &a, const Poly2 &b);

  const std::map<std::pair<int, int>, double> &terms() const { return terms_; }
  std::string to_string() const;

private:
  void prune();
  std::map<std::pair<int, int>, double> terms_;
};

using PolyVec = std::array<Poly2, 2>;

// Polynomial p-form on R^2. Components follow the sorted basis:
// p=0: {1}, p=1: {dx, dy}, p=2: {dx^dy}. Degree -1 denotes the zero form
// produced by contracting a 0-form.
class PolyForm
{
public:
  PolyForm() = default;
  explicit PolyForm(int p);
  PolyForm(int p, std::vector<Poly2> components);

  static PolyForm random(int p, int degree, std::mt19937_64 &rng);

  int degree() const { return p_; }
  int size() const { return static_cast<int>(c_.size()); }
  const Poly2 &operator[](int i) const { return c_[i]; }
  Poly2 &operator[](int i) { return c_[i]; }
  int poly_degree() const;

  // Component values at a point.
  Eigen::VectorXd eval(const Eigen::Vector2d &x) const;

  PolyForm &operator+=(const PolyForm &o);
  PolyForm &operator-=(const PolyForm &o);
  friend PolyForm operator+(PolyForm a, const PolyForm &b) { return a += b; }
  friend PolyForm operator-(PolyForm a, const PolyForm &b) { return a -= b; }
  friend PolyForm operator*(const Poly2 &s, const PolyForm &a);

private:
  int p_ = 0;
  std::vector<Poly2> c_;
};

// Basis index sets of p-forms on R^2 in storage order.
const std::vector<std::vector<int>> &form_basis(int p);

PolyForm ext_d(const PolyForm &w);
PolyForm codiff(const PolyForm &w);
PolyForm hodge_laplacian(const PolyForm &w);
// v^ w for a 1-form v given by its components.
PolyForm wedge1(const PolyVec &v, const PolyForm &w);
// v _| w.
PolyForm interior(const PolyVec &v, const PolyForm &w);
// Componentwise directional derivative.
PolyForm nabla(const PolyVec &v, const PolyForm &w);
// Tangential part w - nu ^ (nu _| w) for a unit normal nu.
PolyForm tangential(const PolyForm &w, const Eigen::Vector2d &nu);
PolyForm normal_part(const PolyForm &w, const Eigen::Vector2d &nu);
// Pointwise inner product <a, b>; zero when either is the degree -1 form.
Poly2 inner(const PolyForm &a, const PolyForm &b);

// Polynomial vector field F with its Jacobian obtained by differentiation.
struct VectorFieldSpec
{
  PolyVec F;
  bool gradient_field = false;

  static VectorFieldSpec position(const Eigen::Vector2d &x0);
  static VectorFieldSpec constant(const Eigen::Vector2d &c);
  // Random polynomial field; a gradient of a random potential when asked.
  static VectorFieldSpec random(int degree, bool gradient, std::mt19937_64 &rng);

  // Column i of the Jacobian, i.e. the derivative of F along e_i.
  PolyVec derivative(int i) const { return {F[0].diff(i), F[1].diff(i)}; }
  Poly2 divergence() const { return F[0].dx() + F[1].dy(); }
};

// T_F^{[p]} w: inserts the derivative of F into each slot.
PolyForm t_f(const VectorFieldSpec &F, const PolyForm &w);
// Sum_i (grad_{e_i} F) _| (e_i _| w).
PolyForm df_contract(const VectorFieldSpec &F, const PolyForm &w);
// Cartan formula d(F _| w) + F _| dw.
PolyForm lie_derivative(const PolyVec &F, const PolyForm &w);

}  // namespace ksforms

#endif  // KSFORMS_ANALYTIC_HPP
