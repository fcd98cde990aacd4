// Copyright 2026 The ksforms Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef KSFORMS_GEOMETRY_HPP
#define KSFORMS_GEOMETRY_HPP

#include <utility>
#include <vector>

#include "ksforms/mesh.hpp"

namespace ksforms
{

struct GeometryReport
{
  Vec2 x0 = Vec2::Zero();
  int dimension = 2;
  double r_max = 0.0;
  // Support function <x_mid - x0, outward normal> per boundary facet.
  std::vector<double> h_values;
  double h_min = 0.0;
  double h_max = 0.0;
  bool star_shaped = false;
  bool convex = false;
};

struct CurvatureConstants
{
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  int p = 0;
  int n = 2;
  double r_max = 0.0;
  double C2 = 0.0;
  double beta_lower = 0.0;
  double beta_upper = 0.0;
  double C0 = 2.0;
};

// Comparison mean curvature H_kappa(r) in dimension n.
double riccati_H(double kappa, int n, double r);
// Analytic derivative of riccati_H with respect to r.
double riccati_H_prime(double kappa, int n, double r);
// H' + H^2/(n-1) + (n-1) kappa, which vanishes identically.
double riccati_residual(double kappa, int n, double r);

// min and max of r H_kappa(r) over (0, r_max], from monotonicity.
std::pair<double, double> rH_range(double kappa, int n, double r_max);

double constant_C2(int p, int n, double kappa1, double kappa2, double r_max);
std::pair<double, double> beta_bounds(int p, int n, double kappa1, double kappa2, double r_max);
// Upper bound 1 + r H_kappa(r) for the Laplacian of rho.
double comparison_bounds(double kappa, int n, double r);

CurvatureConstants curvature_constants(int p, int n, double kappa1, double kappa2, double r_max);

// Throws DomainError unless x0 lies strictly inside the mesh.
GeometryReport geometric_summary(const Mesh &mesh, const Vec2 &x0);

Vec2 centroid(const Mesh &mesh);
bool point_in_mesh(const Mesh &mesh, const Vec2 &x, double tol = 0.0);

// Grid search over interior points for the largest h_min.
Vec2 best_star_center(const Mesh &mesh, int grid = 20);

// Betti numbers of the triangulated planar domain: b0 connected components,
// b1 = boundary loops - b0, b2 = 0.
int betti_number(const Mesh &mesh, int k);

}  // namespace ksforms

#endif  // KSFORMS_GEOMETRY_HPP
