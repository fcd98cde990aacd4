// Copyright 2026 The ksforms Authors
// SPDX-License-Identifier: Apache-2.0

#include "ksforms/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "ksforms/error.hpp"

namespace ksforms
{

namespace
{

void check_args(double kappa, int n, double r)
{
  if (n < 2)
  {
    throw DomainError("dimension must be at least 2");
  }
  if (!(r > 0.0) || !std::isfinite(r))
  {
    throw DomainError("radius must be positive");
  }
  if (kappa > 0.0 && r >= std::numbers::pi / std::sqrt(kappa))
  {
    throw DomainError("H_kappa needs r < pi / sqrt(kappa) when kappa > 0");
  }
}

}  // namespace

double riccati_H(double kappa, int n, double r)
{
  check_args(kappa, n, r);
  const double m = n - 1.0;
  if (kappa > 0.0)
  {
    const double s = std::sqrt(kappa);
    return m * s / std::tan(s * r);
  }
  if (kappa < 0.0)
  {
    const double s = std::sqrt(-kappa);
    return m * s / std::tanh(s * r);
  }
  return m / r;
}

double riccati_H_prime(double kappa, int n, double r)
{
  check_args(kappa, n, r);
  const double m = n - 1.0;
  if (kappa > 0.0)
  {
    const double sn = std::sin(std::sqrt(kappa) * r);
    return -m * kappa / (sn * sn);
  }
  if (kappa < 0.0)
  {
    const double sh = std::sinh(std::sqrt(-kappa) * r);
    return m * kappa / (sh * sh);
  }
  return -m / (r * r);
}

double riccati_residual(double kappa, int n, double r)
{
  const double h = riccati_H(kappa, n, r);
  return riccati_H_prime(kappa, n, r) + h * h / (n - 1.0) + (n - 1.0) * kappa;
}

std::pair<double, double> rH_range(double kappa, int n, double r_max)
{
  const double limit = n - 1.0;
  const double end = r_max * riccati_H(kappa, n, r_max);
  if (kappa > 0.0)
  {
    return {end, limit};
  }
  if (kappa < 0.0)
  {
    return {limit, end};
  }
  return {limit, limit};
}

namespace
{

void check_pair(int p, int n, double kappa1, double kappa2, double r_max)
{
  if (p < 0 || p > n)
  {
    throw DomainError("form degree must lie in [0, n]");
  }
  if (kappa1 > kappa2)
  {
    throw DomainError("kappa1 must not exceed kappa2");
  }
  if (!(r_max > 0.0))
  {
    throw DomainError("r_max must be positive");
  }
  if (kappa2 > 0.0 && r_max >= std::numbers::pi / (2.0 * std::sqrt(kappa2)))
  {
    throw DomainError("r_max must be below pi / (2 sqrt(kappa2)) when kappa2 > 0");
  }
}

}  // namespace

double constant_C2(int p, int n, double kappa1, double kappa2, double r_max)
{
  check_pair(p, n, kappa1, kappa2, r_max);
  const double max1 = rH_range(kappa1, n, r_max).second;
  const double min2 = rH_range(kappa2, n, r_max).first;
  return 2.0 * (p + 1.0) / (n - 1.0) * max1 - (1.0 + min2);
}

std::pair<double, double> beta_bounds(int p, int n, double kappa1, double kappa2, double r_max)
{
  check_pair(p, n, kappa1, kappa2, r_max);
  const double f = p / (n - 1.0);
  return {f * rH_range(kappa2, n, r_max).first, f * rH_range(kappa1, n, r_max).second};
}

double comparison_bounds(double kappa, int n, double r)
{
  return 1.0 + r * riccati_H(kappa, n, r);
}

CurvatureConstants curvature_constants(int p, int n, double kappa1, double kappa2, double r_max)
{
  CurvatureConstants c;
  c.kappa1 = kappa1;
  c.kappa2 = kappa2;
  c.p = p;
  c.n = n;
  c.r_max = r_max;
  c.C2 = constant_C2(p, n, kappa1, kappa2, r_max);
  std::tie(c.beta_lower, c.beta_upper) = beta_bounds(p, n, kappa1, kappa2, r_max);
  c.C0 = 2.0;
  return c;
}

bool point_in_mesh(const Mesh &mesh, const Vec2 &x, double tol)
{
  for (const auto &t : mesh.triangles())
  {
    const Vec2 &a = mesh.vertices()[t[0]], &b = mesh.vertices()[t[1]], &c = mesh.vertices()[t[2]];
    const double area = (b - a).x() * (c - a).y() - (b - a).y() * (c - a).x();
    const double l0 = ((b - x).x() * (c - x).y() - (b - x).y() * (c - x).x()) / area;
    const double l1 = ((c - x).x() * (a - x).y() - (c - x).y() * (a - x).x()) / area;
    const double l2 = 1.0 - l0 - l1;
    if (l0 >= -tol && l1 >= -tol && l2 >= -tol)
    {
      return true;
    }
  }
  return false;
}

Vec2 centroid(const Mesh &mesh)
{
  Vec2 c = Vec2::Zero();
  double a = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t)
  {
    const auto &tri = mesh.triangles()[t];
    const double at = mesh.triangle_area(t);
    c += at * (mesh.vertices()[tri[0]] + mesh.vertices()[tri[1]] + mesh.vertices()[tri[2]]) / 3.0;
    a += at;
  }
  return c / a;
}

namespace
{

double distance_to_segment(const Vec2 &x, const Vec2 &a, const Vec2 &b)
{
  const Vec2 d = b - a;
  const double t = std::clamp((x - a).dot(d) / d.squaredNorm(), 0.0, 1.0);
  return (x - a - t * d).norm();
}

}  // namespace

GeometryReport geometric_summary(const Mesh &mesh, const Vec2 &x0)
{
  const auto &v = mesh.vertices();
  double scale = 0.0;
  for (const auto &p : v)
  {
    scale = std::max(scale, p.norm());
  }
  if (!point_in_mesh(mesh, x0, 1e-12))
  {
    throw DomainError("x0 lies outside the mesh");
  }
  for (const auto &f : mesh.boundary_facets())
  {
    if (distance_to_segment(x0, v[f.endpoints[0]], v[f.endpoints[1]]) <= 1e-12 * scale)
    {
      throw DomainError("x0 lies on the boundary");
    }
  }

  GeometryReport r;
  r.x0 = x0;
  r.h_min = std::numeric_limits<double>::infinity();
  r.h_max = -std::numeric_limits<double>::infinity();
  for (const auto &f : mesh.boundary_facets())
  {
    const Vec2 mid = 0.5 * (v[f.endpoints[0]] + v[f.endpoints[1]]);
    const double h = (mid - x0).dot(f.outward_normal);
    r.h_values.push_back(h);
    r.h_min = std::min(r.h_min, h);
    r.h_max = std::max(r.h_max, h);
    r.r_max = std::max({r.r_max, (v[f.endpoints[0]] - x0).norm(), (v[f.endpoints[1]] - x0).norm()});
  }
  r.star_shaped = r.h_min > 0.0;

  r.convex = mesh.boundary_loops().size() == 1;
  if (r.convex)
  {
    const auto &loop = mesh.boundary_loops().front();
    const auto &facets = mesh.boundary_facets();
    for (std::size_t i = 0; i < loop.size() && r.convex; ++i)
    {
      const auto &f0 = facets[loop[i]];
      const auto &f1 = facets[loop[(i + 1) % loop.size()]];
      const Vec2 e0 = v[f0.endpoints[1]] - v[f0.endpoints[0]];
      const Vec2 e1 = v[f1.endpoints[1]] - v[f1.endpoints[0]];
      // interior angle <= pi + 1e-9 means the left turn is >= -1e-9
      const double turn = std::atan2(e0.x() * e1.y() - e0.y() * e1.x(), e0.dot(e1));
      r.convex = turn >= -1e-9;
    }
  }
  return r;
}

Vec2 best_star_center(const Mesh &mesh, int grid)
{
  Vec2 lo = mesh.vertices().front(), hi = lo;
  for (const auto &p : mesh.vertices())
  {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  Vec2 best = centroid(mesh);
  double best_h = -std::numeric_limits<double>::infinity();
  for (int i = 1; i < grid; ++i)
  {
    for (int j = 1; j < grid; ++j)
    {
      const Vec2 x(lo.x() + (hi.x() - lo.x()) * i / grid, lo.y() + (hi.y() - lo.y()) * j / grid);
      try
      {
        const double h = geometric_summary(mesh, x).h_min;
        if (h > best_h)
        {
          best_h = h;
          best = x;
        }
      }
      catch (const DomainError &)
      {
      }
    }
  }
  return best;
}

int betti_number(const Mesh &mesh, int k)
{
  if (k < 0 || k > 2)
  {
    throw DomainError("Betti numbers of a planar domain are defined for k = 0, 1, 2");
  }
  if (k == 2)
  {
    return 0;
  }
  std::vector<int> parent(mesh.num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int v) {
    while (parent[v] != v)
    {
      v = parent[v] = parent[parent[v]];
    }
    return v;
  };
  for (const auto &t : mesh.triangles())
  {
    parent[find(t[1])] = find(t[0]);
    parent[find(t[2])] = find(t[0]);
  }
  int components = 0;
  for (int v = 0; v < mesh.num_vertices(); ++v)
  {
    components += find(v) == v ? 1 : 0;
  }
  if (k == 0)
  {
    return components;
  }
  return static_cast<int>(mesh.boundary_loops().size()) - components;
}

}  // namespace ksforms
