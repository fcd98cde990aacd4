// Copyright 2026 The ksforms Authors
// SPDX-License-Identifier: Apache-2.0

#include "ksforms/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "ksforms/error.hpp"

namespace ksforms
{

LineRule gauss_legendre(int n)
{
  if (n < 1 || n > 64)
  {
    throw DomainError("Gauss-Legendre point count must be in [1, 64]");
  }
  LineRule r;
  r.points.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i)
  {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it)
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k)
      {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1)
      {
        p0 = 1.0;
        p1 = x;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
      {
        break;
      }
    }
    // map [-1, 1] to [0, 1]
    r.points[i] = 0.5 * (1.0 - x);
    r.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

LineRule line_rule(int degree)
{
  return gauss_legendre(std::max(1, degree / 2 + 1));
}

TriangleRule triangle_rule(int degree)
{
  static std::mutex lock;
  static std::map<int, TriangleRule> cache;
  std::lock_guard<std::mutex> guard(lock);
  auto it = cache.find(degree);
  if (it != cache.end())
  {
    return it->second;
  }
  // the collapse adds one degree in the first direction
  const LineRule gu = line_rule(degree + 1);
  const LineRule gv = line_rule(degree);
  TriangleRule r;
  for (std::size_t i = 0; i < gu.points.size(); ++i)
  {
    const double u = gu.points[i];
    for (std::size_t j = 0; j < gv.points.size(); ++j)
    {
      const double xi = u;
      const double eta = (1.0 - u) * gv.points[j];
      r.points.emplace_back(1.0 - xi - eta, xi, eta);
      r.weights.push_back(2.0 * (1.0 - u) * gu.weights[i] * gv.weights[j]);
    }
  }
  cache.emplace(degree, r);
  return r;
}

}  // namespace ksforms
