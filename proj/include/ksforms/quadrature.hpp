// Copyright 2026 The ksforms Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef KSFORMS_QUADRATURE_HPP
#define KSFORMS_QUADRATURE_HPP

#include <vector>

#include <Eigen/Core>

namespace ksforms
{

// Points on [0, 1] with weights summing to 1.
struct LineRule
{
  std::vector<double> points;
  std::vector<double> weights;
};

// Barycentric points (l0, l1, l2) with weights summing to 1; multiply by the
// triangle area.
struct TriangleRule
{
  std::vector<Eigen::Vector3d> points;
  std::vector<double> weights;
};

// Gauss-Legendre rule with n points, exact for degree 2n - 1.
LineRule gauss_legendre(int n);

// Line rule exact for polynomials of the given degree.
LineRule line_rule(int degree);

// Collapsed (Duffy) tensor Gauss rule exact for polynomials of the given
// total degree on a triangle.
TriangleRule triangle_rule(int degree);

}  // namespace ksforms

#endif  // KSFORMS_QUADRATURE_HPP
