// Copyright 2026 The ksforms Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef KSFORMS_RELLICH_HPP
#define KSFORMS_RELLICH_HPP

#include <array>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ksforms/analytic.hpp"
#include "ksforms/mesh.hpp"

namespace ksforms
{

// Terms of the Rellich identity for a p-form w and a vector field F, with
// nu the inward unit normal:
//   lhs: int <Lap w, F _| dw>, int <delta w, F _| Lap w>
//   rhs: A = -1/2 int_bdry (|dw|^2 + |delta w|^2) <F, nu>
//        B = int_bdry <F ^ iota* delta w, nu _| dw>
//        C = int_bdry <iota*(F _| dw), nu _| dw>
//        D = int_bdry <iota*(F _| delta w), nu _| delta w>
//        -1/2 int (|dw|^2 + |delta w|^2) div F
//        int <delta w, dF _| dw>  with dF _| a = sum_i (grad_{e_i} F) _| (e_i _| a)
//        int <T_F dw, dw>,  int <T_F delta w, delta w>
struct RellichLedger
{
  int p = 0;
  std::array<double, 2> lhs_terms{};
  std::array<double, 8> rhs_terms{};
  double residual = 0.0;

  double lhs() const { return lhs_terms[0] + lhs_terms[1]; }
  double rhs() const;
  // Largest magnitude among the ten terms.
  double scale() const;

  static const std::array<std::string, 2> &lhs_names();
  static const std::array<std::string, 8> &rhs_names();
  static const std::string &normal_convention();
};

// Pointwise value of T_F^{[p]} w.
Eigen::VectorXd t_f_apply(const VectorFieldSpec &F, const PolyForm &w, const Vec2 &point);

// max over samples of |L_F w - grad_F w - T_F w|, with L_F from Cartan's formula.
double lie_decomposition_residual(const VectorFieldSpec &F, const PolyForm &w,
                                  const std::vector<Vec2> &samples);

// Highest polynomial degree the ledger integrates exactly.
constexpr int kMaxQuadratureDegree = 120;

RellichLedger rellich_ledger(const Mesh &mesh, const VectorFieldSpec &F, const PolyForm &w);

// int (|dw|^2 + |delta w|^2) - int |grad w|^2 - (1/R) int_bdry |iota* w|^2 for
// a 1-form on a mesh of the disk of radius R.
double reilly_residual(const Mesh &mesh, const PolyForm &w, double radius);

}  // namespace ksforms

#endif  // KSFORMS_RELLICH_HPP
