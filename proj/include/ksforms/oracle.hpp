// Copyright 2026 The ksforms Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef KSFORMS_ORACLE_HPP
#define KSFORMS_ORACLE_HPP

#include <string>
#include <vector>

#include "ksforms/mesh.hpp"
#include "ksforms/spectra.hpp"

namespace ksforms
{

struct ProblemSpec;

// Nonzero values repeated according to multiplicity, ascending; zero modes
// are counted in kernel_dim. `modes[i]` is the angular Fourier index of
// values[i].
struct DiskSpectrum
{
  std::string problem_id;
  double radius = 1.0;
  std::vector<double> values;
  std::vector<int> modes;
  int kernel_dim = 0;
};

double bessel_j(int m, double x);
double bessel_j_prime(int m, double x);

// k-th positive zero of J_m, or of J_m' when `derivative` is set.
double bessel_zero(int m, int k, bool derivative);
std::vector<double> bessel_zeros(int m, int count, bool derivative);

// problem_id: dirichlet, neumann, steklov, bsd_first, bsd (harmonic-ratio
// spectrum), bsn.
DiskSpectrum disk_scalar_spectrum(const std::string &problem_id, double radius, int count);

// 1-forms on the disk: dirichlet or neumann_absolute (nonzero part).
DiskSpectrum disk_form_spectrum(int p, const std::string &problem_id, double radius, int count);

// Biharmonic Neumann-type Steklov value of angular mode m on the disk,
// from radial shooting on the Fourier-reduced biharmonic equation.
double bsn_disk_mode_shooting(int m, double radius, int steps = 4000);
double bsn_disk_mode_closed_form(int m, double radius);

// Full dense solve of the same discrete problem; the mesh must give at most
// 500 primal degrees of freedom.
SpectralResult dense_brute(const ProblemSpec &spec);
// Dense solve of A x = t B x with B positive definite, at most 500 x 500.
SpectralResult dense_brute(const Eigen::MatrixXd &A, const Eigen::MatrixXd &B);

}  // namespace ksforms

#endif  // KSFORMS_ORACLE_HPP
