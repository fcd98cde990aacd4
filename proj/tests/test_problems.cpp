// Copyright 2026 The ksforms Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "ksforms/error.hpp"
#include "ksforms/geometry.hpp"
#include "ksforms/oracle.hpp"
#include "ksforms/problems.hpp"

using namespace ksforms;

namespace
{

ProblemSpec make(const std::string &id, int p, const Mesh &mesh, int k = 5, int order = 2)
{
  ProblemSpec s;
  s.problem_id = id;
  s.p = p;
  s.k = k;
  s.mesh = mesh;
  s.nodal_order = order;
  return s;
}

const Mesh &disk()
{
  static const Mesh m = gen_disk(1.0, 0.1);
  return m;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("Dirichlet spectra on the disk")
{
  const auto oracle = disk_scalar_spectrum("dirichlet", 1.0, 5);
  const SpectralResult r0 = dirichlet_spectrum(make("dirichlet", 0, disk()));
  CHECK(r0.kernel_dim == 0);
  CHECK(rel(r0.eigenvalues[0], oracle.values[0]) < 0.005);
  for (double v : r0.eigenvalues)
  {
    CHECK(v > 0.0);
  }
  for (double res : r0.residual_norms)
  {
    CHECK(res <= 1e-10);
  }
  REQUIRE(r0.eigenvectors.size() == 5);

  const SpectralResult r1 = dirichlet_spectrum(make("dirichlet", 1, disk(), 6));
  const auto forms = disk_form_spectrum(1, "dirichlet", 1.0, 6);
  for (int i = 0; i < 6; ++i)
  {
    CHECK(rel(r1.eigenvalues[i], forms.values[i]) < 0.005);
  }
  // Componentwise: each scalar value twice.
  CHECK(r1.eigenvalues[0] == doctest::Approx(r0.eigenvalues[0]).epsilon(1e-9));
  CHECK(r1.eigenvalues[1] == doctest::Approx(r0.eigenvalues[0]).epsilon(1e-9));

  const SpectralResult r2 = dirichlet_spectrum(make("dirichlet", 2, disk()));
  for (int i = 0; i < 5; ++i)
  {
    CHECK(std::abs(r2.eigenvalues[i] - r0.eigenvalues[i]) <= 1e-10 * r0.eigenvalues[i]);
  }
}

TEST_CASE("Dirichlet scaling and radius law")
{
  for (double R : {0.5, 2.0})
  {
    const SpectralResult r = dirichlet_spectrum(make("dirichlet", 0, disk().scaled(R), 1));
    const auto o = disk_scalar_spectrum("dirichlet", R, 1);
    CHECK(rel(r.eigenvalues[0], o.values[0]) < 0.01);
  }
}

TEST_CASE("absolute Neumann spectra")
{
  const SpectralResult r0 = neumann_absolute_spectrum(make("neumann_absolute", 0, disk()));
  CHECK(r0.kernel_dim == 1);
  const auto o = disk_scalar_spectrum("neumann", 1.0, 5);
  CHECK(rel(r0.eigenvalues[0], o.values[0]) < 0.005);

  const SpectralResult r1 = neumann_absolute_spectrum(make("neumann_absolute", 1, disk(), 6));
  CHECK(r1.kernel_dim == 0);
  const auto f = disk_form_spectrum(1, "neumann_absolute", 1.0, 6);
  for (int i = 0; i < 6; ++i)
  {
    CHECK(rel(r1.eigenvalues[i], f.values[i]) < 0.01);
  }

  // Absolute 2-forms vanish on the boundary: the scalar Dirichlet spectrum.
  const SpectralResult r2 = neumann_absolute_spectrum(make("neumann_absolute", 2, disk()));
  const SpectralResult d0 = dirichlet_spectrum(make("dirichlet", 0, disk()));
  for (int i = 0; i < 5; ++i)
  {
    CHECK(std::abs(r2.eigenvalues[i] - d0.eigenvalues[i]) <= 1e-10 * d0.eigenvalues[i]);
  }
}

TEST_CASE("Neumann below Dirichlet")
{
  for (int p : {0, 1})
  {
    const SpectralResult n = neumann_absolute_spectrum(make("neumann_absolute", p, disk(), 8));
    const SpectralResult d = dirichlet_spectrum(make("dirichlet", p, disk(), 8));
    for (int i = 0; i < 8; ++i)
    {
      CHECK(n.eigenvalues[i] <= d.eigenvalues[i]);
    }
  }
}

TEST_CASE("Steklov spectra")
{
  const SpectralResult r0 = steklov_spectrum(make("steklov", 0, disk()));
  CHECK(r0.kernel_dim == 1);
  const double expected[] = {1, 1, 2, 2, 3};
  for (int i = 0; i < 5; ++i)
  {
    CHECK(rel(r0.eigenvalues[i], expected[i]) < 0.01);
  }
  const SpectralResult rR = steklov_spectrum(make("steklov", 0, disk().scaled(2.0)));
  for (int i = 0; i < 5; ++i)
  {
    CHECK(rel(rR.eigenvalues[i], r0.eigenvalues[i] / 2.0) < 0.01);
  }
  const SpectralResult r1 = steklov_spectrum(make("steklov", 1, disk()));
  CHECK(r1.kernel_dim == 0);
  CHECK(r1.eigenvalues[0] > 0.0);
  REQUIRE(r1.eigenvectors.size() == 5);
  CHECK_THROWS_AS(steklov_spectrum(make("steklov", 2, disk())), DomainError);
}

TEST_CASE("biharmonic Steklov problems on the disk")
{
  const double q = bsd1_first(make("bsd1", 0, disk()));
  CHECK(rel(q, 2.0) < 0.01);
  CHECK(rel(bsd1_first(make("bsd1", 0, disk().scaled(0.5))), 4.0) < 0.01);

  const SpectralResult scalar = bsd_scalar_spectrum(make("bsd_scalar", 0, disk()));
  CHECK(rel(scalar.eigenvalues[0], 2.0) < 0.01);
  const SpectralResult b0 = bsd2_spectrum(make("bsd2", 0, disk()));
  for (int i = 0; i < 5; ++i)
  {
    CHECK(b0.eigenvalues[i] == doctest::Approx(scalar.eigenvalues[i]).epsilon(1e-9));
  }
  CHECK(rel(b0.eigenvalues[0], 2.0) < 0.02);

  const SpectralResult h1 = harmonic_ratio_spectrum(make("bsd1", 1, disk(), 6));
  const SpectralResult b1 = bsd2_spectrum(make("bsd2", 1, disk(), 6));
  for (int i = 0; i < 6; ++i)
  {
    CHECK(h1.eigenvalues[i] <= b1.eigenvalues[i] * (1.0 + 1e-10));
    CHECK(b1.eigenvalues[i] > 0.0);
  }

  const SpectralResult bsn = bsn_scalar_spectrum(make("bsn_scalar", 0, disk()));
  CHECK(bsn.kernel_dim == 1);
  CHECK(rel(bsn.eigenvalues[0], bsn_disk_mode_shooting(1, 1.0)) < 0.02);
  CHECK(rel(bsn.eigenvalues[2], bsn_disk_mode_shooting(2, 1.0)) < 0.02);
}

TEST_CASE("bold q_1 Cauchy convergence for 1-forms")
{
  const double coarse = bsd2_spectrum(make("bsd2", 1, gen_disk(1.0, 0.2), 1)).eigenvalues[0];
  const double fine = bsd2_spectrum(make("bsd2", 1, gen_disk(1.0, 0.1), 1)).eigenvalues[0];
  CHECK(rel(coarse, fine) < 0.02);
}

TEST_CASE("dense brute force agrees with the sparse path on a small disk")
{
  const Mesh small = gen_disk(1.0, 0.3);
  CHECK(small.num_vertices() <= 70);
  for (const std::string &id : problem_ids())
  {
    for (int p : {0, 1})
    {
      if (p == 1 && (id == "bsd_scalar" || id == "bsn_scalar"))
      {
        continue;
      }
      CAPTURE(id);
      CAPTURE(p);
      const ProblemSpec s = make(id, p, small, 5);
      const SpectralResult sparse = solve_problem(s);
      const SpectralResult dense = dense_brute(s);
      CHECK(sparse.kernel_dim == dense.kernel_dim);
      for (int i = 0; i < 5; ++i)
      {
        CHECK(std::abs(sparse.eigenvalues[i] - dense.eigenvalues[i]) <=
              1e-8 * dense.eigenvalues[i]);
      }
    }
  }
  CHECK_THROWS_AS(dense_brute(make("dirichlet", 1, disk())), DomainError);
}

TEST_CASE("results are independent of the vertex numbering")
{
  const Mesh m = gen_disk(1.0, 0.2);
  std::vector<int> perm(m.num_vertices());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), std::mt19937(3));
  const Mesh q = m.permuted(perm);
  for (const std::string id : {"dirichlet", "neumann_absolute", "steklov", "bsd2"})
  {
    const SpectralResult a = solve_problem(make(id, 1, m, 4));
    const SpectralResult b = solve_problem(make(id, 1, q, 4));
    for (int i = 0; i < 4; ++i)
    {
      CHECK(std::abs(a.eigenvalues[i] - b.eigenvalues[i]) <= 1e-10 * a.eigenvalues[i]);
    }
  }
}

TEST_CASE("annulus: kernel dimension follows the first Betti number")
{
  CHECK(betti_number(gen_annulus(0.5, 1.0, 0.2), 1) == 1);
  CHECK(betti_number(disk(), 1) == 0);
  CHECK(betti_number(disk(), 0) == 1);
  double previous = 0.0;
  for (double h : {0.1, 0.05})
  {
    const Mesh a = gen_annulus(0.5, 1.0, h);
    const SpectralResult n = neumann_absolute_spectrum(make("neumann_absolute", 1, a, 3));
    const SpectralResult s = steklov_spectrum(make("steklov", 1, a, 3));
    CHECK(n.kernel_dim == 1);
    CHECK(s.kernel_dim == 1);
    REQUIRE(n.kernel_values.size() == 1);
    CHECK(n.kernel_values[0] < 0.01 * n.eigenvalues[0]);
    if (previous > 0.0)
    {
      CHECK(n.kernel_values[0] < previous / 8.0);
    }
    previous = n.kernel_values[0];
    const SpectralResult n0 = neumann_absolute_spectrum(make("neumann_absolute", 0, a, 3));
    CHECK(n0.kernel_dim == 1);
  }
}

TEST_CASE("square with corners")
{
  const Mesh sq = gen_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, 0.1);
  const SpectralResult n = neumann_absolute_spectrum(make("neumann_absolute", 1, sq, 2));
  const double pi2 = M_PI * M_PI;
  CHECK(rel(n.eigenvalues[0], pi2) < 1e-3);
  const SpectralResult d = dirichlet_spectrum(make("dirichlet", 1, sq, 2));
  CHECK(rel(d.eigenvalues[0], 2 * pi2) < 1e-3);
}

TEST_CASE("problem validation")
{
  CHECK_THROWS_AS(solve_problem(make("nope", 0, disk())), DomainError);
  CHECK_THROWS_AS(solve_problem(make("bsd_scalar", 1, disk())), DomainError);
  CHECK_THROWS_AS(solve_problem(make("bsn_scalar", 0, disk(), 5, 1)), DomainError);
  CHECK_THROWS_AS(solve_problem(make("bsd2", 2, disk())), DomainError);
  CHECK_THROWS_AS(solve_problem(make("dirichlet", 3, disk())), DomainError);
  CHECK_THROWS_AS(solve_problem(make("dirichlet", 0, disk(), 0)), DomainError);
  // A single triangle has no interior nodes at order 1.
  const Mesh tri = Mesh::from_triangles({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}});
  CHECK_THROWS_AS(dirichlet_spectrum(make("dirichlet", 0, tri, 1, 1)), DomainError);
  ProblemSpec empty;
  CHECK_THROWS_AS(solve_problem(empty), DomainError);
}
