// Copyright 2026 The ksforms Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ksforms/error.hpp"
#include "ksforms/geometry.hpp"

using namespace ksforms;

TEST_CASE("H_kappa closed forms")
{
  CHECK(riccati_H(0, 2, 0.5) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(riccati_H(1, 3, std::numbers::pi / 4) == doctest::Approx(2.0).epsilon(1e-14));
  for (double k : {-1.0, 0.0, 1.0})
  {
    for (int i = 0; i < 100; ++i)
    {
      const double r = 0.1 + 2.5 * i / 99.0;
      CHECK(std::abs(riccati_residual(k, 2, r)) <= 1e-12);
      CHECK(std::abs(riccati_residual(k, 4, r)) <= 1e-11);
    }
    CHECK(1e-6 * riccati_H(k, 3, 1e-6) / 2.0 == doctest::Approx(1.0).epsilon(1e-8));
  }
  CHECK_THROWS_AS(riccati_H(1, 2, 4.0), DomainError);
  CHECK_THROWS_AS(riccati_H(0, 2, 0.0), DomainError);
}

TEST_CASE("C2 and beta bounds")
{
  CHECK(constant_C2(1, 2, 0, 0, 1.0) == 2.0);
  CHECK(constant_C2(1, 3, 0, 0, 5.0) == 1.0);
  CHECK(constant_C2(1, 2, -1, 0, 1.0) ==
        doctest::Approx(4.0 / std::tanh(1.0) - 2.0).epsilon(1e-14));
  for (int p : {0, 1, 2})
  {
    const auto [lo, hi] = beta_bounds(p, 2, 0, 0, 3.0);
    CHECK(lo == p);
    CHECK(hi == p);
  }
  const auto [lo, hi] = beta_bounds(2, 3, 0, 0, 1.0);
  CHECK(lo == 2.0);
  CHECK(hi == 2.0);
  const auto [l2, h2] = beta_bounds(1, 2, -1, 1, 1.0);
  CHECK(l2 == doctest::Approx(1.0 / std::tan(1.0)).epsilon(1e-14));
  CHECK(h2 == doctest::Approx(1.0 / std::tanh(1.0)).epsilon(1e-14));
  const auto [l3, h3] = beta_bounds(1, 2, 0.5, 0.5, 1.0);
  CHECK(l3 <= h3);
  const auto [l4, h4] = beta_bounds(1, 2, -0.5, -0.5, 1.0);
  CHECK(l4 <= h4);
  CHECK_THROWS_AS(constant_C2(1, 2, 1, 0, 1.0), DomainError);
  CHECK_THROWS_AS(constant_C2(1, 2, 0, 1, 2.0), DomainError);
  CHECK(comparison_bounds(0, 2, 0.3) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(comparison_bounds(0, 5, 7.0) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("geometric summary")
{
  const Mesh disk = gen_disk(1.0, 0.05);
  const auto g = geometric_summary(disk, Vec2::Zero());
  CHECK(g.r_max == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(g.h_min - 1.0) < 5e-3);
  CHECK(g.h_max <= g.r_max);
  CHECK(g.h_min <= g.h_max);
  CHECK(g.star_shaped);
  CHECK(g.convex);
  CHECK(geometric_summary(gen_disk(2.0, 0.1), Vec2::Zero()).r_max ==
        doctest::Approx(2.0).epsilon(1e-12));

  const Mesh sq = gen_polygon({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}, 0.25);
  const auto s = geometric_summary(sq, Vec2::Zero());
  for (double h : s.h_values)
  {
    CHECK(h == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(s.r_max == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(s.convex);

  const Mesh ell = gen_polygon({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}, 0.25);
  const auto e = geometric_summary(ell, Vec2(1.8, 0.2));
  CHECK_FALSE(e.star_shaped);
  CHECK_FALSE(e.convex);
  CHECK(geometric_summary(ell, Vec2(0.5, 0.5)).star_shaped);

  CHECK_THROWS_AS(geometric_summary(sq, Vec2(3, 0)), DomainError);
  CHECK_THROWS_AS(geometric_summary(sq, Vec2(1, 0)), DomainError);
}
