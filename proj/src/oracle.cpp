// Copyright 2026 The ksforms Authors
// SPDX-License-Identifier: Apache-2.0

#include "ksforms/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ksforms/error.hpp"
#include "ksforms/problems.hpp"

namespace ksforms
{

namespace
{

double bessel_series(int m, double x)
{
  const long double h = 0.5L * x;
  long double term = 1.0L;
  for (int i = 1; i <= m; ++i)
  {
    term *= h / i;
  }
  long double sum = term;
  const long double h2 = h * h;
  for (int k = 1; k < 200; ++k)
  {
    term *= -h2 / (static_cast<long double>(k) * (k + m));
    sum += term;
    if (std::abs(term) < 1e-21L * std::abs(sum) && k > h)
    {
      break;
    }
  }
  return static_cast<double>(sum);
}

// Miller's backward recurrence normalised by J_0 + 2 sum J_2k = 1.
double bessel_miller(int m, double x)
{
  const int top = 2 * ((std::max(m, static_cast<int>(x)) + 60) / 2);
  long double jp1 = 0.0L, j = 1e-30L, norm = 0.0L, result = 0.0L;
  for (int k = top; k >= 1; --k)
  {
    const long double jm1 = 2.0L * k / x * j - jp1;
    jp1 = j;
    j = jm1;
    if (k - 1 == m)
    {
      result = j;
    }
    if ((k - 1) % 2 == 0 && k - 1 > 0)
    {
      norm += 2.0L * j;
    }
    if (std::abs(j) > 1e250L)
    {
      j *= 1e-250L;
      jp1 *= 1e-250L;
      norm *= 1e-250L;
      result *= 1e-250L;
    }
  }
  norm += j;
  if (m == 0)
  {
    result = j;
  }
  return static_cast<double>(result / norm);
}

}  // namespace

double bessel_j(int m, double x)
{
  if (m < 0)
  {
    return (m % 2 == 0 ? 1.0 : -1.0) * bessel_j(-m, x);
  }
  if (x < 0.0)
  {
    return (m % 2 == 0 ? 1.0 : -1.0) * bessel_j(m, -x);
  }
  if (x == 0.0)
  {
    return m == 0 ? 1.0 : 0.0;
  }
  return x <= 12.0 ? bessel_series(m, x) : bessel_miller(m, x);
}

double bessel_j_prime(int m, double x) { return 0.5 * (bessel_j(m - 1, x) - bessel_j(m + 1, x)); }

std::vector<double> bessel_zeros(int m, int count, bool derivative)
{
  if (m < 0 || count < 1)
  {
    throw DomainError("bessel_zeros needs m >= 0 and count >= 1");
  }
  auto f = [&](double x) { return derivative ? bessel_j_prime(m, x) : bessel_j(m, x); };
  std::vector<double> zeros;
  const double step = 0.05;
  const double limit = m + 10.0 * (count + 10) + 50.0;
  double a = std::max(0.05, 0.9 * m);
  double fa = f(a);
  while (static_cast<int>(zeros.size()) < count)
  {
    const double b = a + step;
    if (b > limit)
    {
      throw DomainError("zero bracket not found in the scan range");
    }
    const double fb = f(b);
    if (fa == 0.0)
    {
      zeros.push_back(a);
    }
    else if (fa * fb < 0.0)
    {
      double lo = a, hi = b, flo = fa;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it)
      {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0)
        {
          lo = hi = mid;
          break;
        }
        if ((fm < 0.0) == (flo < 0.0))
        {
          lo = mid;
          flo = fm;
        }
        else
        {
          hi = mid;
        }
      }
      zeros.push_back(0.5 * (lo + hi));
    }
    a = b;
    fa = fb;
  }
  return zeros;
}

double bessel_zero(int m, int k, bool derivative)
{
  if (k < 1)
  {
    throw DomainError("zero index k must be >= 1");
  }
  return bessel_zeros(m, k, derivative).back();
}

namespace
{

void check_count(double radius, int count)
{
  if (!(radius > 0.0))
  {
    throw DomainError("radius must be positive");
  }
  if (count < 1)
  {
    throw DomainError("count must be positive");
  }
}

DiskSpectrum finish(const std::string &id, double radius, std::vector<std::pair<double, int>> v,
                    int count)
{
  DiskSpectrum s;
  s.problem_id = id;
  s.radius = radius;
  s.kernel_dim = static_cast<int>(
    std::count_if(v.begin(), v.end(), [](const auto &e) { return e.first == 0.0; }));
  std::erase_if(v, [](const auto &e) { return e.first == 0.0; });
  std::stable_sort(v.begin(), v.end(),
                   [](const auto &a, const auto &b) { return a.first < b.first; });
  if (static_cast<int>(v.size()) > count)
  {
    v.resize(count);
  }
  for (const auto &[val, m] : v)
  {
    s.values.push_back(val);
    s.modes.push_back(m);
  }
  return s;
}

void add_mode(std::vector<std::pair<double, int>> &v, double value, int m)
{
  v.emplace_back(value, m);
  if (m > 0)
  {
    v.emplace_back(value, m);
  }
}

// Squared Bessel-zero spectrum covering at least `count` values.
std::vector<std::pair<double, int>> bessel_family(double radius, int count, bool derivative)
{
  std::vector<std::pair<double, int>> v;
  // radial family: for the derivative case its zeros are those of J_1
  const auto radial = bessel_zeros(0, count, derivative);
  const double bound = radial.back() + 1e-9;
  for (double z : radial)
  {
    v.emplace_back(z * z / (radius * radius), 0);
  }
  for (int m = 1; m < bound; ++m)
  {
    for (int k = 1;; ++k)
    {
      const double z = bessel_zero(m, k, derivative);
      if (z > bound)
      {
        break;
      }
      add_mode(v, z * z / (radius * radius), m);
    }
  }
  return v;
}

}  // namespace

double bsn_disk_mode_closed_form(int m, double radius)
{
  return 2.0 * m * m * (m + 1.0) / (radius * radius * radius);
}

double bsn_disk_mode_shooting(int m, double radius, int steps)
{
  if (m < 0)
  {
    throw DomainError("mode index must be >= 0");
  }
  if (m == 0)
  {
    return 0.0;
  }
  // y = (u, u', w, w') with w the Laplacian of u in the mode; s = ln r.
  using State = std::array<double, 4>;
  const double mm = static_cast<double>(m) * m;
  auto rhs = [&](double s, const State &y) {
    const double r = std::exp(s);
    const double upp = y[2] - y[1] / r + mm * y[0] / (r * r);
    const double wpp = -y[3] / r + mm * y[2] / (r * r);
    return State{r * y[1], r * upp, r * y[3], r * wpp};
  };
  auto integrate = [&](State y, double s0, double s1) {
    const double h = (s1 - s0) / steps;
    double s = s0;
    for (int i = 0; i < steps; ++i)
    {
      const State k1 = rhs(s, y);
      State t;
      for (int j = 0; j < 4; ++j) t[j] = y[j] + 0.5 * h * k1[j];
      const State k2 = rhs(s + 0.5 * h, t);
      for (int j = 0; j < 4; ++j) t[j] = y[j] + 0.5 * h * k2[j];
      const State k3 = rhs(s + 0.5 * h, t);
      for (int j = 0; j < 4; ++j) t[j] = y[j] + h * k3[j];
      const State k4 = rhs(s + h, t);
      for (int j = 0; j < 4; ++j) y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
      s += h;
    }
    return y;
  };
  // the two solutions regular at the origin: r^m and r^{m+2}
  const double r0 = 1e-3 * radius;
  const double s0 = std::log(r0), s1 = std::log(radius);
  const State a0{std::pow(r0, m), m * std::pow(r0, m - 1), 0.0, 0.0};
  const double c = 4.0 * (m + 1.0);
  const State b0{std::pow(r0, m + 2), (m + 2.0) * std::pow(r0, m + 1), c * std::pow(r0, m),
                 c * m * std::pow(r0, m - 1)};
  const State a = integrate(a0, s0, s1), b = integrate(b0, s0, s1);
  // combination with u'(R) = 0, then l = -w'(R) / u(R)
  const double ca = b[1], cb = -a[1];
  const double u = ca * a[0] + cb * b[0];
  const double wp = ca * a[3] + cb * b[3];
  return -wp / u;
}

DiskSpectrum disk_scalar_spectrum(const std::string &problem_id, double radius, int count)
{
  check_count(radius, count);
  std::vector<std::pair<double, int>> v;
  if (problem_id == "dirichlet")
  {
    v = bessel_family(radius, count, false);
  }
  else if (problem_id == "neumann")
  {
    v = bessel_family(radius, count, true);
    v.emplace_back(0.0, 0);
  }
  else if (problem_id == "steklov")
  {
    v.emplace_back(0.0, 0);
    for (int m = 1; static_cast<int>(v.size()) <= count; ++m)
    {
      add_mode(v, m / radius, m);
    }
  }
  else if (problem_id == "bsd_first")
  {
    v.emplace_back(2.0 / radius, 0);
    count = 1;
  }
  else if (problem_id == "bsd")
  {
    for (int m = 0; static_cast<int>(v.size()) < count; ++m)
    {
      add_mode(v, (2.0 * m + 2.0) / radius, m);
    }
  }
  else if (problem_id == "bsn")
  {
    v.emplace_back(0.0, 0);
    for (int m = 1; static_cast<int>(v.size()) <= count; ++m)
    {
      add_mode(v, bsn_disk_mode_shooting(m, radius), m);
    }
  }
  else
  {
    throw DomainError("unknown disk problem id: " + problem_id);
  }
  return finish(problem_id, radius, std::move(v), count);
}

DiskSpectrum disk_form_spectrum(int p, const std::string &problem_id, double radius, int count)
{
  if (p != 1)
  {
    throw DomainError("disk form spectra are provided for p = 1 only");
  }
  check_count(radius, count);
  std::vector<std::pair<double, int>> v;
  const DiskSpectrum dir = disk_scalar_spectrum("dirichlet", radius, count);
  if (problem_id == "dirichlet")
  {
    for (std::size_t i = 0; i < dir.values.size(); ++i)
    {
      v.emplace_back(dir.values[i], dir.modes[i]);
      v.emplace_back(dir.values[i], dir.modes[i]);
    }
  }
  else if (problem_id == "neumann_absolute")
  {
    const DiskSpectrum neu = disk_scalar_spectrum("neumann", radius, count + 1);
    for (std::size_t i = 0; i < neu.values.size(); ++i)
    {
      if (neu.values[i] > 0.0)
      {
        v.emplace_back(neu.values[i], neu.modes[i]);
      }
    }
    for (std::size_t i = 0; i < dir.values.size(); ++i)
    {
      v.emplace_back(dir.values[i], dir.modes[i]);
    }
  }
  else
  {
    throw DomainError("unknown disk form problem id: " + problem_id);
  }
  return finish(problem_id, radius, std::move(v), count);
}

SpectralResult dense_brute(const Eigen::MatrixXd &A, const Eigen::MatrixXd &B)
{
  if (A.rows() > 500 || A.rows() != B.rows())
  {
    throw DomainError("dense brute force needs equal square matrices of size at most 500");
  }
  return dense_gevp(A, B);
}

SpectralResult dense_brute(const ProblemSpec &spec)
{
  const FullSystem fs = assemble_full_system(spec);
  SpectralResult r = fs.kind == "definite" ? dense_gevp(fs.A, fs.B)
                                           : dense_gevp_semidefinite(fs.A, fs.B, fs.c);
  if (fs.deflate_kernel)
  {
    r = deflate(r, spec.zero_threshold);
  }
  if (static_cast<int>(r.eigenvalues.size()) < spec.k)
  {
    throw DomainError("dense system has fewer than k nonzero eigenvalues");
  }
  r.eigenvalues.resize(spec.k);
  r.residual_norms.resize(spec.k);
  r.vectors = r.vectors.leftCols(spec.k).eval();
  r.problem_id = spec.problem_id;
  r.p = spec.p;
  return r;
}

}  // namespace ksforms
