// Copyright 2026 The ksforms Authors
// SPDX-License-Identifier: Apache-2.0

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ksforms/error.hpp"
#include "ksforms/forms_core.hpp"
#include "ksforms/geometry.hpp"
#include "ksforms/harness.hpp"
#include "ksforms/oracle.hpp"
#include "ksforms/problems.hpp"
#include "ksforms/rellich.hpp"

using namespace ksforms;

namespace
{

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Collects failed checks with a short description each.
struct Check
{
  bool ok = true;
  std::ostringstream note;

  void require(bool cond, const std::string &what)
  {
    if (!cond)
    {
      if (!ok)
      {
        note << "; ";
      }
      ok = false;
      note << what;
    }
  }
};

std::string fmt(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

ProblemSpec spec(const std::string &id, int p, const Mesh &mesh, int k, int order = 2)
{
  ProblemSpec s;
  s.problem_id = id;
  s.p = p;
  s.k = k;
  s.mesh = mesh;
  s.nodal_order = order;
  return s;
}

struct Timed
{
  SpectralResult result;
  double seconds = 0.0;
};

Timed timed_solve(const ProblemSpec &s)
{
  const auto t0 = Clock::now();
  Timed t{solve_problem(s), 0.0};
  t.seconds = seconds_since(t0);
  return t;
}

std::string ac1(Check &c)
{
  const Mesh disk = gen_disk(1.0, 0.02);
  double slowest = 0.0;
  auto run = [&](const std::string &id, int k) {
    Timed t = timed_solve(spec(id, 0, disk, k));
    slowest = std::max(slowest, t.seconds);
    c.require(t.seconds < 30.0, id + " took " + fmt(t.seconds) + " s");
    return t.result.eigenvalues;
  };
  const double lam = run("dirichlet", 1)[0];
  const double mu = run("neumann_absolute", 1)[0];
  const auto sigma = run("steklov", 5);
  const double q = run("bsd_scalar", 1)[0];
  const double qb = run("bsd2", 1)[0];
  c.require(rel(lam, 5.78319) <= 0.005, "lambda_1 = " + fmt(lam));
  c.require(rel(mu, 3.38996) <= 0.005, "mu_1 = " + fmt(mu));
  const double expected[] = {1, 1, 2, 2, 3};
  for (int i = 0; i < 5; ++i)
  {
    c.require(rel(sigma[i], expected[i]) <= 0.01, "sigma_" + std::to_string(i + 1) + " = " + fmt(sigma[i]));
  }
  c.require(rel(q, 2.0) <= 0.01, "q_1 = " + fmt(q));
  c.require(rel(qb, q) <= 0.02, "bold q_1 = " + fmt(qb));
  return "lambda1=" + fmt(lam) + " mu1=" + fmt(mu) + " sigma5=" + fmt(sigma[4]) + " q1=" + fmt(q) +
         " bsd2=" + fmt(qb) + " slowest=" + fmt(slowest) + "s";
}

// Strict relations need margin > budget and non-strict ones margin >= -budget.
// Non-strict cases inside the budget are ties and are listed.
void score(Check &c, const std::vector<InequalityReport> &reports, const std::string &where,
           int &count, std::vector<std::string> &ties)
{
  for (const auto &r : reports)
  {
    ++count;
    const std::string tag = where + " " + r.theorem_id + r.part + " p=" + std::to_string(r.p) +
                            " k=" + std::to_string(r.k);
    c.require(r.verdict == Verdict::pass, tag + " verdict " + to_string(r.verdict) + " margin " +
                                            fmt(r.margin) + " budget " + fmt(r.error_budget));
    if (r.verdict == Verdict::pass && !(r.margin > r.error_budget))
    {
      ties.push_back(tag);
    }
  }
}

std::string ac2(Check &c)
{
  const std::vector<int> ks = {1, 2, 3, 4, 5};
  int count = 0;
  std::vector<std::string> ties;
  for (const std::string shape : {"disk", "ellipse"})
  {
    VerifyConfig cfg;
    cfg.mesh_id = shape;
    SpectrumCache cache(make_shape(shape, 0.1), cfg);
    score(c, verify("KS-1.1", cache, std::nullopt, 0, ks), shape, count, ties);
    score(c, verify("KS-1.2", cache, std::nullopt, 0, {1}), shape, count, ties);
    score(c, verify("HS-1.3", cache, std::nullopt, 0, {1}), shape, count, ties);
    score(c, verify("MAIN-1", cache, std::nullopt, 1, {1}), shape, count, ties);
    score(c, verify("MAIN-2", cache, std::nullopt, 1, ks), shape, count, ties);
    score(c, verify("LEM-ORDER", cache, std::nullopt, 0, ks), shape, count, ties);
    score(c, verify("LEM-ORDER", cache, std::nullopt, 1, ks), shape, count, ties);
  }
  for (double R : {0.5, 1.0, 2.0})
  {
    VerifyConfig cfg;
    SpectrumCache cache(gen_disk(R, 0.1 * R), cfg);
    score(c, verify("COR-BALL", cache, std::nullopt, 1, {1}), "ball R=" + fmt(R), count, ties);
  }
  std::string detail = std::to_string(count) + " reports, " + std::to_string(ties.size()) +
                       " ties within budget";
  for (std::size_t i = 0; i < ties.size(); ++i)
  {
    detail += (i == 0 ? ": " : ", ") + ties[i];
  }
  return detail;
}

std::string ac3(Check &c)
{
  const auto t0 = Clock::now();
  const Mesh square = gen_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, 0.5);
  const Mesh triangle = gen_polygon({{0, 0}, {1, 0}, {0, 1}}, 1.0);
  double worst = 0.0, worst_df = 0.0;
  for (const Mesh *m : {&square, &triangle})
  {
    const VectorFieldSpec pos = VectorFieldSpec::position(centroid(*m));
    std::mt19937_64 rng(2026);
    for (int i = 0; i < 50; ++i)
    {
      const PolyForm w = PolyForm::random(1, 1 + i % 3, rng);
      const RellichLedger L = rellich_ledger(*m, pos, w);
      worst = std::max(worst, L.residual / std::max(1.0, L.scale()));
      worst_df = std::max(worst_df, std::abs(L.rhs_terms[5]) / std::max(1.0, L.scale()));
      const VectorFieldSpec G = VectorFieldSpec::random(1 + i % 3, true, rng);
      const RellichLedger Lg = rellich_ledger(*m, G, w);
      worst = std::max(worst, Lg.residual / std::max(1.0, Lg.scale()));
      worst_df = std::max(worst_df, std::abs(Lg.rhs_terms[5]) / std::max(1.0, Lg.scale()));
    }
  }
  const double elapsed = seconds_since(t0);
  c.require(worst <= 1e-10, "relative residual " + fmt(worst));
  c.require(worst_df <= 1e-12, "dF term " + fmt(worst_df));
  c.require(elapsed < 10.0, "runtime " + fmt(elapsed) + " s");
  return "max residual=" + fmt(worst) + " max dF term=" + fmt(worst_df) + " time=" + fmt(elapsed) + "s";
}

std::string ac4(Check &c)
{
  const Mesh square = gen_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, 0.2);
  const Mesh triangle = gen_polygon({{0, 0}, {1, 0}, {0, 1}}, 1.0);
  std::mt19937_64 rng(4);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial)
  {
    for (int p : {0, 1, 2})
    {
      const auto w = PolyForm::random(p, 3, rng), w2 = PolyForm::random(p, 3, rng);
      const auto up = p < 2 ? PolyForm::random(p + 1, 3, rng) : PolyForm(3);
      for (const Mesh *m : {&square, &triangle})
      {
        worst = std::max(worst, ibp_residuals(*m, w, w2, up).max_relative());
      }
    }
  }
  c.require(worst <= 1e-10, "residual " + fmt(worst));
  return "max relative residual over five identities=" + fmt(worst);
}

std::string ac5(Check &c)
{
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double worst_t = 0.0;
  for (int p : {1, 2})
  {
    for (int i = 0; i < 100; ++i)
    {
      const VectorFieldSpec F = VectorFieldSpec::position(Vec2(u(rng), u(rng)));
      const PolyForm w = PolyForm::random(p, 3, rng);
      const Vec2 x(u(rng), u(rng));
      const Eigen::VectorXd wx = w.eval(x);
      worst_t = std::max(worst_t, (t_f_apply(F, w, x) - p * wx).norm() / std::max(1.0, wx.norm()));
    }
  }
  std::vector<Vec2> samples;
  for (int i = 0; i < 16; ++i)
  {
    samples.emplace_back(u(rng), u(rng));
  }
  double worst_lie = 0.0;
  for (int trial = 0; trial < 200; ++trial)
  {
    const PolyForm w = PolyForm::random(trial % 3, 1 + trial % 4, rng);
    const VectorFieldSpec F = VectorFieldSpec::random(1 + trial % 3, trial % 2 == 0, rng);
    worst_lie = std::max(worst_lie, lie_decomposition_residual(F, w, samples));
  }
  c.require(worst_t <= 1e-13, "T_F deviation " + fmt(worst_t));
  c.require(worst_lie <= 1e-10, "Lie residual " + fmt(worst_lie));
  return "T_F - p Id=" + fmt(worst_t) + " Lie residual=" + fmt(worst_lie);
}

std::string ac6(Check &c)
{
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g;
  double worst = 0.0;
  const Mesh mesh = gen_disk(1.0, 0.25);
  for (int order : {1, 2})
  {
    auto space = std::make_shared<const FESpace>(mesh, order);
    for (int p : {0, 1, 2})
    {
      const auto ops = assemble(space, p);
      Eigen::VectorXd x(ops.num_dofs());
      const int nn = space->num_nodes();
      for (int i = 0; i < ops.num_dofs(); ++i)
      {
        x[i] = space->boundary_mask()[i % nn] ? 0.0 : g(rng);
      }
      const double b = x.dot(ops.B * x), gg = x.dot(ops.G * x);
      worst = std::max(worst, std::abs(b - gg) / gg);
    }
  }
  c.require(worst <= 1e-10, "Gaffney deviation " + fmt(worst));
  const PolyForm rot(1, {-1.0 * Poly2::y(), Poly2::x()});
  std::ostringstream os;
  double previous = 0.0;
  for (double h : {0.2, 0.1, 0.05})
  {
    const double r = reilly_residual(gen_disk(1.0, h), rot, 1.0);
    os << " h=" << h << ":" << fmt(r);
    c.require(r <= 4.0 * std::numbers::pi * h, "Reilly residual " + fmt(r) + " at h=" + fmt(h));
    if (previous > 0.0)
    {
      const double rate = std::log2(previous / r);
      c.require(rate >= 1.0, "Reilly rate " + fmt(rate));
    }
    previous = r;
  }
  return "Gaffney=" + fmt(worst) + " Reilly" + os.str();
}

std::string ac7(Check &c)
{
  double worst = 0.0;
  for (double kappa : {-1.0, 0.0, 1.0})
  {
    for (int i = 0; i < 100; ++i)
    {
      worst = std::max(worst, std::abs(riccati_residual(kappa, 2, 0.05 + 2.5 * i / 99.0)));
    }
    const double r = 1e-7;
    c.require(std::abs(r * riccati_H(kappa, 2, r) - 1.0) <= 1e-10, "small-r limit");
  }
  c.require(worst <= 1e-12, "Riccati residual " + fmt(worst));
  c.require(constant_C2(1, 2, 0, 0, 1.0) == 2.0, "C2(1,2,0,0)");
  for (int p : {0, 1, 2})
  {
    const auto [lo, hi] = beta_bounds(p, 2, 0, 0, 1.0);
    c.require(lo == p && hi == p, "beta bounds for p=" + std::to_string(p));
  }
  return "Riccati residual=" + fmt(worst) + " C2=" + fmt(constant_C2(1, 2, 0, 0, 1.0));
}

std::string ac8(Check &c)
{
  const std::vector<std::pair<std::string, Mesh>> meshes = {
    {"disk", gen_disk(1.0, 0.3)},
    {"ellipse", gen_ellipse(1.3, 0.8, 0.35)},
    {"square", make_shape("square", 0.3)}};
  double worst = 0.0;
  int compared = 0;
  for (const auto &[name, mesh] : meshes)
  {
    for (const std::string &id : problem_ids())
    {
      for (int p : {0, 1})
      {
        const bool scalar_only = id == "bsd_scalar" || id == "bsn_scalar";
        if (p == 1 && scalar_only)
        {
          continue;
        }
        const ProblemSpec s = spec(id, p, mesh, 5);
        if (assemble_full_system(s).primal_dofs > 500)
        {
          continue;
        }
        const SpectralResult sparse = solve_problem(s);
        const SpectralResult dense = dense_brute(s);
        c.require(sparse.kernel_dim == dense.kernel_dim, name + " " + id + " kernel");
        for (int i = 0; i < 5; ++i)
        {
          worst = std::max(worst, rel(sparse.eigenvalues[i], dense.eigenvalues[i]));
        }
        ++compared;
      }
    }
  }
  c.require(worst <= 1e-8, "sparse vs dense " + fmt(worst));
  c.require(compared >= 3 * 9, "only " + std::to_string(compared) + " cases fit under 500 DOFs");
  double dual = 0.0;
  for (const auto &[name, mesh] : meshes)
  {
    const auto d0 = solve_problem(spec("dirichlet", 0, mesh, 5)).eigenvalues;
    const auto d2 = solve_problem(spec("dirichlet", 2, mesh, 5)).eigenvalues;
    const auto n2 = solve_problem(spec("neumann_absolute", 2, mesh, 5)).eigenvalues;
    for (int i = 0; i < 5; ++i)
    {
      dual = std::max({dual, rel(d2[i], d0[i]), rel(n2[i], d0[i])});
    }
  }
  c.require(dual <= 1e-10, "p=2 vs p=0 " + fmt(dual));
  return std::to_string(compared) + " sparse/dense pairs, max rel diff=" + fmt(worst) +
         " p=2 vs p=0=" + fmt(dual);
}

std::string ac9(Check &c)
{
  struct Law
  {
    std::string id;
    int exponent;
  };
  const std::vector<Law> laws = {{"dirichlet", 2},  {"neumann_absolute", 2}, {"steklov", 1},
                                 {"bsd1", 1},       {"bsd2", 1},             {"bsn_scalar", 3}};
  std::vector<double> base(laws.size());
  double worst = 0.0;
  for (double R : {1.0, 0.5, 2.0})
  {
    const Mesh m = gen_disk(R, 0.05);
    for (std::size_t i = 0; i < laws.size(); ++i)
    {
      const double v = solve_problem(spec(laws[i].id, 0, m, 1)).eigenvalues[0];
      const double normalized = v * std::pow(R, laws[i].exponent);
      if (R == 1.0)
      {
        base[i] = normalized;
      }
      else
      {
        worst = std::max(worst, rel(normalized, base[i]));
      }
    }
  }
  c.require(worst <= 0.01, "radius law deviation " + fmt(worst));
  VerifyConfig cfg;
  cfg.refine = false;
  const Mesh m = gen_disk(1.0, 0.15);
  SpectrumCache a(m, cfg), b(m.scaled(2.0), cfg);
  int flips = 0, compared = 0;
  auto compare = [&](const std::string &id, int p, const std::vector<int> &ks) {
    const auto ra = verify(id, a, std::nullopt, p, ks);
    const auto rb = verify(id, b, std::nullopt, p, ks);
    for (std::size_t i = 0; i < ra.size(); ++i)
    {
      if (std::abs(ra[i].margin) > 1e-9 * std::abs(ra[i].rhs))
      {
        ++compared;
        flips += (ra[i].margin > 0) != (rb[i].margin > 0) ? 1 : 0;
      }
    }
  };
  compare("KS-1.1", 0, {1, 2, 3});
  compare("KS-1.2", 0, {1});
  compare("HS-1.3", 0, {1});
  compare("MAIN-1", 1, {1});
  compare("COR-BALL", 1, {1});
  compare("MAIN-2", 1, {1, 2, 3});
  compare("LEM-ORDER", 1, {1, 2, 3});
  c.require(flips == 0, std::to_string(flips) + " margin signs flipped");
  return "max radius-law deviation=" + fmt(worst) + " sign flips=" + std::to_string(flips) + "/" +
         std::to_string(compared);
}

std::string ac10(Check &c)
{
  std::ostringstream os;
  for (const std::string id : {"dirichlet", "neumann_absolute", "steklov"})
  {
    for (int p : {0, 1})
    {
      const auto t = convergence_study(id, p, "disk", {0.2, 0.1, 0.05, 0.025});
      c.require(t.rate >= 1.8, id + " p=" + std::to_string(p) + " rate " + fmt(t.rate));
      os << id << "/" << p << "=" << fmt(t.rate) << " ";
    }
  }
  return "rates " + os.str();
}

}  // namespace

int main()
{
  const auto start = Clock::now();
  const std::vector<std::pair<std::string, std::function<std::string(Check &)>>> criteria = {
    {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
    {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10}};
  int failures = 0;
  for (const auto &[name, run] : criteria)
  {
    Check c;
    std::string detail;
    const auto t0 = Clock::now();
    try
    {
      detail = run(c);
    }
    catch (const std::exception &e)
    {
      c.require(false, std::string("exception: ") + e.what());
    }
    const double elapsed = seconds_since(t0);
    if (name == "AC10")
    {
      const double total = seconds_since(start);
      c.require(total < 900.0, "full run " + fmt(total) + " s");
      detail += "total=" + fmt(total) + "s";
    }
    failures += c.ok ? 0 : 1;
    std::printf("%s %s (%.1fs) %s%s%s\n", name.c_str(), c.ok ? "PASS" : "FAIL", elapsed,
                detail.c_str(), c.ok ? "" : " | ", c.note.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
