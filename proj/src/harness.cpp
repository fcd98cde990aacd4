// Copyright 2026 The ksforms Authors
// SPDX-License-Identifier: Apache-2.0

#include "ksforms/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "ksforms/error.hpp"
#include "ksforms/oracle.hpp"

namespace ksforms
{

using json = nlohmann::ordered_json;

namespace
{

constexpr int kDimension = 2;

bool is_biharmonic(const std::string &id)
{
  return id == "bsd1" || id == "bsd2" || id == "bsd_scalar" || id == "bsn_scalar";
}

// Boundary vertices where consecutive facet normals turn by more than the angle.
bool has_corners(const Mesh &mesh, double angle_deg)
{
  const double limit = std::cos(angle_deg * M_PI / 180.0);
  for (const auto &loop : mesh.boundary_loops())
  {
    for (std::size_t i = 0; i < loop.size(); ++i)
    {
      const Vec2 &a = mesh.boundary_facets()[loop[i]].outward_normal;
      const Vec2 &b = mesh.boundary_facets()[loop[(i + 1) % loop.size()]].outward_normal;
      if (a.dot(b) < limit)
      {
        return true;
      }
    }
  }
  return false;
}

// Mean distance of the boundary vertices from x0 and its relative spread.
std::pair<double, double> boundary_radius(const Mesh &mesh, const Vec2 &x0)
{
  const auto mask = mesh.boundary_vertex_mask();
  double sum = 0.0, lo = 1e300, hi = 0.0;
  int count = 0;
  for (int v = 0; v < mesh.num_vertices(); ++v)
  {
    if (mask[v])
    {
      const double r = (mesh.vertices()[v] - x0).norm();
      sum += r;
      lo = std::min(lo, r);
      hi = std::max(hi, r);
      ++count;
    }
  }
  const double mean = sum / count;
  return {mean, (hi - lo) / mean};
}

std::string double_text(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string to_string(Verdict v)
{
  switch (v)
  {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::not_applicable:
      return "not_applicable";
    case Verdict::exploratory:
      return "exploratory";
  }
  return "fail";
}

SpectrumCache::SpectrumCache(Mesh mesh, VerifyConfig config)
  : mesh_(std::move(mesh)), config_(std::move(config))
{
  fine_ = config_.refine ? refine_uniform(mesh_) : mesh_;
}

const SpectrumCache::Entry &SpectrumCache::get(const std::string &problem_id, int p, int k)
{
  const auto key = std::make_pair(problem_id, p);
  auto it = entries_.find(key);
  if (it != entries_.end() && static_cast<int>(it->second.values.size()) >= k)
  {
    return it->second;
  }
  ProblemSpec spec;
  spec.problem_id = problem_id;
  spec.p = p;
  spec.k = k;
  spec.nodal_order = is_biharmonic(problem_id) ? 2 : config_.nodal_order;
  spec.corner_angle_deg = config_.corner_angle_deg;
  spec.zero_threshold = config_.zero_threshold;
  spec.mesh = fine_;
  Entry e;
  try
  {
    e.values = solve_problem(spec).eigenvalues;
    e.errors.assign(e.values.size(), 0.0);
    if (config_.refine)
    {
      spec.mesh = mesh_;
      const std::vector<double> coarse = solve_problem(spec).eigenvalues;
      for (std::size_t i = 0; i < e.values.size(); ++i)
      {
        e.errors[i] = std::abs(e.values[i] - coarse[i]) / std::abs(e.values[i]);
      }
    }
  }
  catch (const std::exception &ex)
  {
    throw SolverError(problem_id + " (p = " + std::to_string(p) + "): " + ex.what());
  }
  return entries_[key] = std::move(e);
}

const std::vector<double> &SpectrumCache::values(const std::string &problem_id, int p, int k)
{
  return get(problem_id, p, k).values;
}

const std::vector<double> &SpectrumCache::errors(const std::string &problem_id, int p, int k)
{
  return get(problem_id, p, k).errors;
}

const std::vector<std::string> &theorem_ids()
{
  static const std::vector<std::string> ids = {"KS-1.1",  "KS-1.2", "HS-1.3",    "MAIN-1",
                                               "COR-BALL", "MAIN-2", "LEM-ORDER", "CONJ-1.7"};
  return ids;
}

namespace
{

struct Context
{
  SpectrumCache &cache;
  GeometryReport geo;
  std::map<std::string, bool> flags;
  bool corners = false;
  double ball_radius = 0.0;

  // Eigenvalue k (1-based) with its relative error estimate.
  std::pair<double, double> eig(const std::string &id, int p, int k)
  {
    const auto &v = cache.values(id, p, k);
    const auto &e = cache.errors(id, p, k);
    return {v[k - 1], e[k - 1]};
  }

  InequalityReport report(const std::string &theorem, const std::string &part, int p, int k,
                          double lhs, double rhs, const std::string &relation, double rel_err,
                          const std::vector<std::string> &required, bool needs_smooth)
  {
    InequalityReport r;
    r.theorem_id = theorem;
    r.part = part;
    r.p = p;
    r.k = k;
    r.lhs = lhs;
    r.rhs = rhs;
    r.relation = relation;
    r.margin = (relation == "<=" || relation == "<") ? rhs - lhs : lhs - rhs;
    r.error_budget = cache.config().budget_factor * rel_err * std::max(std::abs(lhs), std::abs(rhs));
    r.hypothesis_flags = flags;
    r.mesh_id = cache.config().mesh_id.empty() ? cache.mesh().domain_tag() : cache.config().mesh_id;
    r.x0 = geo.x0;
    r.h = cache.mesh().max_edge_length();
    r.nodal_order = cache.config().nodal_order;
    bool applicable = true;
    for (const auto &f : required)
    {
      applicable = applicable && flags.at(f);
    }
    if (needs_smooth && corners)
    {
      r.hypothesis_note = "hypothesis-approximate";
    }
    if (!applicable)
    {
      r.verdict = Verdict::not_applicable;
    }
    else if (r.strict())
    {
      r.verdict = r.margin > r.error_budget ? Verdict::pass : Verdict::fail;
    }
    else
    {
      r.verdict = r.margin >= -r.error_budget ? Verdict::pass : Verdict::fail;
    }
    return r;
  }
};

int require_form_degree(const std::string &theorem, int p)
{
  if (p < 1 || p > kDimension - 1)
  {
    throw DomainError(theorem + " is stated for 1 <= p <= n - 1, so p = 1 in the plane");
  }
  return p;
}

}  // namespace

std::vector<InequalityReport> verify(const std::string &theorem_id, SpectrumCache &cache,
                                     std::optional<Vec2> x0, int p, const std::vector<int> &k_range)
{
  const auto &ids = theorem_ids();
  if (std::find(ids.begin(), ids.end(), theorem_id) == ids.end())
  {
    throw DomainError("unknown theorem id '" + theorem_id + "'");
  }
  std::vector<int> ks = k_range.empty() ? std::vector<int>{1} : k_range;
  for (int k : ks)
  {
    if (k < 1)
    {
      throw DomainError("eigenvalue indices start at 1");
    }
  }
  const int kmax = *std::max_element(ks.begin(), ks.end());
  Context c{cache, geometric_summary(cache.mesh(), x0.value_or(centroid(cache.mesh()))), {}, false, 0.0};
  c.corners = has_corners(cache.mesh(), cache.config().corner_angle_deg);
  const auto [radius, spread] = boundary_radius(cache.mesh(), c.geo.x0);
  c.ball_radius = radius;
  c.flags = {{"star_shaped", c.geo.star_shaped},
             {"convex", c.geo.convex},
             {"flat", true},
             {"smooth_boundary", !c.corners},
             {"ball", spread <= 1e-6}};
  const double hmin = c.geo.h_min, hmax = c.geo.h_max, rmax = c.geo.r_max;
  std::vector<InequalityReport> out;

  if (theorem_id == "KS-1.1")
  {
    for (int k : ks)
    {
      const auto [mu_k, e_mu_k] = c.eig("neumann_absolute", 0, k);
      const auto [mu_1, e_mu_1] = c.eig("neumann_absolute", 0, 1);
      const auto [s_1, e_s_1] = c.eig("steklov", 0, 1);
      const auto [s_k, e_s_k] = c.eig("steklov", 0, k);
      const auto [l_k, e_l_k] = c.eig("bsn_scalar", 0, k);
      out.push_back(c.report(theorem_id, "mu_k*sigma_1<=ell_k", 0, k, mu_k * s_1, l_k, "<=",
                             e_mu_k + e_s_1 + e_l_k, {}, true));
      out.push_back(c.report(theorem_id, "mu_1*sigma_k<=ell_k", 0, k, mu_1 * s_k, l_k, "<=",
                             e_mu_1 + e_s_k + e_l_k, {}, true));
    }
  }
  else if (theorem_id == "KS-1.2")
  {
    const auto [q1, eq] = c.eig("bsd_scalar", 0, 1);
    const auto [s1, es] = c.eig("steklov", 0, 1);
    const auto [l1, el] = c.eig("bsn_scalar", 0, 1);
    const auto [m1, em] = c.eig("neumann_absolute", 0, 1);
    const auto [d1, ed] = c.eig("dirichlet", 0, 1);
    out.push_back(c.report(theorem_id, "(i)", 0, 1, q1 * s1 * s1, l1, "<=", eq + 2 * es + el, {}, false));
    out.push_back(c.report(theorem_id, "(ii)", 0, 1, 1.0 / m1, 1.0 / d1 + 1.0 / std::sqrt(q1 * l1),
                           "<=", em + ed + 0.5 * (eq + el), {}, false));
    out.push_back(c.report(theorem_id, "(iii)", 0, 1, 1.0 / m1, 1.0 / d1 + 1.0 / (q1 * s1), "<=",
                           em + ed + eq + es, {}, false));
  }
  else if (theorem_id == "HS-1.3")
  {
    const double C0 = 2.0;
    const auto [s1, es] = c.eig("steklov", 0, 1);
    const auto [m1, em] = c.eig("neumann_absolute", 0, 1);
    out.push_back(c.report(theorem_id, "", 0, 1, s1, hmin * m1 / (2.0 * rmax * std::sqrt(m1) + C0),
                           ">=", es + em, {"star_shaped"}, false));
  }
  else if (theorem_id == "MAIN-1")
  {
    require_form_degree(theorem_id, p);
    const auto [s1, es] = c.eig("steklov", p, 1);
    const auto [m1, em] = c.eig("neumann_absolute", p, 1);
    // Flat case: max(1 + d H_0(d)) = n.
    const double rhs = 0.5 * hmin * m1 / (rmax * std::sqrt(m1) + 0.5 * kDimension);
    out.push_back(c.report(theorem_id, "", p, 1, s1, rhs, ">", es + em,
                           {"star_shaped", "convex", "flat"}, true));
  }
  else if (theorem_id == "COR-BALL")
  {
    require_form_degree(theorem_id, p);
    const double r = c.ball_radius;
    const auto [s1, es] = c.eig("steklov", p, 1);
    const auto [m1, em] = c.eig("neumann_absolute", p, 1);
    out.push_back(c.report(theorem_id, "", p, 1, s1, r * m1 / (2.0 * r * std::sqrt(m1) + kDimension),
                           ">", es + em, {"ball", "flat"}, false));
  }
  else if (theorem_id == "MAIN-2")
  {
    require_form_degree(theorem_id, p);
    const double C2 = constant_C2(p, kDimension, 0.0, 0.0, rmax);
    for (int k : ks)
    {
      const auto [lam, el] = c.eig("dirichlet", p, k);
      const auto [q, eq] = c.eig("bsd2", p, k);
      const double rhs = (4.0 * q * q * rmax * rmax + 2.0 * q * hmin * C2) / (hmin * hmin);
      out.push_back(c.report(theorem_id, "", p, k, lam, rhs, "<=", el + 2 * eq,
                             {"star_shaped", "flat"}, false));
    }
  }
  else if (theorem_id == "LEM-ORDER")
  {
    if (p < 0 || p > 1)
    {
      throw DomainError("LEM-ORDER compares BSD1 and BSD2, defined here for p = 0, 1");
    }
    for (int k : ks)
    {
      const auto [q, eq] = c.eig("bsd1", p, k);
      const auto [qb, eqb] = c.eig("bsd2", p, k);
      out.push_back(c.report(theorem_id, "", p, k, q, qb, "<=", eq + eqb, {}, false));
    }
  }
  else
  {
    if (p < 0 || p > kDimension)
    {
      throw DomainError("form degree must be 0, 1 or 2");
    }
    const auto &lams = cache.values("dirichlet", p, kmax + 4);
    for (int k : ks)
    {
      const double lam = lams[k - 1];
      int m = 0;
      for (double v : lams)
      {
        m += std::abs(v - lam) <= cache.config().cluster_gap * lam ? 1 : 0;
      }
      const auto [q, eq] = c.eig("bsd1", p, m);
      InequalityReport r =
        c.report(theorem_id, "m_k=" + std::to_string(m), p, k, lam, q / (rmax + hmax), ">=", eq,
                 {}, false);
      r.verdict = Verdict::exploratory;
      out.push_back(r);
    }
  }
  return out;
}

std::vector<InequalityReport> verify(const std::string &theorem_id, const Mesh &mesh,
                                     std::optional<Vec2> x0, int p, const std::vector<int> &k_range,
                                     const VerifyConfig &config)
{
  SpectrumCache cache(mesh, config);
  return verify(theorem_id, cache, x0, p, k_range);
}

Mesh make_shape(const std::string &shape, double h)
{
  if (!(h > 0.0))
  {
    throw DomainError("mesh size must be positive");
  }
  if (shape == "disk")
  {
    return gen_disk(1.0, h);
  }
  if (shape == "ellipse")
  {
    return gen_ellipse(1.3, 0.8, h);
  }
  if (shape == "square")
  {
    return gen_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, h);
  }
  if (shape == "annulus")
  {
    return gen_annulus(0.5, 1.0, h);
  }
  throw DomainError("unknown shape '" + shape + "' (disk, ellipse, square, annulus)");
}

std::optional<double> disk_reference(const std::string &problem_id, int p, int k, double radius)
{
  auto pick = [k](const DiskSpectrum &s) -> std::optional<double> {
    return static_cast<int>(s.values.size()) >= k ? std::optional<double>(s.values[k - 1]) : std::nullopt;
  };
  if (problem_id == "dirichlet" || (problem_id == "neumann_absolute" && p == 2))
  {
    return p == 1 ? pick(disk_form_spectrum(1, "dirichlet", radius, k))
                  : pick(disk_scalar_spectrum("dirichlet", radius, k));
  }
  if (problem_id == "neumann_absolute")
  {
    return p == 1 ? pick(disk_form_spectrum(1, "neumann_absolute", radius, k))
                  : pick(disk_scalar_spectrum("neumann", radius, k));
  }
  if (problem_id == "steklov" && p == 0)
  {
    return pick(disk_scalar_spectrum("steklov", radius, k));
  }
  if ((problem_id == "bsd1" || problem_id == "bsd2" || problem_id == "bsd_scalar") && p == 0)
  {
    return pick(disk_scalar_spectrum("bsd", radius, k));
  }
  if (problem_id == "bsd1" && p == 1)
  {
    return pick(disk_scalar_spectrum("bsd", radius, (k + 1) / 2));
  }
  if (problem_id == "bsn_scalar")
  {
    return pick(disk_scalar_spectrum("bsn", radius, k));
  }
  return std::nullopt;
}

ConvergenceTable convergence_study(const std::string &problem_id, int p, const std::string &shape,
                                   const std::vector<double> &h_list, int k, int nodal_order)
{
  if (h_list.size() < 3)
  {
    throw DomainError("a convergence study needs at least three mesh sizes");
  }
  ConvergenceTable t;
  t.problem_id = problem_id;
  t.p = p;
  t.k = k;
  t.shape = shape;
  t.nodal_order = is_biharmonic(problem_id) ? std::max(2, nodal_order) : nodal_order;
  if (shape == "disk")
  {
    t.reference = disk_reference(problem_id, p, k, 1.0);
  }
  for (double h : h_list)
  {
    ProblemSpec spec;
    spec.problem_id = problem_id;
    spec.p = p;
    spec.k = k;
    spec.nodal_order = t.nodal_order;
    spec.mesh = make_shape(shape, h);
    ConvergenceRow row;
    row.h = h;
    row.dofs = form_components(p) * FESpace(spec.mesh, spec.nodal_order).num_nodes();
    row.value = solve_problem(spec).eigenvalues[k - 1];
    if (t.reference)
    {
      row.error = std::abs(row.value - *t.reference);
    }
    t.rows.push_back(row);
  }
  std::vector<double> lh, le;
  for (std::size_t i = 0; i < t.rows.size(); ++i)
  {
    if (t.reference)
    {
      lh.push_back(std::log(t.rows[i].h));
      le.push_back(std::log(std::max(*t.rows[i].error, 1e-300)));
    }
    else if (i + 1 < t.rows.size())
    {
      lh.push_back(std::log(t.rows[i].h));
      le.push_back(std::log(std::max(std::abs(t.rows[i].value - t.rows[i + 1].value), 1e-300)));
    }
  }
  for (std::size_t i = 0; i + 1 < le.size(); ++i)
  {
    t.monotone = t.monotone && le[i + 1] < le[i];
  }
  const double n = static_cast<double>(lh.size());
  const double mx = std::accumulate(lh.begin(), lh.end(), 0.0) / n;
  const double my = std::accumulate(le.begin(), le.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lh.size(); ++i)
  {
    sxy += (lh[i] - mx) * (le[i] - my);
    sxx += (lh[i] - mx) * (lh[i] - mx);
  }
  t.rate = sxx > 0.0 ? sxy / sxx : 0.0;
  const auto &a = t.rows[t.rows.size() - 2];
  const auto &b = t.rows.back();
  const double ratio = std::pow(a.h / b.h, t.rate);
  t.extrapolated = ratio > 1.0 + 1e-12 ? b.value + (b.value - a.value) / (ratio - 1.0) : b.value;
  return t;
}

namespace
{

json report_json(const InequalityReport &r)
{
  json j;
  j["theorem_id"] = r.theorem_id;
  j["part"] = r.part;
  j["p"] = r.p;
  j["k"] = r.k;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["relation"] = r.relation;
  j["margin"] = r.margin;
  if (r.verdict == Verdict::pass || r.verdict == Verdict::fail)
  {
    j["pass"] = r.verdict == Verdict::pass;
  }
  else
  {
    j["pass"] = nullptr;
  }
  j["verdict"] = to_string(r.verdict);
  j["hypothesis_flags"] = r.hypothesis_flags;
  j["hypothesis_note"] = r.hypothesis_note;
  j["inputs"] = {{"mesh_id", r.mesh_id},
                 {"x0", {r.x0.x(), r.x0.y()}},
                 {"h", r.h},
                 {"nodal_order", r.nodal_order}};
  j["error_budget"] = r.error_budget;
  j["extrapolated"] = r.extrapolated ? json(*r.extrapolated) : json(nullptr);
  return j;
}

Verdict verdict_from(const std::string &s)
{
  for (Verdict v : {Verdict::pass, Verdict::fail, Verdict::not_applicable, Verdict::exploratory})
  {
    if (to_string(v) == s)
    {
      return v;
    }
  }
  throw DomainError("unknown verdict '" + s + "'");
}

}  // namespace

std::string reports_to_json(const std::vector<InequalityReport> &reports)
{
  json j;
  j["normal_convention"] = RellichLedger::normal_convention();
  j["reports"] = json::array();
  for (const auto &r : reports)
  {
    j["reports"].push_back(report_json(r));
  }
  return j.dump(2) + "\n";
}

std::vector<InequalityReport> reports_from_json(const std::string &text)
{
  const json j = json::parse(text);
  std::vector<InequalityReport> out;
  for (const auto &e : j.at("reports"))
  {
    InequalityReport r;
    r.theorem_id = e.at("theorem_id").get<std::string>();
    r.part = e.at("part").get<std::string>();
    r.p = e.at("p").get<int>();
    r.k = e.at("k").get<int>();
    r.lhs = e.at("lhs").get<double>();
    r.rhs = e.at("rhs").get<double>();
    r.relation = e.at("relation").get<std::string>();
    r.margin = e.at("margin").get<double>();
    r.verdict = verdict_from(e.at("verdict").get<std::string>());
    r.hypothesis_flags = e.at("hypothesis_flags").get<std::map<std::string, bool>>();
    r.hypothesis_note = e.at("hypothesis_note").get<std::string>();
    const auto &in = e.at("inputs");
    r.mesh_id = in.at("mesh_id").get<std::string>();
    r.x0 = Vec2(in.at("x0")[0].get<double>(), in.at("x0")[1].get<double>());
    r.h = in.at("h").get<double>();
    r.nodal_order = in.at("nodal_order").get<int>();
    r.error_budget = e.at("error_budget").get<double>();
    if (!e.at("extrapolated").is_null())
    {
      r.extrapolated = e.at("extrapolated").get<double>();
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string reports_to_csv(const std::vector<InequalityReport> &reports)
{
  std::ostringstream os;
  os << "theorem_id,p,k,lhs,rhs,margin,pass\n";
  for (const auto &r : reports)
  {
    std::string id = r.theorem_id;
    if (!r.part.empty())
    {
      id += "[" + r.part + "]";
    }
    std::string pass = r.verdict == Verdict::pass   ? "true"
                       : r.verdict == Verdict::fail ? "false"
                                                    : to_string(r.verdict);
    os << id << ',' << r.p << ',' << r.k << ',' << double_text(r.lhs) << ','
       << double_text(r.rhs) << ',' << double_text(r.margin) << ',' << pass << '\n';
  }
  return os.str();
}

void write_text(const std::string &path, const std::string &text)
{
  std::ofstream f(path, std::ios::binary);
  if (!f)
  {
    throw IoError("cannot open " + path + " for writing");
  }
  f << text;
  if (!f)
  {
    throw IoError("write failed for " + path);
  }
}

void report_write(const std::vector<InequalityReport> &reports, const std::string &path,
                  const std::string &format)
{
  if (format == "json")
  {
    write_text(path, reports_to_json(reports));
  }
  else if (format == "csv")
  {
    write_text(path, reports_to_csv(reports));
  }
  else
  {
    throw DomainError("report format must be json or csv");
  }
}

std::string spectrum_to_json(const SpectralResult &r)
{
  json j;
  j["problem_id"] = r.problem_id;
  j["p"] = r.p;
  j["eigenvalues"] = r.eigenvalues;
  j["residual_norms"] = r.residual_norms;
  j["kernel_dim"] = r.kernel_dim;
  j["kernel_values"] = r.kernel_values;
  j["zero_threshold"] = r.zero_threshold;
  return j.dump(2) + "\n";
}

std::string ledger_to_json(const RellichLedger &L)
{
  json j;
  j["p"] = L.p;
  j["normal_convention"] = RellichLedger::normal_convention();
  json lhs, rhs;
  for (std::size_t i = 0; i < L.lhs_terms.size(); ++i)
  {
    lhs[RellichLedger::lhs_names()[i]] = L.lhs_terms[i];
  }
  for (std::size_t i = 0; i < L.rhs_terms.size(); ++i)
  {
    rhs[RellichLedger::rhs_names()[i]] = L.rhs_terms[i];
  }
  j["lhs_terms"] = lhs;
  j["rhs_terms"] = rhs;
  j["lhs"] = L.lhs();
  j["rhs"] = L.rhs();
  j["residual"] = L.residual;
  j["relative_residual"] = L.residual / std::max(1.0, L.scale());
  return j.dump(2) + "\n";
}

std::string geometry_to_json(const GeometryReport &g)
{
  json j;
  j["x0"] = {g.x0.x(), g.x0.y()};
  j["dimension"] = g.dimension;
  j["r_max"] = g.r_max;
  j["h_min"] = g.h_min;
  j["h_max"] = g.h_max;
  j["star_shaped"] = g.star_shaped;
  j["convex"] = g.convex;
  return j.dump(2) + "\n";
}

std::string table_to_json(const ConvergenceTable &t)
{
  json j;
  j["problem_id"] = t.problem_id;
  j["p"] = t.p;
  j["k"] = t.k;
  j["shape"] = t.shape;
  j["nodal_order"] = t.nodal_order;
  j["reference"] = t.reference ? json(*t.reference) : json(nullptr);
  j["rows"] = json::array();
  for (const auto &r : t.rows)
  {
    j["rows"].push_back({{"h", r.h},
                         {"dofs", r.dofs},
                         {"value", r.value},
                         {"error", r.error ? json(*r.error) : json(nullptr)}});
  }
  j["rate"] = t.rate;
  j["extrapolated"] = t.extrapolated;
  j["monotone"] = t.monotone;
  return j.dump(2) + "\n";
}

}  // namespace ksforms
