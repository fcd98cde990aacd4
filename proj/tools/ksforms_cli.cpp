// Copyright 2026 The ksforms Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ksforms/error.hpp"
#include "ksforms/geometry.hpp"
#include "ksforms/harness.hpp"
#include "ksforms/oracle.hpp"
#include "ksforms/problems.hpp"
#include "ksforms/rellich.hpp"

using namespace ksforms;

namespace
{

std::vector<double> split_numbers(const std::string &text, char sep)
{
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep))
  {
    if (item.find_first_not_of(" \t") == std::string::npos)
    {
      continue;
    }
    std::size_t used = 0;
    double v = 0.0;
    try
    {
      v = std::stod(item, &used);
    }
    catch (const std::exception &)
    {
      throw DomainError("not a number: '" + item + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos)
    {
      throw DomainError("not a number: '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

Vec2 parse_point(const std::string &text)
{
  const auto v = split_numbers(text, ',');
  if (v.size() != 2)
  {
    throw DomainError("expected a point \"x,y\", got '" + text + "'");
  }
  return {v[0], v[1]};
}

// "3" or "1..5" or "1,2,4".
std::vector<int> parse_k_range(const std::string &text)
{
  std::vector<int> ks;
  const auto dots = text.find("..");
  if (dots != std::string::npos)
  {
    const int lo = std::stoi(text.substr(0, dots)), hi = std::stoi(text.substr(dots + 2));
    if (lo < 1 || hi < lo)
    {
      throw DomainError("bad index range '" + text + "'");
    }
    for (int k = lo; k <= hi; ++k)
    {
      ks.push_back(k);
    }
    return ks;
  }
  for (double v : split_numbers(text, ','))
  {
    ks.push_back(static_cast<int>(v));
  }
  return ks;
}

void emit(const std::string &text, const std::string &path)
{
  if (path.empty() || path == "-")
  {
    std::cout << text;
  }
  else
  {
    write_text(path, text);
  }
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Spectral problems for differential forms on planar domains"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_config("--config", "", "key=value configuration file");
  app.require_subcommand(1);

  // mesh gen
  auto *mesh_cmd = app.add_subcommand("mesh", "Mesh utilities");
  mesh_cmd->require_subcommand(1);
  auto *gen = mesh_cmd->add_subcommand("gen", "Generate a triangle mesh (OFF)");
  std::string shape = "disk", vertices, mesh_out;
  double radius = 1.0, inner = 0.5, semi_a = 1.3, semi_b = 0.8, gen_h = 0.1;
  gen->add_option("--shape", shape, "disk, ellipse, annulus, square or polygon")
    ->check(CLI::IsMember({"disk", "ellipse", "annulus", "square", "polygon"}));
  gen->add_option("--radius", radius, "Disk or outer annulus radius; square side");
  gen->add_option("--inner", inner, "Inner annulus radius");
  gen->add_option("--a", semi_a, "Ellipse semi-axis along x");
  gen->add_option("--b", semi_b, "Ellipse semi-axis along y");
  gen->add_option("--vertices", vertices, "Polygon corners \"x,y;x,y;...\" counter-clockwise");
  gen->add_option("--h", gen_h, "Target edge length");
  gen->add_option("--out", mesh_out, "Output file (stdout if omitted)");

  // geom
  auto *geom = app.add_subcommand("geom", "Geometric constants of a star-shaped domain");
  std::string geom_mesh, geom_x0;
  geom->add_option("--mesh", geom_mesh, "OFF mesh")->required();
  geom->add_option("--x0", geom_x0, "Centre \"x,y\" (default: centroid)");

  // solve
  auto *solve = app.add_subcommand("solve", "Solve one eigenvalue problem");
  std::string problem = "dirichlet", solve_mesh, solve_out;
  int p = 0, k = 5, order = 1;
  double zero_threshold = -1.0;
  solve->add_option("--problem", problem, "Problem id")->check(CLI::IsMember(problem_ids()));
  solve->add_option("--p", p, "Form degree");
  solve->add_option("--k", k, "Number of nonzero eigenvalues");
  solve->add_option("--mesh", solve_mesh, "OFF mesh")->required();
  solve->add_option("--order", order, "Lagrange order")->check(CLI::IsMember({1, 2}));
  solve->add_option("--zero-threshold", zero_threshold, "Kernel threshold (negative: automatic)");
  solve->add_option("--out", solve_out, "Output JSON (stdout if omitted)");

  // oracle
  auto *oracle = app.add_subcommand("oracle", "Semi-analytic disk spectra");
  std::string oracle_problem = "dirichlet";
  int oracle_p = 0, count = 5;
  double oracle_radius = 1.0;
  oracle->add_option("--problem", oracle_problem,
                     "p = 0: dirichlet, neumann, steklov, bsd, bsn; p = 1: dirichlet, neumann_absolute");
  oracle->add_option("--p", oracle_p, "Form degree (0 or 1)");
  oracle->add_option("--radius", oracle_radius, "Disk radius");
  oracle->add_option("--count", count, "Number of nonzero eigenvalues");

  // rellich
  auto *rellich = app.add_subcommand("rellich", "Term ledger of the Rellich identity");
  std::string rellich_mesh, field = "position", rellich_x0;
  unsigned long long seed = 0;
  int degree = 3, rellich_p = 1, field_degree = 2;
  rellich->add_option("--mesh", rellich_mesh, "OFF mesh")->required();
  rellich->add_option("--seed", seed, "Random seed for the polynomial form");
  rellich->add_option("--degree", degree, "Polynomial degree of the form");
  rellich->add_option("--p", rellich_p, "Form degree");
  rellich->add_option("--field", field, "position or custom (random polynomial field)")
    ->check(CLI::IsMember({"position", "custom"}));
  rellich->add_option("--field-degree", field_degree, "Degree of the custom field");
  rellich->add_option("--x0", rellich_x0, "Origin of the position field (default: centroid)");

  // verify
  auto *verify_cmd = app.add_subcommand("verify", "Evaluate an inequality with margins");
  std::string theorem = "all", verify_mesh, verify_x0, k_text = "1", verify_out, format = "json";
  int verify_p = 1;
  VerifyConfig config;
  bool no_refine = false;
  std::vector<std::string> theorem_choices = theorem_ids();
  theorem_choices.push_back("all");
  verify_cmd->add_option("--theorem", theorem, "Theorem id or all")
    ->check(CLI::IsMember(theorem_choices));
  verify_cmd->add_option("--mesh", verify_mesh, "OFF mesh")->required();
  verify_cmd->add_option("--p", verify_p, "Form degree for MAIN-1, COR-BALL, MAIN-2, LEM-ORDER, CONJ-1.7");
  verify_cmd->add_option("--k", k_text, "Indices: K, A..B or a comma list");
  verify_cmd->add_option("--x0", verify_x0, "Centre \"x,y\" (default: centroid)");
  verify_cmd->add_option("--out", verify_out, "Output file (stdout if omitted)");
  verify_cmd->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  verify_cmd->add_option("--order", config.nodal_order, "Lagrange order for second-order problems")
    ->check(CLI::IsMember({1, 2}));
  verify_cmd->add_option("--budget-factor", config.budget_factor, "Error budget multiplier");
  verify_cmd->add_option("--corner-angle", config.corner_angle_deg, "Corner detection angle (degrees)");
  verify_cmd->add_option("--cluster-gap", config.cluster_gap, "Relative eigenvalue cluster gap");
  verify_cmd->add_option("--zero-threshold", config.zero_threshold, "Kernel threshold (negative: automatic)");
  verify_cmd->add_flag("--no-refine", no_refine, "Skip the refined solve (zero error budget)");

  // study
  auto *study = app.add_subcommand("study", "Convergence study under mesh refinement");
  std::string study_problem = "dirichlet", study_shape = "disk", h_text = "0.2,0.1,0.05", study_out;
  int study_p = 0, study_k = 1, study_order = 1;
  study->add_option("--problem", study_problem, "Problem id")->check(CLI::IsMember(problem_ids()));
  study->add_option("--p", study_p, "Form degree");
  study->add_option("--k", study_k, "Eigenvalue index");
  study->add_option("--shape", study_shape, "disk, ellipse, square or annulus");
  study->add_option("--h", h_text, "Comma separated mesh sizes");
  study->add_option("--order", study_order, "Lagrange order")->check(CLI::IsMember({1, 2}));
  study->add_option("--out", study_out, "Output JSON (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  try
  {
    if (gen->parsed())
    {
      Mesh m;
      if (shape == "disk")
      {
        m = gen_disk(radius, gen_h);
      }
      else if (shape == "ellipse")
      {
        m = gen_ellipse(semi_a, semi_b, gen_h);
      }
      else if (shape == "annulus")
      {
        m = gen_annulus(inner, radius, gen_h);
      }
      else if (shape == "square")
      {
        m = gen_polygon({{0, 0}, {radius, 0}, {radius, radius}, {0, radius}}, gen_h);
      }
      else
      {
        std::vector<Vec2> corners;
        std::stringstream ss(vertices);
        std::string item;
        while (std::getline(ss, item, ';'))
        {
          corners.push_back(parse_point(item));
        }
        m = gen_polygon(corners, gen_h);
      }
      if (mesh_out.empty())
      {
        std::cout << format_off(m);
      }
      else
      {
        save_mesh(m, mesh_out);
      }
    }
    else if (geom->parsed())
    {
      const Mesh m = load_mesh(geom_mesh);
      const Vec2 x0 = geom_x0.empty() ? centroid(m) : parse_point(geom_x0);
      std::cout << geometry_to_json(geometric_summary(m, x0));
    }
    else if (solve->parsed())
    {
      ProblemSpec s;
      s.problem_id = problem;
      s.p = p;
      s.k = k;
      s.nodal_order = order;
      s.zero_threshold = zero_threshold;
      s.mesh = load_mesh(solve_mesh);
      emit(spectrum_to_json(solve_problem(s)), solve_out);
    }
    else if (oracle->parsed())
    {
      const DiskSpectrum d = oracle_p == 0
                               ? disk_scalar_spectrum(oracle_problem, oracle_radius, count)
                               : disk_form_spectrum(oracle_p, oracle_problem, oracle_radius, count);
      nlohmann::ordered_json j;
      j["problem_id"] = d.problem_id;
      j["p"] = oracle_p;
      j["radius"] = d.radius;
      j["values"] = d.values;
      j["modes"] = d.modes;
      j["kernel_dim"] = d.kernel_dim;
      std::cout << j.dump(2) << "\n";
    }
    else if (rellich->parsed())
    {
      const Mesh m = load_mesh(rellich_mesh);
      std::mt19937_64 rng(seed);
      const PolyForm w = PolyForm::random(rellich_p, degree, rng);
      const VectorFieldSpec F =
        field == "position"
          ? VectorFieldSpec::position(rellich_x0.empty() ? centroid(m) : parse_point(rellich_x0))
          : VectorFieldSpec::random(field_degree, false, rng);
      std::cout << ledger_to_json(rellich_ledger(m, F, w));
    }
    else if (verify_cmd->parsed())
    {
      config.refine = !no_refine;
      config.mesh_id = verify_mesh;
      SpectrumCache cache(load_mesh(verify_mesh), config);
      const std::optional<Vec2> x0 =
        verify_x0.empty() ? std::nullopt : std::optional<Vec2>(parse_point(verify_x0));
      const std::vector<int> ks = parse_k_range(k_text);
      std::vector<InequalityReport> reports;
      const std::vector<std::string> ids =
        theorem == "all" ? theorem_ids() : std::vector<std::string>{theorem};
      for (const auto &id : ids)
      {
        const bool scalar = id == "KS-1.1" || id == "KS-1.2" || id == "HS-1.3";
        const auto r = verify(id, cache, x0, scalar ? 0 : verify_p, ks);
        reports.insert(reports.end(), r.begin(), r.end());
      }
      emit(format == "json" ? reports_to_json(reports) : reports_to_csv(reports), verify_out);
      for (const auto &r : reports)
      {
        if (r.verdict == Verdict::fail)
        {
          return 5;
        }
      }
    }
    else if (study->parsed())
    {
      const auto t = convergence_study(study_problem, study_p, study_shape,
                                       split_numbers(h_text, ','), study_k, study_order);
      emit(table_to_json(t), study_out);
      if (!t.monotone)
      {
        std::cerr << "warning: convergence is not monotone\n";
      }
    }
  }
  catch (const ksforms::ParseError &e)
  {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  }
  catch (const IoError &e)
  {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 3;
  }
  catch (const DomainError &e)
  {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  }
  catch (const ValidationError &e)
  {
    std::cerr << "invalid mesh: " << e.what() << "\n";
    return 2;
  }
  catch (const SolverError &e)
  {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
