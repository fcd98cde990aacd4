// Copyright 2026 The ksforms Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef KSFORMS_HARNESS_HPP
#define KSFORMS_HARNESS_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ksforms/geometry.hpp"
#include "ksforms/mesh.hpp"
#include "ksforms/problems.hpp"
#include "ksforms/rellich.hpp"
#include "ksforms/spectra.hpp"

namespace ksforms
{

enum class Verdict
{
  pass,
  fail,
  not_applicable,
  exploratory
};

std::string to_string(Verdict v);

struct InequalityReport
{
  std::string theorem_id;
  // Which inequality of the theorem, e.g. "(ii)" or "mu_k*sigma_1<=ell_k".
  std::string part;
  int p = 0;
  int k = 1;
  double lhs = 0.0;
  double rhs = 0.0;
  // Positive when the inequality holds.
  double margin = 0.0;
  // "<=", "<", ">=" or ">" between lhs and rhs.
  std::string relation;
  double error_budget = 0.0;
  Verdict verdict = Verdict::fail;
  std::map<std::string, bool> hypothesis_flags;
  // Empty, or "hypothesis-approximate" for polygonal boundaries.
  std::string hypothesis_note;
  std::string mesh_id;
  Vec2 x0 = Vec2::Zero();
  double h = 0.0;
  int nodal_order = 2;
  std::optional<double> extrapolated;

  bool strict() const { return relation == "<" || relation == ">"; }
};

struct VerifyConfig
{
  // Lagrange order for the second-order problems; biharmonic ones always use 2.
  int nodal_order = 2;
  // Eigenvalues are taken on the uniform refinement of the mesh; the change
  // from the unrefined mesh estimates their discretization error.
  bool refine = true;
  double budget_factor = 3.0;
  double corner_angle_deg = 15.0;
  double zero_threshold = -1.0;
  // Relative gap below which eigenvalues are counted as one cluster.
  double cluster_gap = 1e-6;
  std::string mesh_id;
};

// Eigenvalues of one mesh, computed on demand and reused across theorems.
class SpectrumCache
{
public:
  SpectrumCache(Mesh mesh, VerifyConfig config);

  // The k smallest nonzero eigenvalues of a problem: values on the working
  // mesh and relative error estimates.
  const std::vector<double> &values(const std::string &problem_id, int p, int k);
  const std::vector<double> &errors(const std::string &problem_id, int p, int k);

  const Mesh &mesh() const { return mesh_; }
  const VerifyConfig &config() const { return config_; }

private:
  struct Entry
  {
    std::vector<double> values, errors;
  };
  const Entry &get(const std::string &problem_id, int p, int k);

  Mesh mesh_;
  Mesh fine_;
  VerifyConfig config_;
  std::map<std::pair<std::string, int>, Entry> entries_;
};

const std::vector<std::string> &theorem_ids();

// Evaluates one theorem for every k in k_range (theorems stated only for
// k = 1 ignore the range). x0 defaults to the centroid.
std::vector<InequalityReport> verify(const std::string &theorem_id, SpectrumCache &cache,
                                     std::optional<Vec2> x0, int p, const std::vector<int> &k_range);
std::vector<InequalityReport> verify(const std::string &theorem_id, const Mesh &mesh,
                                     std::optional<Vec2> x0, int p, const std::vector<int> &k_range,
                                     const VerifyConfig &config = {});

struct ConvergenceRow
{
  double h = 0.0;
  int dofs = 0;
  double value = 0.0;
  std::optional<double> error;
};

struct ConvergenceTable
{
  std::string problem_id;
  int p = 0;
  int k = 1;
  std::string shape;
  int nodal_order = 1;
  std::vector<ConvergenceRow> rows;
  std::optional<double> reference;
  // Least-squares slope of log error against log h; with no reference the
  // errors are successive differences.
  double rate = 0.0;
  double extrapolated = 0.0;
  bool monotone = true;
};

// shape: disk, ellipse (1.3 x 0.8), square, annulus (0.5, 1).
Mesh make_shape(const std::string &shape, double h);

ConvergenceTable convergence_study(const std::string &problem_id, int p, const std::string &shape,
                                   const std::vector<double> &h_list, int k = 1,
                                   int nodal_order = 1);

// Disk reference value of the k-th nonzero eigenvalue, when one is known.
std::optional<double> disk_reference(const std::string &problem_id, int p, int k, double radius);

std::string reports_to_json(const std::vector<InequalityReport> &reports);
std::string reports_to_csv(const std::vector<InequalityReport> &reports);
std::vector<InequalityReport> reports_from_json(const std::string &text);
// format: json or csv.
void report_write(const std::vector<InequalityReport> &reports, const std::string &path,
                  const std::string &format);

std::string spectrum_to_json(const SpectralResult &r);
std::string ledger_to_json(const RellichLedger &ledger);
std::string geometry_to_json(const GeometryReport &g);
std::string table_to_json(const ConvergenceTable &t);

void write_text(const std::string &path, const std::string &text);

}  // namespace ksforms

#endif  // KSFORMS_HARNESS_HPP
