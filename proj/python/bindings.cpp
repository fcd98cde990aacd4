// Copyright 2026 The ksforms Authors
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ksforms/error.hpp"
#include "ksforms/geometry.hpp"
#include "ksforms/harness.hpp"
#include "ksforms/oracle.hpp"
#include "ksforms/problems.hpp"
#include "ksforms/rellich.hpp"

#include <random>

namespace py = pybind11;
using namespace ksforms;

namespace
{

Eigen::MatrixXd vertex_array(const Mesh &m)
{
  Eigen::MatrixXd v(m.num_vertices(), 2);
  for (int i = 0; i < m.num_vertices(); ++i)
  {
    v.row(i) = m.vertices()[i].transpose();
  }
  return v;
}

Eigen::MatrixXi triangle_array(const Mesh &m)
{
  Eigen::MatrixXi t(m.num_triangles(), 3);
  for (int i = 0; i < m.num_triangles(); ++i)
  {
    for (int j = 0; j < 3; ++j)
    {
      t(i, j) = m.triangles()[i][j];
    }
  }
  return t;
}

Mesh mesh_from_arrays(const Eigen::MatrixXd &v, const Eigen::MatrixXi &t, const std::string &tag)
{
  if (v.cols() != 2 || t.cols() != 3)
  {
    throw DomainError("vertices must be (n, 2) and triangles (m, 3)");
  }
  std::vector<Vec2> verts(v.rows());
  for (Eigen::Index i = 0; i < v.rows(); ++i)
  {
    verts[i] = v.row(i).transpose();
  }
  std::vector<std::array<int, 3>> tris(t.rows());
  for (Eigen::Index i = 0; i < t.rows(); ++i)
  {
    tris[i] = {t(i, 0), t(i, 1), t(i, 2)};
  }
  return Mesh::from_triangles(std::move(verts), std::move(tris), tag);
}

std::optional<Vec2> point(const std::optional<std::pair<double, double>> &x0)
{
  return x0 ? std::optional<Vec2>(Vec2(x0->first, x0->second)) : std::nullopt;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
  m.doc() = "Finite element spectra of differential forms on planar domains";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ksforms::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<Mesh>(m, "Mesh")
    .def(py::init(&mesh_from_arrays), py::arg("vertices"), py::arg("triangles"),
         py::arg("tag") = "")
    .def_property_readonly("vertices", &vertex_array)
    .def_property_readonly("triangles", &triangle_array)
    .def_property_readonly("num_vertices", &Mesh::num_vertices)
    .def_property_readonly("num_triangles", &Mesh::num_triangles)
    .def_property_readonly("tag", &Mesh::domain_tag)
    .def("area", &Mesh::total_area)
    .def("boundary_length", &Mesh::boundary_length)
    .def("max_edge_length", &Mesh::max_edge_length)
    .def("scaled", &Mesh::scaled, py::arg("factor"))
    .def("to_off", &format_off);

  m.def("gen_disk", [](double r, double h) { return gen_disk(r, h); }, py::arg("radius"),
        py::arg("h"));
  m.def("gen_ellipse", &gen_ellipse, py::arg("a"), py::arg("b"), py::arg("h"));
  m.def("gen_annulus", &gen_annulus, py::arg("inner"), py::arg("outer"), py::arg("h"));
  m.def(
    "gen_polygon",
    [](const std::vector<std::pair<double, double>> &corners, double h) {
      std::vector<Vec2> c;
      for (const auto &[x, y] : corners)
      {
        c.emplace_back(x, y);
      }
      return gen_polygon(c, h);
    },
    py::arg("corners"), py::arg("h"));
  m.def("refine_uniform", &refine_uniform, py::arg("mesh"));
  m.def("parse_off", &parse_off, py::arg("text"));
  m.def("load_mesh", &load_mesh, py::arg("path"));
  m.def("save_mesh", &save_mesh, py::arg("mesh"), py::arg("path"));
  m.def("make_shape", &make_shape, py::arg("shape"), py::arg("h"));

  py::class_<GeometryReport>(m, "GeometryReport")
    .def_property_readonly("x0", [](const GeometryReport &g) { return std::make_pair(g.x0.x(), g.x0.y()); })
    .def_readonly("r_max", &GeometryReport::r_max)
    .def_readonly("h_min", &GeometryReport::h_min)
    .def_readonly("h_max", &GeometryReport::h_max)
    .def_readonly("star_shaped", &GeometryReport::star_shaped)
    .def_readonly("convex", &GeometryReport::convex);
  m.def(
    "geometric_summary",
    [](const Mesh &mesh, std::optional<std::pair<double, double>> x0) {
      return geometric_summary(mesh, point(x0).value_or(centroid(mesh)));
    },
    py::arg("mesh"), py::arg("x0") = py::none());
  m.def("constant_C2", &constant_C2, py::arg("p"), py::arg("n"), py::arg("kappa1"),
        py::arg("kappa2"), py::arg("r_max"));
  m.def("riccati_H", &riccati_H, py::arg("kappa"), py::arg("n"), py::arg("r"));

  py::class_<SpectralResult>(m, "SpectralResult")
    .def_readonly("problem_id", &SpectralResult::problem_id)
    .def_readonly("p", &SpectralResult::p)
    .def_readonly("eigenvalues", &SpectralResult::eigenvalues)
    .def_readonly("vectors", &SpectralResult::vectors)
    .def_readonly("residual_norms", &SpectralResult::residual_norms)
    .def_readonly("kernel_dim", &SpectralResult::kernel_dim)
    .def_readonly("kernel_values", &SpectralResult::kernel_values);
  m.def("problem_ids", &problem_ids);
  m.def(
    "solve",
    [](const std::string &problem, const Mesh &mesh, int p, int k, int order,
       double zero_threshold) {
      ProblemSpec s;
      s.problem_id = problem;
      s.mesh = mesh;
      s.p = p;
      s.k = k;
      s.nodal_order = order;
      s.zero_threshold = zero_threshold;
      py::gil_scoped_release release;
      return solve_problem(s);
    },
    py::arg("problem"), py::arg("mesh"), py::arg("p") = 0, py::arg("k") = 5,
    py::arg("order") = 1, py::arg("zero_threshold") = -1.0);

  py::class_<DiskSpectrum>(m, "DiskSpectrum")
    .def_readonly("problem_id", &DiskSpectrum::problem_id)
    .def_readonly("radius", &DiskSpectrum::radius)
    .def_readonly("values", &DiskSpectrum::values)
    .def_readonly("modes", &DiskSpectrum::modes)
    .def_readonly("kernel_dim", &DiskSpectrum::kernel_dim);
  m.def("disk_scalar_spectrum", &disk_scalar_spectrum, py::arg("problem"), py::arg("radius"),
        py::arg("count"));
  m.def("disk_form_spectrum", &disk_form_spectrum, py::arg("p"), py::arg("problem"),
        py::arg("radius"), py::arg("count"));
  m.def("bessel_zero", &bessel_zero, py::arg("m"), py::arg("k"), py::arg("derivative") = false);

  m.def(
    "rellich_ledger_json",
    [](const Mesh &mesh, int p, int degree, unsigned long long seed,
       std::optional<std::pair<double, double>> x0) {
      std::mt19937_64 rng(seed);
      const PolyForm w = PolyForm::random(p, degree, rng);
      const auto F = VectorFieldSpec::position(point(x0).value_or(centroid(mesh)));
      return ledger_to_json(rellich_ledger(mesh, F, w));
    },
    py::arg("mesh"), py::arg("p") = 1, py::arg("degree") = 3, py::arg("seed") = 0,
    py::arg("x0") = py::none());

  m.def("theorem_ids", &theorem_ids);
  m.def(
    "verify_json",
    [](const std::string &theorem, const Mesh &mesh, int p, const std::vector<int> &k,
       std::optional<std::pair<double, double>> x0, bool refine, int order) {
      VerifyConfig cfg;
      cfg.refine = refine;
      cfg.nodal_order = order;
      std::vector<InequalityReport> r;
      {
        py::gil_scoped_release release;
        r = verify(theorem, mesh, point(x0), p, k, cfg);
      }
      return reports_to_json(r);
    },
    py::arg("theorem"), py::arg("mesh"), py::arg("p") = 0, py::arg("k") = std::vector<int>{1},
    py::arg("x0") = py::none(), py::arg("refine") = true, py::arg("order") = 2);
  m.def(
    "convergence_study_json",
    [](const std::string &problem, int p, const std::string &shape, const std::vector<double> &h,
       int k, int order) {
      py::gil_scoped_release release;
      return table_to_json(convergence_study(problem, p, shape, h, k, order));
    },
    py::arg("problem"), py::arg("p"), py::arg("shape"), py::arg("h"), py::arg("k") = 1,
    py::arg("order") = 1);
}
