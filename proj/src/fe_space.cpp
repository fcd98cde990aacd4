// Copyright 2026 The ksforms Authors
// SPDX-License-Identifier: Apache-2.0

#include "ksforms/fe_space.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "ksforms/error.hpp"

namespace ksforms
{

FESpace::FESpace(const Mesh &mesh, int order) : mesh_(mesh), order_(order)
{
  if (order != 1 && order != 2)
  {
    throw DomainError("nodal order must be 1 or 2");
  }
  nodes_ = mesh.vertices();
  std::map<std::pair<int, int>, int> mid;
  for (const auto &t : mesh.triangles())
  {
    std::vector<int> cell(t.begin(), t.end());
    if (order == 2)
    {
      const int edges[3][2] = {{1, 2}, {2, 0}, {0, 1}};
      for (const auto &e : edges)
      {
        const int a = t[e[0]], b = t[e[1]];
        const auto key = std::make_pair(std::min(a, b), std::max(a, b));
        auto it = mid.find(key);
        if (it == mid.end())
        {
          it = mid.emplace(key, static_cast<int>(nodes_.size())).first;
          nodes_.push_back(0.5 * (nodes_[a] + nodes_[b]));
        }
        cell.push_back(it->second);
      }
    }
    cell_nodes_.push_back(std::move(cell));
  }
  on_boundary_.assign(nodes_.size(), 0);
  for (const auto &f : mesh.boundary_facets())
  {
    std::vector<int> fn{f.endpoints[0], f.endpoints[1]};
    if (order == 2)
    {
      fn.push_back(mid.at({std::min(fn[0], fn[1]), std::max(fn[0], fn[1])}));
    }
    for (int v : fn)
    {
      on_boundary_[v] = 1;
    }
    facet_nodes_.push_back(std::move(fn));
  }
}

std::vector<int> FESpace::boundary_nodes() const
{
  std::vector<int> r;
  for (int i = 0; i < num_nodes(); ++i)
  {
    if (on_boundary_[i])
    {
      r.push_back(i);
    }
  }
  return r;
}

std::vector<int> FESpace::interior_nodes() const
{
  std::vector<int> r;
  for (int i = 0; i < num_nodes(); ++i)
  {
    if (!on_boundary_[i])
    {
      r.push_back(i);
    }
  }
  return r;
}

void FESpace::shape(const Eigen::Vector3d &lam, Eigen::VectorXd &values,
                    Eigen::MatrixXd &dlam) const
{
  if (order_ == 1)
  {
    values = lam;
    dlam = Eigen::MatrixXd::Identity(3, 3);
    return;
  }
  values.resize(6);
  dlam = Eigen::MatrixXd::Zero(6, 3);
  for (int a = 0; a < 3; ++a)
  {
    values[a] = lam[a] * (2.0 * lam[a] - 1.0);
    dlam(a, a) = 4.0 * lam[a] - 1.0;
  }
  const int edges[3][2] = {{1, 2}, {2, 0}, {0, 1}};
  for (int e = 0; e < 3; ++e)
  {
    const int i = edges[e][0], j = edges[e][1];
    values[3 + e] = 4.0 * lam[i] * lam[j];
    dlam(3 + e, i) = 4.0 * lam[j];
    dlam(3 + e, j) = 4.0 * lam[i];
  }
}

Eigen::VectorXd FESpace::facet_shape(double t) const
{
  Eigen::VectorXd v(nodes_per_facet());
  if (order_ == 1)
  {
    v << 1.0 - t, t;
  }
  else
  {
    v << (1.0 - t) * (1.0 - 2.0 * t), t * (2.0 * t - 1.0), 4.0 * t * (1.0 - t);
  }
  return v;
}

Eigen::Matrix<double, 3, 2> FESpace::barycentric_gradients(int t) const
{
  const auto &tri = mesh_.triangles()[t];
  const Vec2 &p0 = mesh_.vertices()[tri[0]], &p1 = mesh_.vertices()[tri[1]],
             &p2 = mesh_.vertices()[tri[2]];
  const double det = 2.0 * mesh_.triangle_area(t);
  if (!(det > 0.0))
  {
    throw ValidationError("degenerate triangle " + std::to_string(t) + " in assembly");
  }
  Eigen::Matrix<double, 3, 2> g;
  g.row(0) << p1.y() - p2.y(), p2.x() - p1.x();
  g.row(1) << p2.y() - p0.y(), p0.x() - p2.x();
  g.row(2) << p0.y() - p1.y(), p1.x() - p0.x();
  return g / det;
}

std::vector<Poly2> FESpace::shape_polys(int t) const
{
  const auto g = barycentric_gradients(t);
  const auto &tri = mesh_.triangles()[t];
  std::vector<Poly2> lam;
  for (int a = 0; a < 3; ++a)
  {
    const Vec2 &pa = mesh_.vertices()[tri[a]];
    // affine function with gradient g.row(a) and value 1 at vertex a
    lam.push_back(Poly2(1.0 - g(a, 0) * pa.x() - g(a, 1) * pa.y()) + g(a, 0) * Poly2::x() +
                  g(a, 1) * Poly2::y());
  }
  if (order_ == 1)
  {
    return lam;
  }
  std::vector<Poly2> phi;
  for (int a = 0; a < 3; ++a)
  {
    phi.push_back(lam[a] * (2.0 * lam[a] - Poly2(1.0)));
  }
  phi.push_back(4.0 * (lam[1] * lam[2]));
  phi.push_back(4.0 * (lam[2] * lam[0]));
  phi.push_back(4.0 * (lam[0] * lam[1]));
  return phi;
}

std::vector<BoundaryNodeFrame> boundary_frames(const FESpace &space, double corner_angle_deg)
{
  const auto &facets = space.mesh().boundary_facets();
  std::map<int, std::vector<Vec2>> normals;
  for (std::size_t f = 0; f < facets.size(); ++f)
  {
    const auto &fn = space.facet_nodes(static_cast<int>(f));
    for (int v : fn)
    {
      normals[v].push_back(facets[f].outward_normal);
    }
  }
  const double cos_limit = std::cos(corner_angle_deg * std::numbers::pi / 180.0);
  std::vector<BoundaryNodeFrame> frames;
  for (const auto &[node, list] : normals)
  {
    BoundaryNodeFrame fr;
    fr.node = node;
    if (list.size() == 1)
    {
      fr.normal = list[0];
    }
    else
    {
      fr.corner = list[0].dot(list[1]) < cos_limit;
      fr.normal = (list[0] + list[1]).normalized();
    }
    frames.push_back(fr);
  }
  return frames;
}

}  // namespace ksforms
