// Copyright 2026 The ksforms Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef KSFORMS_FE_SPACE_HPP
#define KSFORMS_FE_SPACE_HPP

#include <vector>

#include <Eigen/Core>

#include "ksforms/analytic.hpp"
#include "ksforms/mesh.hpp"

namespace ksforms
{

// Continuous Lagrange nodes of order 1 or 2. P2 numbering: mesh vertices
// first, then edge midpoints. Local P2 nodes 3, 4, 5 sit on the local edges
// (1,2), (2,0), (0,1).
class FESpace
{
public:
  FESpace(const Mesh &mesh, int order);

  const Mesh &mesh() const { return mesh_; }
  int order() const { return order_; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int nodes_per_cell() const { return order_ == 1 ? 3 : 6; }
  int nodes_per_facet() const { return order_ == 1 ? 2 : 3; }

  const std::vector<Vec2> &nodes() const { return nodes_; }
  const std::vector<int> &cell_nodes(int t) const { return cell_nodes_[t]; }
  // Endpoint nodes in facet orientation, then the midpoint for P2.
  const std::vector<int> &facet_nodes(int f) const { return facet_nodes_[f]; }
  const std::vector<char> &boundary_mask() const { return on_boundary_; }
  std::vector<int> boundary_nodes() const;
  std::vector<int> interior_nodes() const;

  // Shape values and barycentric derivatives at barycentric point `lam`.
  void shape(const Eigen::Vector3d &lam, Eigen::VectorXd &values,
             Eigen::MatrixXd &dlam) const;
  // Shape values along a facet at parameter t in [0, 1].
  Eigen::VectorXd facet_shape(double t) const;
  // Gradients of the barycentric coordinates of triangle t (3 x 2, rows).
  Eigen::Matrix<double, 3, 2> barycentric_gradients(int t) const;
  // Shape functions of triangle t as polynomials in x, y.
  std::vector<Poly2> shape_polys(int t) const;

private:
  Mesh mesh_;
  int order_;
  std::vector<Vec2> nodes_;
  std::vector<std::vector<int>> cell_nodes_;
  std::vector<std::vector<int>> facet_nodes_;
  std::vector<char> on_boundary_;
};

// Per boundary node: outward unit normal, averaged at vertices whose two
// facet normals differ by less than `corner_angle_deg`; `corner` otherwise.
struct BoundaryNodeFrame
{
  int node = -1;
  bool corner = false;
  Vec2 normal = Vec2::Zero();
  Vec2 tangent() const { return Vec2(-normal.y(), normal.x()); }
};

std::vector<BoundaryNodeFrame> boundary_frames(const FESpace &space,
                                               double corner_angle_deg = 15.0);

}  // namespace ksforms

#endif  // KSFORMS_FE_SPACE_HPP
