// Copyright 2026 The ksforms Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef KSFORMS_MESH_HPP
#define KSFORMS_MESH_HPP

#include <array>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace ksforms
{

using Vec2 = Eigen::Vector2d;

/// One boundary edge. The endpoints follow the orientation of the owning
/// triangle, so outer loops run counterclockwise and holes clockwise.
/// The stored normal points OUT of the domain; the inward normal used in the
/// boundary identities is its negation.
struct BoundaryFacet
{
  std::array<int, 2> endpoints;
  Vec2 outward_normal;
  double length = 0.0;
  int triangle = -1;

  Vec2 tangent() const { return Vec2(-outward_normal.y(), outward_normal.x()); }
};

/// Triangulation of a flat planar domain. Immutable once constructed: all
/// factory functions validate orientation and topology and derive the
/// boundary facets and loops.
class Mesh
{
public:
  Mesh() = default;

  /// Validates and builds the boundary description. Throws ValidationError
  /// on a non-positive triangle, an edge shared by more than two triangles,
  /// inconsistent orientation or a boundary vertex that is not manifold.
  static Mesh from_triangles(std::vector<Vec2> vertices,
                             std::vector<std::array<int, 3>> triangles,
                             std::string domain_tag = "");

  const std::vector<Vec2> &vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>> &triangles() const { return triangles_; }
  const std::vector<BoundaryFacet> &boundary_facets() const { return facets_; }
  /// Facet indices of each closed boundary loop, in traversal order.
  const std::vector<std::vector<int>> &boundary_loops() const { return loops_; }
  const std::string &domain_tag() const { return tag_; }

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_triangles() const { return static_cast<int>(triangles_.size()); }

  double triangle_area(int t) const;
  double total_area() const;
  double boundary_length() const;
  double max_edge_length() const;
  std::vector<char> boundary_vertex_mask() const;

  /// Every vertex multiplied by `factor` (about the origin).
  Mesh scaled(double factor) const;
  /// Vertex map applied to every coordinate; the map must preserve orientation.
  Mesh mapped(const std::function<Vec2(const Vec2 &)> &map, std::string tag) const;
  /// Vertex renumbering; `perm[old] = new`.
  Mesh permuted(const std::vector<int> &perm) const;

private:
  std::vector<Vec2> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<BoundaryFacet> facets_;
  std::vector<std::vector<int>> loops_;
  std::string tag_;
};

/// Concentric-ring triangulation of the disk of `radius` about the origin.
/// Boundary vertices lie exactly on the circle.
Mesh gen_disk(double radius, double target_h, int smoothing_iterations = 2);

/// Disk mesh stretched to the ellipse with semi-axes (a, b).
Mesh gen_ellipse(double a, double b, double target_h);

/// Ring triangulation of the annulus inner < |x| < outer.
Mesh gen_annulus(double inner, double outer, double target_h);

/// Triangulation of a simple counterclockwise polygon: ear clipping of the
/// corners followed by uniform refinement until every edge is at most
/// 1.5 * target_h.
Mesh gen_polygon(const std::vector<Vec2> &corners, double target_h);

/// Splits every triangle into four through its edge midpoints.
Mesh refine_uniform(const Mesh &mesh);

/// OFF text format: "OFF", "nv nt 0", nv lines "x y 0", nt lines "3 i j k".
Mesh load_mesh(const std::string &path);
Mesh parse_off(const std::string &text);
void save_mesh(const Mesh &mesh, const std::string &path);
std::string format_off(const Mesh &mesh);

}  // namespace ksforms

#endif  // KSFORMS_MESH_HPP
