// Copyright 2026 The ksforms Authors
// SPDX-License-Identifier: Apache-2.0

#include "ksforms/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "ksforms/error.hpp"

namespace ksforms
{

namespace
{

double cross(const Vec2 &a, const Vec2 &b) { return a.x() * b.y() - a.y() * b.x(); }

double signed_area(const Vec2 &a, const Vec2 &b, const Vec2 &c)
{
  return 0.5 * cross(b - a, c - a);
}

struct DirectedEdge
{
  int tri;
  int from;
  int to;
};

}  // namespace

Mesh Mesh::from_triangles(std::vector<Vec2> vertices,
                          std::vector<std::array<int, 3>> triangles, std::string domain_tag)
{
  Mesh m;
  m.vertices_ = std::move(vertices);
  m.triangles_ = std::move(triangles);
  m.tag_ = std::move(domain_tag);

  const int nv = m.num_vertices();
  if (nv < 3 || m.triangles_.empty())
  {
    throw ValidationError("mesh needs at least one triangle");
  }

  double extent = 0.0;
  for (const auto &v : m.vertices_)
  {
    extent = std::max(extent, v.cwiseAbs().maxCoeff());
  }
  const double area_floor = 1e-14 * std::max(extent * extent, 1e-300);

  std::vector<char> used(nv, 0);
  std::map<std::pair<int, int>, std::vector<DirectedEdge>> edges;
  for (int t = 0; t < m.num_triangles(); ++t)
  {
    const auto &tri = m.triangles_[t];
    for (int k = 0; k < 3; ++k)
    {
      if (tri[k] < 0 || tri[k] >= nv)
      {
        throw ValidationError("triangle " + std::to_string(t) + " references vertex " +
                              std::to_string(tri[k]) + " out of range");
      }
      used[tri[k]] = 1;
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
    {
      throw ValidationError("triangle " + std::to_string(t) + " repeats a vertex");
    }
    const double a = signed_area(m.vertices_[tri[0]], m.vertices_[tri[1]], m.vertices_[tri[2]]);
    if (a <= area_floor)
    {
      throw ValidationError("orientation: triangle " + std::to_string(t) +
                            (a < 0 ? " is clockwise" : " is degenerate"));
    }
    for (int k = 0; k < 3; ++k)
    {
      const int a0 = tri[k], a1 = tri[(k + 1) % 3];
      edges[{std::min(a0, a1), std::max(a0, a1)}].push_back({t, a0, a1});
    }
  }
  for (int v = 0; v < nv; ++v)
  {
    if (!used[v])
    {
      throw ValidationError("topology: vertex " + std::to_string(v) + " belongs to no triangle");
    }
  }

  std::map<int, int> outgoing;
  std::map<int, int> incoming;
  for (const auto &[key, list] : edges)
  {
    if (list.size() > 2)
    {
      throw ValidationError("topology: edge (" + std::to_string(key.first) + "," +
                            std::to_string(key.second) + ") shared by more than two triangles");
    }
    if (list.size() == 2)
    {
      if (list[0].from == list[1].from)
      {
        throw ValidationError("orientation: neighbouring triangles " +
                              std::to_string(list[0].tri) + " and " +
                              std::to_string(list[1].tri) + " disagree");
      }
      continue;
    }
    const auto &e = list[0];
    BoundaryFacet f;
    f.endpoints = {e.from, e.to};
    f.triangle = e.tri;
    const Vec2 d = m.vertices_[e.to] - m.vertices_[e.from];
    f.length = d.norm();
    f.outward_normal = Vec2(d.y(), -d.x()) / f.length;
    const int idx = static_cast<int>(m.facets_.size());
    if (!outgoing.emplace(e.from, idx).second || !incoming.emplace(e.to, idx).second)
    {
      throw ValidationError("topology: boundary vertex " +
                            std::to_string(outgoing.count(e.from) ? e.from : e.to) +
                            " has a dangling boundary edge");
    }
    m.facets_.push_back(f);
  }
  for (const auto &[v, f] : outgoing)
  {
    if (!incoming.count(v))
    {
      throw ValidationError("topology: dangling boundary edge at vertex " + std::to_string(v));
    }
  }

  std::vector<char> visited(m.facets_.size(), 0);
  for (std::size_t start = 0; start < m.facets_.size(); ++start)
  {
    if (visited[start])
    {
      continue;
    }
    std::vector<int> loop;
    int f = static_cast<int>(start);
    while (!visited[f])
    {
      visited[f] = 1;
      loop.push_back(f);
      f = outgoing.at(m.facets_[f].endpoints[1]);
    }
    if (f != static_cast<int>(start))
    {
      throw ValidationError("topology: boundary does not close into loops");
    }
    m.loops_.push_back(std::move(loop));
  }
  return m;
}

double Mesh::triangle_area(int t) const
{
  const auto &tri = triangles_[t];
  return signed_area(vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]);
}

double Mesh::total_area() const
{
  double a = 0.0;
  for (int t = 0; t < num_triangles(); ++t)
  {
    a += triangle_area(t);
  }
  return a;
}

double Mesh::boundary_length() const
{
  double l = 0.0;
  for (const auto &f : facets_)
  {
    l += f.length;
  }
  return l;
}

double Mesh::max_edge_length() const
{
  double h = 0.0;
  for (const auto &tri : triangles_)
  {
    for (int k = 0; k < 3; ++k)
    {
      h = std::max(h, (vertices_[tri[k]] - vertices_[tri[(k + 1) % 3]]).norm());
    }
  }
  return h;
}

std::vector<char> Mesh::boundary_vertex_mask() const
{
  std::vector<char> mask(vertices_.size(), 0);
  for (const auto &f : facets_)
  {
    mask[f.endpoints[0]] = 1;
    mask[f.endpoints[1]] = 1;
  }
  return mask;
}

Mesh Mesh::scaled(double factor) const
{
  if (!(factor > 0.0))
  {
    throw DomainError("scale factor must be positive");
  }
  return mapped([factor](const Vec2 &x) { return Vec2(factor * x); }, tag_);
}

Mesh Mesh::mapped(const std::function<Vec2(const Vec2 &)> &map, std::string tag) const
{
  std::vector<Vec2> v;
  v.reserve(vertices_.size());
  for (const auto &x : vertices_)
  {
    v.push_back(map(x));
  }
  return from_triangles(std::move(v), triangles_, std::move(tag));
}

Mesh Mesh::permuted(const std::vector<int> &perm) const
{
  std::vector<Vec2> v(vertices_.size());
  for (std::size_t i = 0; i < vertices_.size(); ++i)
  {
    v[perm[i]] = vertices_[i];
  }
  auto tris = triangles_;
  for (auto &t : tris)
  {
    for (auto &k : t)
    {
      k = perm[k];
    }
  }
  return from_triangles(std::move(v), std::move(tris), tag_);
}

namespace
{

// Triangles between two concentric rings; `inner`/`outer` list vertex ids
// by increasing angle starting at angle zero.
void zip_rings(const std::vector<int> &inner, const std::vector<int> &outer,
               std::vector<std::array<int, 3>> &tris)
{
  const std::size_t na = inner.size(), nb = outer.size();
  std::size_t i = 0, j = 0;
  while (i < na || j < nb)
  {
    const bool step_outer =
      j < nb && (i == na || static_cast<double>(j + 1) / static_cast<double>(nb) <=
                              static_cast<double>(i + 1) / static_cast<double>(na));
    if (step_outer)
    {
      tris.push_back({inner[i % na], outer[j % nb], outer[(j + 1) % nb]});
      ++j;
    }
    else
    {
      tris.push_back({inner[i % na], outer[j % nb], inner[(i + 1) % na]});
      ++i;
    }
  }
}

std::vector<int> add_ring(std::vector<Vec2> &v, double r, int count)
{
  std::vector<int> ids;
  for (int j = 0; j < count; ++j)
  {
    const double a = 2.0 * std::numbers::pi * j / count;
    ids.push_back(static_cast<int>(v.size()));
    v.emplace_back(r * std::cos(a), r * std::sin(a));
  }
  return ids;
}

void check_positive(double value, const char *name)
{
  if (!(value > 0.0) || !std::isfinite(value))
  {
    throw DomainError(std::string(name) + " must be positive");
  }
}

}  // namespace

Mesh gen_disk(double radius, double target_h, int smoothing_iterations)
{
  check_positive(radius, "radius");
  check_positive(target_h, "target_h");
  if (target_h >= radius)
  {
    throw DomainError("target_h must be smaller than the radius");
  }
  const int rings = static_cast<int>(std::ceil(radius / target_h - 1e-12));
  const double dr = radius / rings;

  std::vector<Vec2> v{Vec2::Zero()};
  std::vector<std::array<int, 3>> tris;
  std::vector<int> prev;
  for (int i = 1; i <= rings; ++i)
  {
    const int count = std::max(6, static_cast<int>(std::lround(2.0 * std::numbers::pi * i)));
    auto ring = add_ring(v, i * dr, count);
    if (i == 1)
    {
      for (int j = 0; j < count; ++j)
      {
        tris.push_back({0, ring[j], ring[(j + 1) % count]});
      }
    }
    else
    {
      zip_rings(prev, ring, tris);
    }
    prev = std::move(ring);
  }
  // exact radius on the boundary ring
  for (int id : prev)
  {
    v[id] *= radius / v[id].norm();
  }

  std::vector<char> fixed(v.size(), 0);
  for (int id : prev)
  {
    fixed[id] = 1;
  }
  std::vector<std::vector<int>> nbr(v.size());
  for (const auto &t : tris)
  {
    for (int k = 0; k < 3; ++k)
    {
      nbr[t[k]].push_back(t[(k + 1) % 3]);
      nbr[t[k]].push_back(t[(k + 2) % 3]);
    }
  }
  for (auto &n : nbr)
  {
    std::sort(n.begin(), n.end());
    n.erase(std::unique(n.begin(), n.end()), n.end());
  }
  for (int it = 0; it < smoothing_iterations; ++it)
  {
    std::vector<Vec2> next = v;
    for (std::size_t i = 0; i < v.size(); ++i)
    {
      if (fixed[i] || i == 0)
      {
        continue;
      }
      Vec2 s = Vec2::Zero();
      for (int j : nbr[i])
      {
        s += v[j];
      }
      next[i] = s / static_cast<double>(nbr[i].size());
    }
    bool valid = true;
    for (const auto &t : tris)
    {
      valid = valid && signed_area(next[t[0]], next[t[1]], next[t[2]]) > 0.0;
    }
    if (!valid)
    {
      break;
    }
    v = std::move(next);
  }
  return Mesh::from_triangles(std::move(v), std::move(tris), "disk");
}

Mesh gen_ellipse(double a, double b, double target_h)
{
  check_positive(a, "a");
  check_positive(b, "b");
  const double r = std::max(a, b);
  // map the disk of radius max(a,b); spacing shrinks along the short axis
  Mesh disk = gen_disk(1.0, target_h / r);
  return disk.mapped([a, b](const Vec2 &x) { return Vec2(a * x.x(), b * x.y()); }, "ellipse");
}

Mesh gen_annulus(double inner, double outer, double target_h)
{
  check_positive(inner, "inner radius");
  check_positive(target_h, "target_h");
  if (!(outer > inner))
  {
    throw DomainError("outer radius must exceed inner radius");
  }
  const int layers = std::max(1, static_cast<int>(std::ceil((outer - inner) / target_h - 1e-12)));
  const double dr = (outer - inner) / layers;
  std::vector<Vec2> v;
  std::vector<std::array<int, 3>> tris;
  std::vector<int> prev;
  for (int i = 0; i <= layers; ++i)
  {
    const double r = inner + i * dr;
    const int count =
      std::max(6, static_cast<int>(std::lround(2.0 * std::numbers::pi * r / dr)));
    auto ring = add_ring(v, r, count);
    if (i > 0)
    {
      zip_rings(prev, ring, tris);
    }
    prev = std::move(ring);
  }
  return Mesh::from_triangles(std::move(v), std::move(tris), "annulus");
}

namespace
{

bool segments_intersect(const Vec2 &p1, const Vec2 &p2, const Vec2 &q1, const Vec2 &q2)
{
  auto orient = [](const Vec2 &a, const Vec2 &b, const Vec2 &c) {
    const double v = cross(b - a, c - a);
    return (v > 0) - (v < 0);
  };
  auto on_segment = [](const Vec2 &a, const Vec2 &b, const Vec2 &c) {
    return std::min(a.x(), b.x()) <= c.x() && c.x() <= std::max(a.x(), b.x()) &&
           std::min(a.y(), b.y()) <= c.y() && c.y() <= std::max(a.y(), b.y());
  };
  const int o1 = orient(p1, p2, q1), o2 = orient(p1, p2, q2);
  const int o3 = orient(q1, q2, p1), o4 = orient(q1, q2, p2);
  if (o1 != o2 && o3 != o4)
  {
    return true;
  }
  return (o1 == 0 && on_segment(p1, p2, q1)) || (o2 == 0 && on_segment(p1, p2, q2)) ||
         (o3 == 0 && on_segment(q1, q2, p1)) || (o4 == 0 && on_segment(q1, q2, p2));
}

bool inside_or_on(const Vec2 &p, const Vec2 &a, const Vec2 &b, const Vec2 &c)
{
  return cross(b - a, p - a) >= 0 && cross(c - b, p - b) >= 0 && cross(a - c, p - c) >= 0;
}

}  // namespace

Mesh gen_polygon(const std::vector<Vec2> &corners, double target_h)
{
  check_positive(target_h, "target_h");
  const int n = static_cast<int>(corners.size());
  if (n < 3)
  {
    throw DomainError("polygon needs at least three corners");
  }
  for (int i = 0; i < n; ++i)
  {
    for (int j = i + 1; j < n; ++j)
    {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      const Vec2 &a0 = corners[i], &a1 = corners[(i + 1) % n];
      const Vec2 &b0 = corners[j], &b1 = corners[(j + 1) % n];
      if (adjacent)
      {
        // adjacent edges may only share their common corner
        const Vec2 shared = (j == i + 1) ? a1 : a0;
        const Vec2 &other_a = (j == i + 1) ? a0 : a1;
        const Vec2 &other_b = (j == i + 1) ? b1 : b0;
        if ((corners[i] - corners[(i + 1) % n]).norm() == 0.0 ||
            (std::abs(cross(other_a - shared, other_b - shared)) == 0.0 &&
             (other_a - shared).dot(other_b - shared) > 0.0))
        {
          throw DomainError("polygon is self-intersecting (overlapping edges)");
        }
        continue;
      }
      if (segments_intersect(a0, a1, b0, b1))
      {
        throw DomainError("polygon is self-intersecting");
      }
    }
  }
  double area2 = 0.0;
  for (int i = 0; i < n; ++i)
  {
    area2 += cross(corners[i], corners[(i + 1) % n]);
  }
  if (area2 <= 0.0)
  {
    throw DomainError("polygon corners must be counterclockwise");
  }

  std::vector<int> remaining(n);
  for (int i = 0; i < n; ++i)
  {
    remaining[i] = i;
  }
  std::vector<std::array<int, 3>> tris;
  while (remaining.size() > 3)
  {
    const int m = static_cast<int>(remaining.size());
    bool clipped = false;
    for (int k = 0; k < m && !clipped; ++k)
    {
      const int ip = remaining[(k + m - 1) % m], ic = remaining[k], in = remaining[(k + 1) % m];
      const Vec2 &a = corners[ip], &b = corners[ic], &c = corners[in];
      if (cross(b - a, c - b) <= 0.0)
      {
        continue;
      }
      bool ear = true;
      for (int q : remaining)
      {
        if (q != ip && q != ic && q != in && inside_or_on(corners[q], a, b, c))
        {
          ear = false;
          break;
        }
      }
      if (ear)
      {
        tris.push_back({ip, ic, in});
        remaining.erase(remaining.begin() + k);
        clipped = true;
      }
    }
    if (!clipped)
    {
      throw DomainError("ear clipping failed; polygon is not simple");
    }
  }
  tris.push_back({remaining[0], remaining[1], remaining[2]});

  Mesh mesh = Mesh::from_triangles(corners, std::move(tris), "polygon");
  while (mesh.max_edge_length() > 1.5 * target_h)
  {
    mesh = refine_uniform(mesh);
  }
  return mesh;
}

Mesh refine_uniform(const Mesh &mesh)
{
  std::vector<Vec2> v = mesh.vertices();
  std::map<std::pair<int, int>, int> mid;
  auto midpoint = [&](int a, int b) {
    const auto key = std::make_pair(std::min(a, b), std::max(a, b));
    auto it = mid.find(key);
    if (it != mid.end())
    {
      return it->second;
    }
    const int id = static_cast<int>(v.size());
    v.push_back(0.5 * (v[a] + v[b]));
    mid.emplace(key, id);
    return id;
  };
  std::vector<std::array<int, 3>> tris;
  tris.reserve(4 * mesh.triangles().size());
  for (const auto &t : mesh.triangles())
  {
    const int m01 = midpoint(t[0], t[1]), m12 = midpoint(t[1], t[2]), m20 = midpoint(t[2], t[0]);
    tris.push_back({t[0], m01, m20});
    tris.push_back({m01, t[1], m12});
    tris.push_back({m20, m12, t[2]});
    tris.push_back({m01, m12, m20});
  }
  return Mesh::from_triangles(std::move(v), std::move(tris), mesh.domain_tag());
}

Mesh parse_off(const std::string &text)
{
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto next_line = [&](std::istringstream &fields) {
    while (std::getline(in, line))
    {
      ++lineno;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#')
      {
        continue;
      }
      fields.clear();
      fields.str(line);
      return true;
    }
    return false;
  };

  std::istringstream fields;
  if (!next_line(fields))
  {
    throw ParseError("empty file", lineno);
  }
  std::string header;
  fields >> header;
  if (header != "OFF")
  {
    throw ParseError("expected OFF header", lineno);
  }
  if (!next_line(fields))
  {
    throw ParseError("missing counts line", lineno + 1);
  }
  long nv = -1, nt = -1, ne = 0;
  if (!(fields >> nv >> nt) || nv < 0 || nt < 0)
  {
    throw ParseError("malformed counts line", lineno);
  }
  fields >> ne;

  std::vector<Vec2> vertices;
  vertices.reserve(static_cast<std::size_t>(nv));
  for (long i = 0; i < nv; ++i)
  {
    if (!next_line(fields))
    {
      throw ParseError("unexpected end of file in vertex list", lineno + 1);
    }
    double x, y, z = 0.0;
    if (!(fields >> x >> y))
    {
      throw ParseError("malformed vertex line", lineno);
    }
    fields >> z;
    vertices.emplace_back(x, y);
  }
  std::vector<std::array<int, 3>> tris;
  tris.reserve(static_cast<std::size_t>(nt));
  for (long i = 0; i < nt; ++i)
  {
    if (!next_line(fields))
    {
      throw ParseError("unexpected end of file in face list", lineno + 1);
    }
    int k = 0;
    std::array<int, 3> t{};
    if (!(fields >> k >> t[0] >> t[1] >> t[2]) || k != 3)
    {
      throw ParseError("face is not a triangle \"3 i j k\"", lineno);
    }
    for (int idx : t)
    {
      if (idx < 0 || idx >= nv)
      {
        throw ParseError("vertex index out of range", lineno);
      }
    }
    tris.push_back(t);
  }
  return Mesh::from_triangles(std::move(vertices), std::move(tris), "off");
}

Mesh load_mesh(const std::string &path)
{
  std::ifstream f(path);
  if (!f)
  {
    throw IoError("cannot open mesh file " + path);
  }
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_off(ss.str());
}

std::string format_off(const Mesh &mesh)
{
  std::string out = "OFF\n";
  out += std::to_string(mesh.num_vertices()) + " " + std::to_string(mesh.num_triangles()) + " 0\n";
  char buf[96];
  for (const auto &v : mesh.vertices())
  {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g 0\n", v.x(), v.y());
    out += buf;
  }
  for (const auto &t : mesh.triangles())
  {
    std::snprintf(buf, sizeof(buf), "3 %d %d %d\n", t[0], t[1], t[2]);
    out += buf;
  }
  return out;
}

void save_mesh(const Mesh &mesh, const std::string &path)
{
  std::ofstream f(path);
  if (!f)
  {
    throw IoError("cannot write mesh file " + path);
  }
  f << format_off(mesh);
  if (!f)
  {
    throw IoError("write failed for " + path);
  }
}

}  // namespace ksforms
