#pragma once

/**
 * @file polytope.hpp
 * @brief Full-dimensional convex polytopes in R^1..R^3 with both V- and H-rep.
 *
 * Halfspaces are stored as normal . x >= offset with canonical normals (first
 * nonzero coordinate of absolute value one). In the plane the vertex list is in
 * counter-clockwise order starting at the lexicographically smallest vertex;
 * otherwise it is sorted lexicographically.
 */

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "lonely/cone.hpp"
#include "lonely/error.hpp"
#include "lonely/feasibility.hpp"
#include "lonely/linalg.hpp"

namespace lonely {

struct Halfspace {
  Vector normal;
  Scalar offset;

  // normal . x - offset
  Scalar slack(const Vector& x) const { return dot(normal, x) - offset; }
  friend bool operator==(const Halfspace&, const Halfspace&) = default;
};

enum class Location { Interior, Boundary, Outside };

inline const char* to_string(Location l) {
  switch (l) {
    case Location::Interior: return "interior";
    case Location::Boundary: return "boundary";
    case Location::Outside: return "outside";
  }
  return "?";
}

class Polytope;

struct Face {
  std::vector<std::size_t> active;  // indices into halfspaces()
  std::vector<Vector> vertices;
  std::size_t dim = 0;
};

namespace detail {

inline std::size_t affine_dim(std::span<const Vector> pts) {
  if (pts.empty()) return 0;
  std::vector<Vector> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
  return rank(diffs);
}

inline Halfspace canonical_halfspace(Vector normal, Scalar offset) {
  for (std::size_t i = 0; i < normal.dim(); ++i) {
    if (!normal[i].is_zero()) {
      Scalar s = abs(normal[i]);
      if (s != Scalar(1)) {
        normal *= Scalar(1) / s;
        offset /= s;
      }
      break;
    }
  }
  return {std::move(normal), std::move(offset)};
}

// Andrew's monotone chain with exact turns; collinear points dropped.
inline std::vector<Vector> hull2(std::vector<Vector> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Vector> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross2(h[k - 1] - h[k - 2], pts[i] - h[k - 2]).sign() <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross2(h[k - 1] - h[k - 2], pts[i] - h[k - 2]).sign() <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

}  // namespace detail

class Polytope {
 public:
  Polytope() = default;

  /// Convex hull of the points with its irredundant H-representation. Throws
  /// DegenerateInput unless the points affinely span R^n, n in {1, 2, 3}.
  static Polytope from_vertices(std::vector<Vector> points) {
    if (points.empty()) throw DegenerateInput("no points");
    const std::size_t n = points.front().dim();
    for (const auto& p : points) {
      if (p.dim() != n) throw DegenerateInput("points differ in dimension");
    }
    if (n < 1 || n > 3) throw UnsupportedDim("polytopes are supported in dimensions 1 to 3");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (detail::affine_dim(points) != n) throw DegenerateInput("points do not affinely span R^n");

    Polytope p;
    p.dim_ = n;
    if (n == 1) {
      p.vertices_ = {points.front(), points.back()};
      p.halfspaces_ = {{Vector{1}, points.front()[0]}, {Vector{-1}, -points.back()[0]}};
    } else if (n == 2) {
      p.vertices_ = detail::hull2(std::move(points));
      const std::size_t m = p.vertices_.size();
      for (std::size_t i = 0; i < m; ++i) {
        const Vector& a = p.vertices_[i];
        const Vector& b = p.vertices_[(i + 1) % m];
        Vector e = b - a;
        Vector normal{-e[1], e[0]};  // interior lies to the left
        Scalar off = dot(normal, a);
        p.halfspaces_.push_back(detail::canonical_halfspace(std::move(normal), std::move(off)));
      }
    } else {
      p.build_3d(points);
    }
    return p;
  }

  std::size_t dim() const { return dim_; }
  const std::vector<Vector>& vertices() const { return vertices_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }

  Location locate(const Vector& x) const {
    bool tight = false;
    for (const auto& h : halfspaces_) {
      int s = h.slack(x).sign();
      if (s < 0) return Location::Outside;
      if (s == 0) tight = true;
    }
    return tight ? Location::Boundary : Location::Interior;
  }

  std::vector<std::size_t> active_set(const Vector& x) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < halfspaces_.size(); ++i) {
      if (halfspaces_[i].slack(x).is_zero()) out.push_back(i);
    }
    return out;
  }

  // Rank of the normals of the halfspaces tight at x.
  std::size_t active_rank(const Vector& x) const {
    std::vector<Vector> normals;
    for (auto i : active_set(x)) normals.push_back(halfspaces_[i].normal);
    return rank(normals);
  }

  Polytope transformed(const Matrix& linear, const Vector& offset) const {
    std::vector<Vector> pts;
    pts.reserve(vertices_.size());
    for (const auto& v : vertices_) pts.push_back(linear * v + offset);
    return from_vertices(std::move(pts));
  }

  Polytope translated(const Vector& offset) const {
    return transformed(Matrix::identity(dim_), offset);
  }

  Polytope scaled(const Scalar& factor) const {
    std::vector<Vector> pts;
    for (const auto& v : vertices_) pts.push_back(v * factor);
    return from_vertices(std::move(pts));
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (i) out += "; ";
      const auto& v = vertices_[i];
      for (std::size_t j = 0; j < v.dim(); ++j) {
        if (j) out += ", ";
        out += v[j].to_string();
      }
    }
    return out;
  }

 private:
  // Facets from every affinely independent triple whose plane supports the
  // point set; vertices are points where the tight facet normals have rank 3.
  void build_3d(const std::vector<Vector>& pts) {
    std::set<std::pair<Vector, Scalar>> seen;
    const std::size_t m = pts.size();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        for (std::size_t k = j + 1; k < m; ++k) {
          Vector normal = cross(pts[j] - pts[i], pts[k] - pts[i]);
          if (normal.is_zero()) continue;
          Scalar off = dot(normal, pts[i]);
          int side = 0;
          bool separating = true;
          for (const auto& q : pts) {
            int s = (dot(normal, q) - off).sign();
            if (s == 0) continue;
            if (side == 0) side = s;
            else if (s != side) {
              separating = false;
              break;
            }
          }
          if (!separating) continue;
          if (side < 0) {
            normal = -normal;
            off = -off;
          }
          Halfspace h = detail::canonical_halfspace(std::move(normal), std::move(off));
          if (seen.insert({h.normal, h.offset}).second) halfspaces_.push_back(std::move(h));
        }
    for (const auto& q : pts) {
      std::vector<Vector> normals;
      for (const auto& h : halfspaces_)
        if (h.slack(q).is_zero()) normals.push_back(h.normal);
      if (rank(normals) == 3) vertices_.push_back(q);
    }
  }

  std::size_t dim_ = 0;
  std::vector<Vector> vertices_;
  std::vector<Halfspace> halfspaces_;
};

inline Location contains(const Polytope& p, const Vector& x) { return p.locate(x); }

inline bool is_vertex(const Polytope& p, const Vector& x) {
  const auto& vs = p.vertices();
  return std::find(vs.begin(), vs.end(), x) != vs.end();
}

/// All k-faces, 0 <= k <= n-1, from closing the facet vertex sets under
/// intersection. Sorted by vertex index sets.
inline std::vector<Face> faces_of_dim(const Polytope& p, std::size_t k) {
  const std::size_t n = p.dim();
  if (k >= n) throw std::invalid_argument("face dimension must be below the ambient dimension");
  const auto& vs = p.vertices();
  const auto& hs = p.halfspaces();
  using IndexSet = std::vector<std::size_t>;
  std::set<IndexSet> faces;
  std::vector<IndexSet> frontier;
  for (const auto& h : hs) {
    IndexSet s;
    for (std::size_t i = 0; i < vs.size(); ++i)
      if (h.slack(vs[i]).is_zero()) s.push_back(i);
    if (faces.insert(s).second) frontier.push_back(s);
  }
  std::vector<IndexSet> facets(faces.begin(), faces.end());
  while (!frontier.empty()) {
    std::vector<IndexSet> next;
    for (const auto& f : frontier)
      for (const auto& g : facets) {
        IndexSet x;
        std::set_intersection(f.begin(), f.end(), g.begin(), g.end(), std::back_inserter(x));
        if (!x.empty() && faces.insert(x).second) next.push_back(std::move(x));
      }
    frontier = std::move(next);
  }
  std::vector<Face> out;
  for (const auto& s : faces) {
    Face f;
    for (auto i : s) f.vertices.push_back(vs[i]);
    f.dim = detail::affine_dim(f.vertices);
    if (f.dim != k) continue;
    for (std::size_t h = 0; h < hs.size(); ++h) {
      bool tight = std::all_of(f.vertices.begin(), f.vertices.end(),
                               [&](const Vector& v) { return hs[h].slack(v).is_zero(); });
      if (tight) f.active.push_back(h);
    }
    out.push_back(std::move(f));
  }
  return out;
}

/// Edges as vertex pairs. In the plane these follow the ccw boundary.
inline std::vector<std::pair<Vector, Vector>> edges(const Polytope& p) {
  std::vector<std::pair<Vector, Vector>> out;
  const auto& vs = p.vertices();
  if (p.dim() == 2) {
    for (std::size_t i = 0; i < vs.size(); ++i) out.emplace_back(vs[i], vs[(i + 1) % vs.size()]);
    return out;
  }
  if (p.dim() == 1) return out;
  for (auto& f : faces_of_dim(p, 1)) out.emplace_back(f.vertices.front(), f.vertices.back());
  return out;
}

/// Tangent cone at x: directions v with normal . v >= 0 for every halfspace
/// tight at x. Interior points give the full space.
inline Cone tangent_cone(const Polytope& p, const Vector& x) {
  if (p.locate(x) == Location::Outside) throw OutsidePoint("point " + x.to_string() + " is outside the polytope");
  std::vector<Vector> normals;
  for (auto i : p.active_set(x)) normals.push_back(p.halfspaces()[i].normal);
  return Cone(p.dim(), std::move(normals));
}

namespace detail {

inline std::vector<Inequality> system_of(const Polytope& p, bool strict) {
  std::vector<Inequality> rows;
  for (const auto& h : p.halfspaces()) rows.push_back({h.normal, h.offset, strict});
  return rows;
}

struct Box {
  Vector lo, hi;
};

inline Box bounding_box(const Polytope& p) {
  Box b{p.vertices().front(), p.vertices().front()};
  for (const auto& v : p.vertices())
    for (std::size_t i = 0; i < v.dim(); ++i) {
      if (v[i] < b.lo[i]) b.lo[i] = v[i];
      if (v[i] > b.hi[i]) b.hi[i] = v[i];
    }
  return b;
}

// Closed boxes overlap (strict = open boxes overlap).
inline bool boxes_overlap(const Box& a, const Box& b, bool strict) {
  for (std::size_t i = 0; i < a.lo.dim(); ++i) {
    if (strict ? (a.hi[i] <= b.lo[i] || b.hi[i] <= a.lo[i]) : (a.hi[i] < b.lo[i] || b.hi[i] < a.lo[i]))
      return false;
  }
  return true;
}

}  // namespace detail

/// int(p) and int(q) meet, decided by feasibility of the combined strict system.
inline bool interiors_intersect(const Polytope& p, const Polytope& q) {
  if (p.dim() != q.dim()) throw std::invalid_argument("polytopes differ in dimension");
  if (!detail::boxes_overlap(detail::bounding_box(p), detail::bounding_box(q), true)) return false;
  auto rows = detail::system_of(p, true);
  auto more = detail::system_of(q, true);
  rows.insert(rows.end(), more.begin(), more.end());
  return feasible(std::move(rows));
}

/// The closed polytopes share at least one point.
inline bool intersects(const Polytope& p, const Polytope& q) {
  if (p.dim() != q.dim()) throw std::invalid_argument("polytopes differ in dimension");
  if (!detail::boxes_overlap(detail::bounding_box(p), detail::bounding_box(q), false)) return false;
  auto rows = detail::system_of(p, false);
  auto more = detail::system_of(q, false);
  rows.insert(rows.end(), more.begin(), more.end());
  return feasible(std::move(rows));
}

/// Area of a polygon (shoelace over the ccw vertex cycle).
inline Scalar area2(const Polytope& p) {
  if (p.dim() != 2) throw UnsupportedDim("area2 needs a polygon");
  const auto& vs = p.vertices();
  Scalar twice;
  for (std::size_t i = 0; i < vs.size(); ++i) twice += cross2(vs[i], vs[(i + 1) % vs.size()]);
  return twice / Scalar(2);
}

/// Squared Euclidean distance from x to the polygon (zero inside). Exact.
inline Scalar squared_distance(const Polytope& p, const Vector& x) {
  if (p.dim() != 2) throw UnsupportedDim("squared_distance needs a polygon");
  if (p.locate(x) != Location::Outside) return Scalar(0);
  std::optional<Scalar> best;
  for (const auto& [a, b] : edges(p)) {
    Vector e = b - a;
    Scalar t = dot(x - a, e) / dot(e, e);
    if (t.sign() < 0) t = 0;
    if (t > Scalar(1)) t = 1;
    Vector d = x - (a + e * t);
    Scalar dd = dot(d, d);
    if (!best || dd < *best) best = dd;
  }
  return *best;
}

}  // namespace lonely
