#pragma once

/**
 * @file analysis.hpp
 * @brief Finite-patch checks: interior points, lonely vertices, the
 *        vertex-edge graph and edge covering.
 *
 * Finite patches have boundary points where statements about tilings of the
 * whole space do not apply. Every check below filters those out instead of
 * counting them as violations.
 */

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lonely/patch.hpp"
#include "lonely/star.hpp"

namespace lonely {

/// Stars at every distinct tile-vertex point, in sorted point order.
inline std::vector<VertexStar> vertex_stars(const Patch& patch, const CoverageOptions& opts = {}) {
  std::vector<VertexStar> out;
  for (const auto& x : patch.vertex_points()) out.push_back(build_star(patch, x, opts));
  return out;
}

/// Tile-vertex points whose star is complete.
inline std::vector<Vector> interior_points(const Patch& patch, const CoverageOptions& opts = {}) {
  std::vector<Vector> out;
  for (const auto& s : vertex_stars(patch, opts))
    if (s.complete) out.push_back(s.center);
  return out;
}

struct LonelyScan {
  std::vector<Vector> violations;           // interior points that are a vertex of one tile only
  std::vector<Vector> boundary_singletons;  // same count, but on the patch boundary
  std::size_t points_checked = 0;
  std::size_t interior_count = 0;
};

inline LonelyScan lonely_vertex_scan(const Patch& patch, const CoverageOptions& opts = {}) {
  LonelyScan scan;
  for (const auto& star : vertex_stars(patch, opts)) {
    ++scan.points_checked;
    std::size_t count = 0;
    for (const auto& e : star.entries) count += is_vertex(patch.tile(e.tile_id).shape, star.center) ? 1 : 0;
    if (star.complete) ++scan.interior_count;
    if (count != 1) continue;
    (star.complete ? scan.violations : scan.boundary_singletons).push_back(star.center);
  }
  return scan;
}

class VertexGraph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  VertexGraph() = default;

  VertexGraph(std::vector<Vector> nodes, std::vector<Edge> edges) : nodes_(std::move(nodes)) {
    std::set<Edge> unique;
    for (auto [a, b] : edges) {
      if (a == b) continue;
      unique.emplace(std::min(a, b), std::max(a, b));
    }
    edges_.assign(unique.begin(), unique.end());
    for (std::size_t i = 0; i < nodes_.size(); ++i) lookup_.emplace(nodes_[i], i);
    std::vector<std::size_t> parent(nodes_.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (auto [a, b] : edges_) {
      auto ra = find(a), rb = find(b);
      if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
    std::map<std::size_t, std::size_t> root_to_comp;
    component_.resize(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      auto r = find(i);
      auto [it, fresh] = root_to_comp.emplace(r, components_.size());
      if (fresh) components_.emplace_back();
      component_[i] = it->second;
      components_[it->second].push_back(i);
    }
  }

  const std::vector<Vector>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::vector<std::size_t>>& components() const { return components_; }
  std::size_t component_of(std::size_t node) const { return component_.at(node); }

  std::optional<std::size_t> node_index(const Vector& x) const {
    auto it = lookup_.find(x);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
  }

  template <class Pred>
  VertexGraph without_edges(Pred&& drop) const {
    std::vector<Edge> kept;
    for (const auto& e : edges_)
      if (!drop(e)) kept.push_back(e);
    return VertexGraph(nodes_, std::move(kept));
  }

 private:
  std::vector<Vector> nodes_;
  std::vector<Edge> edges_;
  std::map<Vector, std::size_t> lookup_;
  std::vector<std::size_t> component_;
  std::vector<std::vector<std::size_t>> components_;
};

/// Nodes are tile-vertex points (identified when equal); an edge joins two
/// nodes when the segment between them is an entire edge of some tile.
inline VertexGraph build_graph(const Patch& patch) {
  std::vector<Vector> nodes = patch.vertex_points();
  std::map<Vector, std::size_t> idx;
  for (std::size_t i = 0; i < nodes.size(); ++i) idx.emplace(nodes[i], i);
  std::vector<VertexGraph::Edge> es;
  for (const auto& t : patch.tiles())
    for (const auto& [a, b] : edges(t.shape)) es.emplace_back(idx.at(a), idx.at(b));
  return VertexGraph(std::move(nodes), std::move(es));
}

struct ComponentInfo {
  std::size_t size = 0;
  std::size_t boundary_nodes = 0;
};

struct GraphReport {
  bool pass = true;
  std::vector<ComponentInfo> components;
};

/// Points of tile-vertex sets that sit on the boundary of the patch support.
inline std::vector<bool> boundary_flags(const Patch& patch, const VertexGraph& graph,
                                        const CoverageOptions& opts = {}) {
  std::vector<bool> flags;
  for (const auto& x : graph.nodes()) flags.push_back(!build_star(patch, x, opts).complete);
  return flags;
}

/// Every component must reach the boundary of the patch support; a component
/// strictly inside would stay finite in any extension of the patch.
inline GraphReport components_reach_boundary(const Patch& patch, const VertexGraph& graph,
                                             const CoverageOptions& opts = {}) {
  GraphReport rep;
  auto boundary = boundary_flags(patch, graph, opts);
  for (const auto& comp : graph.components()) {
    ComponentInfo info;
    info.size = comp.size();
    for (auto i : comp) info.boundary_nodes += boundary[i] ? 1 : 0;
    if (info.boundary_nodes == 0) rep.pass = false;
    rep.components.push_back(info);
  }
  return rep;
}

struct EdgeGap {
  std::size_t tile = 0;
  Vector edge_from, edge_to;  // the tile edge
  Vector gap_from, gap_to;    // portion not covered by other tiles' edges
};

/// Planar patches only. For each tile edge, the union of collinear
/// sub-segments of other tiles' edges must cover it, except along the boundary
/// of the convex hull of the patch.
inline std::vector<EdgeGap> edge_cover_check(const Patch& patch) {
  if (patch.dim() != 2) throw UnsupportedDim("edge covering is checked in the plane only");
  std::vector<EdgeGap> gaps;
  if (patch.empty()) return gaps;
  const Polytope hull = Polytope::from_vertices(patch.vertex_points());
  for (const auto& t : patch.tiles()) {
    for (const auto& [a, b] : edges(t.shape)) {
      const Vector e = b - a;
      const Scalar len2 = dot(e, e);
      std::vector<std::pair<Scalar, Scalar>> cover;
      for (auto other : patch.tiles_near_segment(a, b)) {
        if (other == t.id) continue;
        for (const auto& [c, d] : edges(patch.tile(other).shape)) {
          if (!cross2(e, c - a).is_zero() || !cross2(e, d - a).is_zero()) continue;
          Scalar tc = dot(c - a, e) / len2;
          Scalar td = dot(d - a, e) / len2;
          if (td < tc) std::swap(tc, td);
          if (tc < Scalar(0)) tc = 0;
          if (td > Scalar(1)) td = 1;
          if (tc < td) cover.emplace_back(tc, td);
        }
      }
      std::sort(cover.begin(), cover.end());
      auto report = [&](const Scalar& lo, const Scalar& hi) {
        Vector mid = a + e * ((lo + hi) / Scalar(2));
        if (hull.locate(mid) == Location::Boundary) return;
        gaps.push_back({t.id, a, b, a + e * lo, a + e * hi});
      };
      Scalar reach = 0;
      for (const auto& [lo, hi] : cover) {
        if (lo > reach) report(reach, lo);
        if (hi > reach) reach = hi;
      }
      if (reach < Scalar(1)) report(reach, Scalar(1));
    }
  }
  return gaps;
}

}  // namespace lonely
