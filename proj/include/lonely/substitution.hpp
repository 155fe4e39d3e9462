#pragma once

/**
 * @file substitution.hpp
 * @brief Self-similar tile substitutions: rule files, supertiles, the
 *        lattice criterion for finite local complexity, and two-tile
 *        constellation counting.
 *
 * A placement (target t, linear L, offset o) of prototile i stands for the
 * tile L T_t + o inside the inflated prototile lambda T_i. Substituting a tile
 * A T_j + b yields { A L T_t + A o + lambda b }, so the k-th supertile of T_i
 * covers lambda^k T_i with tiles at prototile scale.
 *
 * Rule file (JSON):
 *
 *     {
 *       "dim": 2,
 *       "radicand": 0,
 *       "factor": "2",
 *       "prototiles": [ { "name": "table", "vertices": [["0","0"], ...] } ],
 *       "substitution": {
 *         "table": [ { "target": "table", "matrix": ["1","0","0","1"], "offset": ["1","0"] } ]
 *       }
 *     }
 *
 * Matrices are row-major; every scalar is a string in Scalar text form.
 */

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "lonely/analysis.hpp"
#include "lonely/error.hpp"
#include "lonely/linalg.hpp"
#include "lonely/patch.hpp"
#include "lonely/polytope.hpp"

namespace lonely {

struct Placement {
  std::size_t target = 0;
  Matrix linear;
  Vector offset;
};

struct Prototile {
  std::string name;
  std::vector<Vector> listed;  // vertices as listed in the rule, after normalization
  Polytope shape;
  Vector shift;  // translation applied to put a vertex at the origin
};

struct SubstitutionRule {
  std::size_t dim = 2;
  std::uint32_t radicand = 0;
  Scalar factor;
  std::vector<Prototile> prototiles;
  std::vector<std::vector<Placement>> placements;  // per prototile

  bool factor_is_positive_integer() const { return factor.is_integer() && factor.sign() > 0; }

  std::size_t index_of(const std::string& name) const {
    for (std::size_t i = 0; i < prototiles.size(); ++i)
      if (prototiles[i].name == name) return i;
    throw std::out_of_range("no prototile named '" + name + "'");
  }
};

namespace detail {

using json = nlohmann::json;

inline Scalar scalar_at(const json& j, const std::string& path, std::uint32_t radicand) {
  if (!j.is_string()) throw SchemaError(path, "expected a scalar string");
  try {
    Scalar s = Scalar::parse(j.get<std::string>());
    if (s.radicand() != 0 && s.radicand() != radicand)
      throw SchemaError(path, "radicand " + std::to_string(s.radicand()) + " does not match the rule radicand");
    return s;
  } catch (const ParseError& e) {
    throw SchemaError(path, e.what());
  }
}

inline Vector vector_at(const json& j, const std::string& path, std::size_t dim, std::uint32_t radicand) {
  if (!j.is_array() || j.size() != dim)
    throw SchemaError(path, "expected an array of " + std::to_string(dim) + " scalars");
  Vector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = scalar_at(j[i], path + "/" + std::to_string(i), radicand);
  return v;
}

inline const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw SchemaError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + "/" + key, "missing field");
  return *it;
}

}  // namespace detail

/// Parse and validate a rule file. Each prototile lacking a vertex at the
/// origin is translated by minus its lexicographically smallest vertex, and
/// placement offsets are adjusted so the substitution is unchanged.
inline SubstitutionRule parse_rule(const std::string& text) {
  using detail::json;
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("input", e.what());
  }
  SubstitutionRule rule;
  const json& dim = detail::field(root, "dim", "");
  if (!dim.is_number_integer() || dim.get<long>() < 1 || dim.get<long>() > 3)
    throw SchemaError("/dim", "expected an integer in 1..3");
  rule.dim = dim.get<std::size_t>();
  const json& rad = detail::field(root, "radicand", "");
  if (!rad.is_number_integer() || rad.get<long>() < 0 || !is_valid_radicand(rad.get<std::uint32_t>()))
    throw SchemaError("/radicand", "expected 0 or a square-free integer >= 2");
  rule.radicand = rad.get<std::uint32_t>();
  rule.factor = detail::scalar_at(detail::field(root, "factor", ""), "/factor", rule.radicand);
  if (rule.factor.sign() <= 0) throw SchemaError("/factor", "inflation factor must be positive");

  const json& protos = detail::field(root, "prototiles", "");
  if (!protos.is_array() || protos.empty()) throw SchemaError("/prototiles", "expected a nonempty array");
  for (std::size_t i = 0; i < protos.size(); ++i) {
    std::string path = "/prototiles/" + std::to_string(i);
    Prototile p;
    const json& name = detail::field(protos[i], "name", path);
    if (!name.is_string() || name.get<std::string>().empty()) throw SchemaError(path + "/name", "expected a name");
    p.name = name.get<std::string>();
    for (const auto& q : rule.prototiles)
      if (q.name == p.name) throw SchemaError(path + "/name", "duplicate prototile name '" + p.name + "'");
    const json& verts = detail::field(protos[i], "vertices", path);
    if (!verts.is_array()) throw SchemaError(path + "/vertices", "expected an array");
    if (verts.empty()) throw NormalizationError("prototile '" + p.name + "' has no vertices");
    for (std::size_t k = 0; k < verts.size(); ++k)
      p.listed.push_back(detail::vector_at(verts[k], path + "/vertices/" + std::to_string(k), rule.dim, rule.radicand));
    try {
      p.shape = Polytope::from_vertices(p.listed);
    } catch (const Error& e) {
      throw SchemaError(path + "/vertices", e.what());
    }
    p.shift = Vector(rule.dim);
    if (!is_vertex(p.shape, Vector(rule.dim))) {
      p.shift = -*std::min_element(p.shape.vertices().begin(), p.shape.vertices().end());
      for (auto& v : p.listed) v += p.shift;
      p.shape = p.shape.translated(p.shift);
    }
    rule.prototiles.push_back(std::move(p));
  }

  const json& subst = detail::field(root, "substitution", "");
  if (!subst.is_object()) throw SchemaError("/substitution", "expected an object keyed by prototile name");
  rule.placements.resize(rule.prototiles.size());
  for (auto it = subst.begin(); it != subst.end(); ++it) {
    std::string path = "/substitution/" + it.key();
    std::size_t owner = 0;
    try {
      owner = rule.index_of(it.key());
    } catch (const std::out_of_range&) {
      throw SchemaError(path, "unknown prototile");
    }
    if (!it->is_array()) throw SchemaError(path, "expected an array of placements");
    for (std::size_t k = 0; k < it->size(); ++k) {
      std::string ppath = path + "/" + std::to_string(k);
      const json& pj = (*it)[k];
      Placement pl;
      const json& target = detail::field(pj, "target", ppath);
      if (target.is_string()) {
        try {
          pl.target = rule.index_of(target.get<std::string>());
        } catch (const std::out_of_range&) {
          throw SchemaError(ppath + "/target", "unknown prototile");
        }
      } else if (target.is_number_unsigned() && target.get<std::size_t>() < rule.prototiles.size()) {
        pl.target = target.get<std::size_t>();
      } else {
        throw SchemaError(ppath + "/target", "expected a prototile name or index");
      }
      const json& mat = detail::field(pj, "matrix", ppath);
      if (!mat.is_array() || mat.size() != rule.dim * rule.dim)
        throw SchemaError(ppath + "/matrix", "expected " + std::to_string(rule.dim * rule.dim) + " row-major scalars");
      pl.linear = Matrix(rule.dim, rule.dim);
      for (std::size_t e = 0; e < mat.size(); ++e)
        pl.linear(e / rule.dim, e % rule.dim) =
            detail::scalar_at(mat[e], ppath + "/matrix/" + std::to_string(e), rule.radicand);
      if (!pl.linear.is_orthogonal()) throw SchemaError(ppath + "/matrix", "linear part is not an isometry");
      pl.offset = detail::vector_at(detail::field(pj, "offset", ppath), ppath + "/offset", rule.dim, rule.radicand);
      // Compensate for the normalization shifts of both prototiles:
      // L (T_t' - c_t) + o = lambda (T_i' - c_i)  =>  o' = o - L c_t + lambda c_i.
      pl.offset = pl.offset - pl.linear * rule.prototiles[pl.target].shift + rule.prototiles[owner].shift * rule.factor;
      rule.placements[owner].push_back(std::move(pl));
    }
  }
  return rule;
}

inline SubstitutionRule load_rule(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open rule file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_rule(ss.str());
}

/// Canonical JSON form of a rule, with stable key order.
inline nlohmann::ordered_json rule_to_json(const SubstitutionRule& rule) {
  using oj = nlohmann::ordered_json;
  auto vec = [](const Vector& v) {
    oj a = oj::array();
    for (const auto& s : v) a.push_back(s.to_string());
    return a;
  };
  oj root;
  root["dim"] = rule.dim;
  root["radicand"] = rule.radicand;
  root["factor"] = rule.factor.to_string();
  root["prototiles"] = oj::array();
  for (const auto& p : rule.prototiles) {
    oj verts = oj::array();
    for (const auto& v : p.listed) verts.push_back(vec(v));
    root["prototiles"].push_back({{"name", p.name}, {"vertices", verts}});
  }
  oj subst = oj::object();
  for (std::size_t i = 0; i < rule.prototiles.size(); ++i) {
    oj list = oj::array();
    for (const auto& pl : rule.placements[i]) {
      oj m = oj::array();
      for (std::size_t r = 0; r < rule.dim; ++r)
        for (std::size_t c = 0; c < rule.dim; ++c) m.push_back(pl.linear(r, c).to_string());
      list.push_back({{"target", rule.prototiles[pl.target].name}, {"matrix", m}, {"offset", vec(pl.offset)}});
    }
    subst[rule.prototiles[i].name] = list;
  }
  root["substitution"] = subst;
  return root;
}

// ---------------------------------------------------------------------------

class SelfSimilarityError : public Error {
 public:
  enum class Kind { Containment, Overlap, AreaGap };

  SelfSimilarityError(Kind kind, std::size_t prototile, std::vector<std::size_t> placements, const std::string& what)
      : Error(what), kind_(kind), prototile_(prototile), placements_(std::move(placements)) {}

  Kind kind() const { return kind_; }
  std::size_t prototile() const { return prototile_; }
  const std::vector<std::size_t>& placements() const { return placements_; }

 private:
  Kind kind_;
  std::size_t prototile_;
  std::vector<std::size_t> placements_;
};

inline const char* to_string(SelfSimilarityError::Kind k) {
  switch (k) {
    case SelfSimilarityError::Kind::Containment: return "ContainmentError";
    case SelfSimilarityError::Kind::Overlap: return "OverlapError";
    case SelfSimilarityError::Kind::AreaGap: return "AreaGapError";
  }
  return "?";
}

inline Polytope placed_shape(const SubstitutionRule& rule, const Placement& pl) {
  return rule.prototiles[pl.target].shape.transformed(pl.linear, pl.offset);
}

struct AreaAudit {
  std::size_t prototile = 0;
  std::size_t pieces = 0;
  Scalar placed_area;
  Scalar inflated_area;
};

/// Certifies lambda T_i as the non-overlapping union of its placed tiles:
/// containment of every piece, pairwise interior-disjointness, and an exact
/// area balance. Throws SelfSimilarityError naming the first failure.
inline std::vector<AreaAudit> check_self_similar(const SubstitutionRule& rule) {
  if (rule.dim != 2) throw UnsupportedDim("self-similarity is audited in the plane only");
  std::vector<AreaAudit> audits;
  for (std::size_t i = 0; i < rule.prototiles.size(); ++i) {
    const auto& name = rule.prototiles[i].name;
    Polytope big = rule.prototiles[i].shape.scaled(rule.factor);
    std::vector<Polytope> pieces;
    for (std::size_t k = 0; k < rule.placements[i].size(); ++k) {
      Polytope piece = placed_shape(rule, rule.placements[i][k]);
      for (const auto& v : piece.vertices()) {
        if (big.locate(v) == Location::Outside)
          throw SelfSimilarityError(SelfSimilarityError::Kind::Containment, i, {k},
                                    "prototile '" + name + "': placement " + std::to_string(k) + " leaves the inflated tile");
      }
      pieces.push_back(std::move(piece));
    }
    for (std::size_t a = 0; a < pieces.size(); ++a)
      for (std::size_t b = a + 1; b < pieces.size(); ++b)
        if (interiors_intersect(pieces[a], pieces[b]))
          throw SelfSimilarityError(SelfSimilarityError::Kind::Overlap, i, {a, b},
                                    "prototile '" + name + "': placements " + std::to_string(a) + " and " +
                                        std::to_string(b) + " overlap");
    AreaAudit audit{i, pieces.size(), Scalar(0), area2(big)};
    for (const auto& p : pieces) audit.placed_area += area2(p);
    if (audit.placed_area != audit.inflated_area)
      throw SelfSimilarityError(SelfSimilarityError::Kind::AreaGap, i, {},
                                "prototile '" + name + "': placed area " + audit.placed_area.to_string() +
                                    " != inflated area " + audit.inflated_area.to_string());
    audits.push_back(std::move(audit));
  }
  return audits;
}

// ---------------------------------------------------------------------------

struct PlacedTile {
  std::size_t prototile = 0;
  Matrix linear;
  Vector offset;
};

struct Supertile {
  std::size_t order = 0;
  std::size_t root = 0;
  Scalar scale = 1;  // lambda^order
  std::vector<PlacedTile> tiles;

  std::vector<Polytope> shapes(const SubstitutionRule& rule) const {
    std::vector<Polytope> out;
    out.reserve(tiles.size());
    for (const auto& t : tiles) out.push_back(rule.prototiles[t.prototile].shape.transformed(t.linear, t.offset));
    return out;
  }
};

/// sigma^k(T_i) by iterated expansion; tile order is deterministic.
inline Supertile expand_supertile(const SubstitutionRule& rule, std::size_t root, std::size_t order) {
  if (root >= rule.prototiles.size()) throw std::out_of_range("prototile index out of range");
  Supertile s;
  s.root = root;
  s.tiles.push_back({root, Matrix::identity(rule.dim), Vector(rule.dim)});
  for (std::size_t k = 0; k < order; ++k) {
    std::vector<PlacedTile> next;
    for (const auto& t : s.tiles) {
      Vector base = t.offset * rule.factor;
      for (const auto& pl : rule.placements[t.prototile]) {
        next.push_back({pl.target, t.linear * pl.linear, t.linear * pl.offset + base});
      }
    }
    s.tiles = std::move(next);
    s.scale *= rule.factor;
  }
  s.order = order;
  return s;
}

inline Patch supertile(const SubstitutionRule& rule, std::size_t root, std::size_t order) {
  return build_patch(expand_supertile(rule, root, order).shapes(rule), rule.dim);
}

// ---------------------------------------------------------------------------

enum class FlcStatus { Certified, Inconclusive };

inline const char* to_string(FlcStatus s) { return s == FlcStatus::Certified ? "certified" : "inconclusive"; }

struct FlcVerdict {
  FlcStatus status = FlcStatus::Inconclusive;
  ZSpanRank ranks;
  std::optional<std::vector<Vector>> basis;  // HNF basis when the lattice is rational
};

/// Linear parts under which each prototile occurs in the supertiles of any
/// prototile: the closure of {I} under composition with placement matrices.
/// Returns nullopt when a class exceeds `cap` (an infinite rotation group).
inline std::optional<std::vector<std::vector<Matrix>>> orientation_classes(const SubstitutionRule& rule,
                                                                            std::size_t cap = 512) {
  std::vector<std::vector<Matrix>> seen(rule.prototiles.size());
  std::vector<std::pair<std::size_t, Matrix>> todo;
  auto visit = [&](std::size_t t, Matrix m) {
    auto& list = seen[t];
    if (std::find(list.begin(), list.end(), m) != list.end()) return true;
    if (list.size() >= cap) return false;
    list.push_back(m);
    todo.emplace_back(t, std::move(m));
    return true;
  };
  for (std::size_t i = 0; i < rule.prototiles.size(); ++i) visit(i, Matrix::identity(rule.dim));
  while (!todo.empty()) {
    auto [t, m] = std::move(todo.back());
    todo.pop_back();
    for (const auto& pl : rule.placements[t])
      if (!visit(pl.target, m * pl.linear)) return std::nullopt;
  }
  return seen;
}

/// Vertices of every prototile in every orientation it takes in the tiling,
/// i.e. of the prototiles up to translation. Nullopt for infinitely many
/// orientations.
inline std::optional<std::vector<Vector>> prototile_vertices(const SubstitutionRule& rule) {
  auto classes = orientation_classes(rule);
  if (!classes) return std::nullopt;
  std::set<Vector> out;
  for (std::size_t i = 0; i < rule.prototiles.size(); ++i)
    for (const auto& m : (*classes)[i])
      for (const auto& v : rule.prototiles[i].shape.vertices()) out.insert(m * v);
  return std::vector<Vector>(out.begin(), out.end());
}

/// Integer factor and a discrete Z-span of the prototile vertices imply finite
/// local complexity. A dense span proves nothing, hence Inconclusive.
inline FlcVerdict flc_criterion(const SubstitutionRule& rule) {
  if (!rule.factor_is_positive_integer())
    throw NonIntegerFactor("inflation factor " + rule.factor.to_string() + " is not a positive integer");
  auto verts = prototile_vertices(rule);
  FlcVerdict v;
  if (!verts) return v;  // infinitely many orientations: no finite generating set
  v.ranks = zspan_rank(*verts);
  if (v.ranks.z_rank != v.ranks.r_dim) return v;
  v.status = FlcStatus::Certified;
  bool rational = std::all_of(verts->begin(), verts->end(), [](const Vector& x) { return x.is_rational(); });
  if (rational) v.basis = hnf_lattice_basis(*verts);
  return v;
}

/// Tile vertices (over all given tiles) that are not lattice points.
inline std::vector<Vector> lattice_outliers(std::span<const Polytope> tiles, const Lattice& lattice) {
  std::set<Vector> out;
  for (const auto& t : tiles)
    for (const auto& v : t.vertices())
      if (!lattice.contains(v)) out.insert(v);
  return {out.begin(), out.end()};
}

struct LatticeAuditEntry {
  std::size_t root = 0;
  std::size_t tiles = 0;
  std::size_t vertices = 0;
  std::vector<Vector> outliers;
  std::size_t components = 0;
};

struct LatticeAudit {
  std::vector<LatticeAuditEntry> entries;
  bool pass() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const LatticeAuditEntry& e) { return e.outliers.empty() && e.components == 1; });
  }
};

/// Every tile vertex of every k-th supertile lies in the prototile-vertex
/// lattice, and all of them are joined by the vertex-edge graph.
inline LatticeAudit vertex_lattice_audit(const SubstitutionRule& rule, std::size_t order) {
  if (flc_criterion(rule).status != FlcStatus::Certified)
    throw Error("vertex lattice audit needs a rule certified by the lattice criterion");
  Lattice lattice(*prototile_vertices(rule));
  LatticeAudit audit;
  for (std::size_t i = 0; i < rule.prototiles.size(); ++i) {
    Patch patch = supertile(rule, i, order);
    auto shapes = patch.shapes();
    LatticeAuditEntry e;
    e.root = i;
    e.tiles = patch.size();
    e.vertices = patch.vertex_points().size();
    e.outliers = lattice_outliers(shapes, lattice);
    e.components = build_graph(patch).components().size();
    audit.entries.push_back(std::move(e));
  }
  return audit;
}

// ---------------------------------------------------------------------------

using Constellation = std::pair<std::vector<Vector>, std::vector<Vector>>;

/// Translation class of an intersecting pair: both vertex lists sorted,
/// shifted so the smallest vertex of the pair sits at the origin, the two
/// lists ordered.
inline Constellation canonical_pair(const Polytope& p, const Polytope& q) {
  std::vector<Vector> a = p.vertices(), b = q.vertices();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  Vector base = std::min(a.front(), b.front());
  for (auto& v : a) v -= base;
  for (auto& v : b) v -= base;
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

inline void collect_pair_constellations(const Patch& patch, std::set<Constellation>& out) {
  for (const auto& [i, j] : patch.candidate_pairs()) {
    const auto& p = patch.tile(i).shape;
    const auto& q = patch.tile(j).shape;
    if (intersects(p, q)) out.insert(canonical_pair(p, q));
  }
}

inline std::size_t count_pair_constellations(const Patch& patch) {
  std::set<Constellation> classes;
  collect_pair_constellations(patch, classes);
  return classes.size();
}

/// Distinct two-tile constellations, up to translation, in the supertiles of
/// each order 0..max_order (union over all prototiles at that order).
inline std::vector<std::size_t> enumerate_pair_constellations(const SubstitutionRule& rule, std::size_t max_order) {
  std::vector<std::size_t> counts;
  for (std::size_t k = 0; k <= max_order; ++k) {
    std::set<Constellation> classes;
    for (std::size_t i = 0; i < rule.prototiles.size(); ++i) collect_pair_constellations(supertile(rule, i, k), classes);
    counts.push_back(classes.size());
  }
  return counts;
}

}  // namespace lonely
