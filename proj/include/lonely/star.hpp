#pragma once

/**
 * @file star.hpp
 * @brief Vertex stars: the tangent cones of every tile containing a point.
 *
 * A star is complete when its cones tile all directions around the centre,
 * i.e. the centre is surrounded by the patch. Because tangent cones are exact,
 * no small-sphere radius has to be chosen.
 */

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "lonely/cone.hpp"
#include "lonely/patch.hpp"

namespace lonely {

struct StarEntry {
  std::size_t tile_id = 0;
  Cone cone;
  ConeType type = ConeType::B;
};

struct VertexStar {
  Vector center;
  std::vector<StarEntry> entries;
  bool complete = false;

  std::size_t a_count() const {
    return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(),
                                                  [](const StarEntry& e) { return e.type == ConeType::A; }));
  }

  std::vector<Cone> cones() const {
    std::vector<Cone> out;
    for (const auto& e : entries) out.push_back(e.cone);
    return out;
  }
};

inline VertexStar build_star(const Patch& patch, const Vector& x, const CoverageOptions& opts = {}) {
  VertexStar star;
  star.center = x;
  for (auto id : patch.tiles_containing(x)) {
    Cone c = tangent_cone(patch.tile(id).shape, x);
    ConeType t = classify(c);
    star.entries.push_back({id, std::move(c), t});
  }
  if (star.entries.empty()) throw OutsideSupport("point " + x.to_string() + " is not covered by the patch");
  auto cones = star.cones();
  star.complete = coverage(cones, opts);
  return star;
}

// Star assembled from bare cones (tile ids are positions).
inline VertexStar make_star(Vector center, std::vector<Cone> cones, const CoverageOptions& opts = {}) {
  VertexStar star;
  star.center = std::move(center);
  for (std::size_t i = 0; i < cones.size(); ++i) {
    ConeType t = classify(cones[i]);
    star.entries.push_back({i, std::move(cones[i]), t});
  }
  auto cs = star.cones();
  star.complete = !cs.empty() && coverage(cs, opts);
  return star;
}

enum class AntipodalStatus { Success, Failure, PreconditionViolated };

inline const char* to_string(AntipodalStatus s) {
  switch (s) {
    case AntipodalStatus::Success: return "success";
    case AntipodalStatus::Failure: return "failure";
    case AntipodalStatus::PreconditionViolated: return "precondition-violated";
  }
  return "?";
}

struct RayPairing {
  Vector ray;      // from the first A-type cone
  Vector partner;  // from the second A-type cone
  int sign = 1;    // ray == sign * partner
};

struct AntipodalReport {
  AntipodalStatus status = AntipodalStatus::PreconditionViolated;
  std::string reason;
  std::vector<RayPairing> pairings;
  std::vector<Vector> unmatched;
};

/// With exactly two A-type cones in a complete star, every extreme ray of one
/// must be an extreme ray of the other or the negation of one.
inline AntipodalReport check_two_atype_antipodal(const VertexStar& star) {
  AntipodalReport rep;
  if (!star.complete) {
    rep.reason = "star is not complete";
    return rep;
  }
  if (star.a_count() != 2) {
    rep.reason = "star has " + std::to_string(star.a_count()) + " A-type cones, need 2";
    return rep;
  }
  std::vector<const Cone*> a;
  for (const auto& e : star.entries)
    if (e.type == ConeType::A) a.push_back(&e.cone);
  auto r1 = extreme_rays(*a[0]);
  auto r2 = extreme_rays(*a[1]);
  auto match = [&](const std::vector<Vector>& from, const std::vector<Vector>& to, bool record) {
    for (const auto& r : from) {
      Vector neg = canonical_direction(-r);
      if (auto it = std::find(to.begin(), to.end(), r); it != to.end()) {
        if (record) rep.pairings.push_back({r, *it, 1});
      } else if (auto jt = std::find(to.begin(), to.end(), neg); jt != to.end()) {
        if (record) rep.pairings.push_back({r, *jt, -1});
      } else {
        rep.unmatched.push_back(r);
      }
    }
  };
  match(r1, r2, true);
  match(r2, r1, false);
  rep.status = rep.unmatched.empty() ? AntipodalStatus::Success : AntipodalStatus::Failure;
  return rep;
}

/// Line-oriented report: a header line, then one line per cone with tile id,
/// type tag and normals.
inline std::string format_star(const VertexStar& star) {
  std::string out = "star center=" + star.center.to_string() + " complete=" + (star.complete ? "true" : "false") +
                    " a_count=" + std::to_string(star.a_count()) + "\n";
  for (const auto& e : star.entries) {
    out += "cone tile=" + std::to_string(e.tile_id) + " type=" + to_string(e.type) + " normals=[" +
           e.cone.to_string() + "]\n";
  }
  return out;
}

}  // namespace lonely
