#pragma once

/**
 * @file cone.hpp
 * @brief Polyhedral cones {v : n_i . v >= 0} with apex at the origin.
 *
 * A cone is A-type when it is pointed (contains no line) and B-type otherwise.
 * The lineality space of {v : N v >= 0} is exactly ker N, so the type is
 * decided by rank(N) alone.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "lonely/error.hpp"
#include "lonely/feasibility.hpp"
#include "lonely/linalg.hpp"

namespace lonely {

enum class ConeType { A, B };

inline const char* to_string(ConeType t) { return t == ConeType::A ? "A" : "B"; }

class Cone {
 public:
  Cone() = default;

  // Normals are rescaled to canonical direction, deduplicated, and pruned of
  // rows implied by the others.
  Cone(std::size_t dim, std::vector<Vector> normals) : dim_(dim) {
    std::set<Vector> seen;
    for (auto& n : normals) {
      if (n.dim() != dim) throw std::invalid_argument("cone normal has wrong dimension");
      if (n.is_zero()) continue;
      Vector c = canonical_direction(std::move(n));
      if (seen.insert(c).second) normals_.push_back(std::move(c));
    }
    if (normals_.size() > 1) prune_redundant();
  }

  static Cone full(std::size_t dim) { return Cone(dim, {}); }
  static Cone halfspace(Vector normal) {
    std::size_t d = normal.dim();
    return Cone(d, {std::move(normal)});
  }

  std::size_t dim() const { return dim_; }
  const std::vector<Vector>& normals() const { return normals_; }
  std::size_t rank() const { return lonely::rank(std::span<const Vector>(normals_)); }
  std::size_t lineality_dim() const { return dim_ - rank(); }

  bool contains(const Vector& v) const {
    return std::all_of(normals_.begin(), normals_.end(),
                       [&](const Vector& n) { return dot(n, v).sign() >= 0; });
  }

  bool contains_interior(const Vector& v) const {
    return std::all_of(normals_.begin(), normals_.end(),
                       [&](const Vector& n) { return dot(n, v).sign() > 0; });
  }

  // True when v lies on one of the bounding hyperplanes.
  bool is_tight(const Vector& v) const {
    return std::any_of(normals_.begin(), normals_.end(),
                       [&](const Vector& n) { return dot(n, v).is_zero(); });
  }

  friend bool operator==(const Cone& a, const Cone& b) {
    if (a.dim_ != b.dim_) return false;
    std::vector<Vector> x = a.normals_, y = b.normals_;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    return x == y;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < normals_.size(); ++i) {
      if (i) out += " ";
      out += normals_[i].to_string();
    }
    return out;
  }

 private:
  // n_j is redundant iff no v satisfies the other rows with n_j . v < 0.
  void prune_redundant() {
    for (std::size_t j = 0; j < normals_.size();) {
      std::vector<Inequality> rows;
      for (std::size_t i = 0; i < normals_.size(); ++i) {
        if (i != j) rows.push_back({normals_[i], Scalar(0), false});
      }
      rows.push_back({-normals_[j], Scalar(0), true});
      if (feasible(std::move(rows))) {
        ++j;
      } else {
        normals_.erase(normals_.begin() + static_cast<std::ptrdiff_t>(j));
      }
    }
  }

  std::size_t dim_ = 0;
  std::vector<Vector> normals_;
};

inline ConeType classify(const Cone& c) { return c.rank() == c.dim() ? ConeType::A : ConeType::B; }

namespace detail {

inline Vector perp(const Vector& v) { return Vector{-v[1], v[0]}; }

// Nonzero generator of the line cut out by n-1 normals, if they are independent.
inline std::optional<Vector> line_of(std::span<const Vector> normals, std::size_t dim) {
  if (dim == 2) {
    if (normals[0].is_zero()) return std::nullopt;
    return perp(normals[0]);
  }
  Vector c = cross(normals[0], normals[1]);
  if (c.is_zero()) return std::nullopt;
  return c;
}

}  // namespace detail

/// Canonical representatives of the cone's one-dimensional faces. A line of
/// lineality (halfplane in the plane, wedge in space) contributes both of its
/// directions. Result is sorted and free of duplicates.
inline std::vector<Vector> extreme_rays(const Cone& c) {
  const std::size_t n = c.dim();
  if (n != 2 && n != 3) throw UnsupportedDim("extreme rays need dimension 2 or 3");
  const auto& normals = c.normals();
  const std::size_t r = c.rank();
  std::set<Vector> rays;
  if (r + 1 < n) return {};
  auto consider = [&](const Vector& u) {
    bool fwd = c.contains(u);
    bool back = c.contains(-u);
    if (fwd && back) {
      // Both directions feasible: u spans the lineality space.
      if (r == n - 1) {
        rays.insert(canonical_direction(u));
        rays.insert(canonical_direction(-u));
      }
    } else if (fwd) {
      rays.insert(canonical_direction(u));
    } else if (back) {
      rays.insert(canonical_direction(-u));
    }
  };
  if (n == 2) {
    for (const auto& nv : normals) consider(detail::perp(nv));
  } else {
    for (std::size_t i = 0; i < normals.size(); ++i)
      for (std::size_t j = i + 1; j < normals.size(); ++j) {
        std::vector<Vector> pair{normals[i], normals[j]};
        if (auto u = detail::line_of(pair, 3)) consider(*u);
      }
  }
  return {rays.begin(), rays.end()};
}

/// Image of the cone under an invertible linear map A: {A v : N v >= 0}.
inline Cone transform(const Cone& c, const Matrix& a) {
  Matrix inv = inverse(a);
  std::vector<Vector> normals;
  Matrix inv_t = inv.transpose();
  for (const auto& n : c.normals()) normals.push_back(inv_t * n);
  return Cone(c.dim(), std::move(normals));
}

/// The cone C cut by the hyperplane {v : h . v = 0}, expressed in coordinates
/// of a basis of that hyperplane.
inline Cone restrict_to_hyperplane(const Cone& c, const Vector& h) {
  if (h.is_zero()) throw ZeroDirection("hyperplane normal is zero");
  std::vector<Vector> hs{h};
  std::vector<Vector> basis = null_space(hs, c.dim());
  std::vector<Vector> normals;
  for (const auto& n : c.normals()) {
    Vector r(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) r[i] = dot(n, basis[i]);
    normals.push_back(std::move(r));
  }
  return Cone(basis.size(), std::move(normals));
}

namespace detail {

// Counter-clockwise angular order starting at the positive x-axis.
inline bool angle_less(const Vector& a, const Vector& b) {
  auto half = [](const Vector& v) {
    int sy = v[1].sign();
    return (sy > 0 || (sy == 0 && v[0].sign() > 0)) ? 0 : 1;
  };
  int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return cross2(a, b).sign() > 0;
}

inline bool same_direction(const Vector& a, const Vector& b) {
  return cross2(a, b).is_zero() && dot(a, b).sign() > 0;
}

// Representative direction strictly inside the open ccw arc from u to w.
inline Vector arc_midpoint(const Vector& u, const Vector& w) {
  int s = cross2(u, w).sign();
  if (s > 0) return u + w;
  if (s < 0) return -(u + w);
  return perp(u);  // antipodal pair: half-turn arc
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Nonzero integer direction with coordinates uniform in [-bound, bound].
template <class Rng>
Vector random_direction(Rng& rng, std::size_t dim, long bound = 1000000) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  while (true) {
    Vector v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = dist(rng);
    if (!v.is_zero()) return v;
  }
}

struct CoverageOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 20090101;
};

/// Do the cones tile all directions (interiors disjoint, union everything)?
/// Exact sector walk in the plane; Monte Carlo over boundary-avoiding
/// directions in space.
inline bool coverage(std::span<const Cone> cones, const CoverageOptions& opts = {}) {
  if (cones.empty()) return false;
  const std::size_t n = cones.front().dim();
  for (const auto& c : cones) {
    if (c.dim() != n) throw std::invalid_argument("cones differ in dimension");
  }
  auto covered_once = [&](const Vector& v) {
    std::size_t hits = 0;
    for (const auto& c : cones) {
      if (c.contains_interior(v) && ++hits > 1) return false;
    }
    return hits == 1;
  };
  if (n == 2) {
    std::vector<Vector> dirs;
    for (const auto& c : cones)
      for (const auto& nv : c.normals()) {
        Vector p = detail::perp(nv);
        dirs.push_back(p);
        dirs.push_back(-p);
      }
    std::sort(dirs.begin(), dirs.end(), detail::angle_less);
    std::vector<Vector> unique;
    for (auto& d : dirs) {
      if (unique.empty() || !detail::same_direction(unique.back(), d)) unique.push_back(std::move(d));
    }
    if (unique.size() > 1 && detail::same_direction(unique.front(), unique.back())) unique.pop_back();
    if (unique.empty()) return covered_once(Vector{1, 0});
    if (unique.size() == 1) return covered_once(-unique.front());
    for (std::size_t i = 0; i < unique.size(); ++i) {
      const Vector& u = unique[i];
      const Vector& w = unique[(i + 1) % unique.size()];
      if (!covered_once(detail::arc_midpoint(u, w))) return false;
    }
    return true;
  }
  if (n == 3) {
    std::mt19937_64 rng(opts.seed);
    for (std::size_t s = 0; s < opts.samples; ++s) {
      Vector v = random_direction(rng, 3);
      while (std::any_of(cones.begin(), cones.end(), [&](const Cone& c) { return c.is_tight(v); })) {
        v = random_direction(rng, 3);
      }
      if (!covered_once(v)) return false;
    }
    return true;
  }
  throw UnsupportedDim("coverage needs dimension 2 or 3");
}

}  // namespace lonely
