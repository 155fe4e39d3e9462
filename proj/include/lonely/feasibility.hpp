#pragma once

// Exact feasibility of mixed strict / non-strict linear inequality systems by
// Fourier-Motzkin elimination. Intended for desk-scale systems (a handful of
// variables, a few dozen rows).

#include <algorithm>
#include <cstddef>
#include <set>
#include <vector>

#include "lonely/linalg.hpp"

namespace lonely {

// coef . x > rhs when strict, coef . x >= rhs otherwise.
struct Inequality {
  Vector coef;
  Scalar rhs;
  bool strict = false;
};

namespace detail {

inline Inequality normalized(Inequality q) {
  for (std::size_t i = 0; i < q.coef.dim(); ++i) {
    if (!q.coef[i].is_zero()) {
      Scalar s = abs(q.coef[i]);
      if (s != Scalar(1)) {
        q.coef *= Scalar(1) / s;
        q.rhs /= s;
      }
      break;
    }
  }
  return q;
}

struct InequalityKey {
  const Inequality* q;
  bool operator<(const InequalityKey& o) const {
    if (auto c = q->coef <=> o.q->coef; c != 0) return c < 0;
    if (auto c = q->rhs <=> o.q->rhs; c != 0) return c < 0;
    return q->strict < o.q->strict;
  }
};

inline void dedupe(std::vector<Inequality>& rows) {
  std::vector<Inequality> out;
  std::set<InequalityKey> seen;
  out.reserve(rows.size());
  for (auto& r : rows) out.push_back(normalized(std::move(r)));
  std::vector<Inequality> unique;
  for (auto& r : out) {
    if (seen.insert(InequalityKey{&r}).second) unique.push_back(r);
  }
  rows = std::move(unique);
}

}  // namespace detail

inline bool feasible(std::vector<Inequality> rows) {
  if (rows.empty()) return true;
  const std::size_t n = rows.front().coef.dim();
  for (std::size_t var = 0; var < n; ++var) {
    detail::dedupe(rows);
    std::vector<Inequality> pos, neg, next;
    for (auto& r : rows) {
      int s = r.coef[var].sign();
      if (s > 0) pos.push_back(std::move(r));
      else if (s < 0) neg.push_back(std::move(r));
      else next.push_back(std::move(r));
    }
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        // Scale both so the eliminated coefficients cancel.
        Scalar a = p.coef[var];
        Scalar b = -q.coef[var];
        Inequality c{p.coef * b + q.coef * a, p.rhs * b + q.rhs * a, p.strict || q.strict};
        c.coef[var] = 0;
        next.push_back(std::move(c));
      }
    }
    rows = std::move(next);
    if (rows.empty()) return true;
  }
  for (const auto& r : rows) {
    int s = r.rhs.sign();
    if (r.strict ? s >= 0 : s > 0) return false;
  }
  return true;
}

}  // namespace lonely
