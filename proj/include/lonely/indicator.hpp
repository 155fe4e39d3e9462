#pragma once

// Signed combinations of cone indicators, evaluated at directions. Boundary
// directions are a null set and never sampled.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "lonely/cone.hpp"
#include "lonely/error.hpp"
#include "lonely/star.hpp"

namespace lonely {

struct IndicatorTerm {
  Scalar coefficient;
  Cone cone;
};

class IndicatorCombo {
 public:
  IndicatorCombo() = default;
  explicit IndicatorCombo(std::size_t dim) : dim_(dim) {}

  IndicatorCombo& add(Scalar coefficient, Cone cone) {
    if (terms_.empty() && dim_ == 0) dim_ = cone.dim();
    if (cone.dim() != dim_) throw std::invalid_argument("indicator terms differ in dimension");
    terms_.push_back({std::move(coefficient), std::move(cone)});
    return *this;
  }

  std::size_t dim() const { return dim_; }
  const std::vector<IndicatorTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  // Concatenation: evaluates to the sum of both combos.
  friend IndicatorCombo operator+(IndicatorCombo a, const IndicatorCombo& b) {
    for (const auto& t : b.terms_) a.add(t.coefficient, t.cone);
    return a;
  }

  bool is_tight(const Vector& v) const {
    for (const auto& t : terms_)
      if (t.cone.is_tight(v)) return true;
    return false;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<IndicatorTerm> terms_;
};

/// Sum of the coefficients of cones whose interior contains the direction.
inline Scalar eval(const IndicatorCombo& combo, const Vector& direction) {
  if (direction.is_zero()) throw ZeroDirection("indicator evaluated at the zero direction");
  Scalar s;
  for (const auto& t : combo.terms()) {
    if (t.cone.contains_interior(direction)) s += t.coefficient;
  }
  return s;
}

struct ZeroTest {
  bool zero = true;
  std::optional<Vector> witness;
  Scalar value;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// Evaluate at pseudo-random integer directions that avoid every cone
/// boundary; the first nonzero value is returned as a witness. Samples are
/// drawn in fixed-size chunks, each from a generator seeded off (seed, chunk
/// index), so ranges can be split across workers without changing results.
inline ZeroTest monte_carlo_zero(const IndicatorCombo& combo, std::size_t samples, std::uint64_t seed,
                                 std::size_t chunk = 1024) {
  if (samples == 0) throw std::invalid_argument("monte_carlo_zero needs at least one sample");
  ZeroTest out;
  out.samples = samples;
  out.seed = seed;
  if (combo.empty()) return out;
  const std::size_t n = combo.dim();
  std::size_t done = 0;
  for (std::uint64_t c = 0; done < samples; ++c) {
    std::mt19937_64 rng(detail::splitmix64(seed ^ detail::splitmix64(c)));
    std::size_t todo = std::min(chunk, samples - done);
    for (std::size_t s = 0; s < todo; ++s) {
      Vector v = random_direction(rng, n);
      while (combo.is_tight(v)) v = random_direction(rng, n);
      Scalar value = eval(combo, v);
      if (!value.is_zero()) {
        out.zero = false;
        out.witness = std::move(v);
        out.value = std::move(value);
        return out;
      }
    }
    done += todo;
  }
  return out;
}

/// sum_i I_{cone_i} - I_{H+} - I_{H-} for the two halfspaces bounded by the
/// splitting hyperplane. Vanishes off boundaries whenever the star partitions
/// all directions.
inline IndicatorCombo hemisphere_identity(const VertexStar& star, const Vector& splitting_normal) {
  if (!star.complete) throw IncompleteStar("star at " + star.center.to_string() + " is not complete");
  if (splitting_normal.is_zero()) throw ZeroDirection("splitting normal is zero");
  IndicatorCombo combo(splitting_normal.dim());
  for (const auto& e : star.entries) combo.add(Scalar(1), e.cone);
  combo.add(Scalar(-1), Cone::halfspace(splitting_normal));
  combo.add(Scalar(-1), Cone::halfspace(-splitting_normal));
  return combo;
}

inline std::string format_zero_test(const ZeroTest& t) {
  std::string out = "samples=" + std::to_string(t.samples) + " seed=" + std::to_string(t.seed);
  if (t.zero) return out + " result=zero";
  return out + " result=witness direction=" + t.witness->to_string() + " value=" + t.value.to_string();
}

}  // namespace lonely
