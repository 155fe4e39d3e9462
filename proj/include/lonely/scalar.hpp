#pragma once

/**
 * @file scalar.hpp
 * @brief Exact numbers a + b*sqrt(d) over a real quadratic extension of Q.
 *
 * Rational parts are GMP rationals, always in lowest terms. The radicand d is
 * square-free and at least 2; a value with zero radical part carries d = 0 and
 * combines freely with any radicand. Mixing two different nonzero radicands is
 * a domain error.
 *
 * Text form: "p", "p/q", "p/q+r/s*sqrt(d)" or "p/q-r/s*sqrt(d)" with an
 * optional leading sign. Emission is canonical, so canonical input round-trips
 * byte for byte.
 */

#include <gmpxx.h>

#include <cmath>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <ostream>
#include <regex>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lonely/error.hpp"

namespace lonely {

inline bool is_valid_radicand(std::uint32_t d) {
  if (d == 0) return true;
  if (d == 1) return false;
  for (std::uint32_t p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

class Scalar {
 public:
  Scalar() = default;

  template <std::integral T>
  Scalar(T value) : rational_(static_cast<long>(value)) {}  // NOLINT(implicit)

  explicit Scalar(mpq_class rational) : rational_(std::move(rational)) { rational_.canonicalize(); }

  Scalar(mpq_class rational, mpq_class radical, std::uint32_t radicand)
      : rational_(std::move(rational)), radical_(std::move(radical)), radicand_(radicand) {
    if (!is_valid_radicand(radicand)) {
      throw std::domain_error("radicand " + std::to_string(radicand) + " is not square-free");
    }
    if (radicand == 0 && sgn(radical_) != 0) {
      throw std::domain_error("nonzero radical part requires a radicand");
    }
    rational_.canonicalize();
    radical_.canonicalize();
    normalize();
  }

  static Scalar fraction(long num, long den) { return Scalar(mpq_class(num, den)); }

  // sqrt(d) itself.
  static Scalar sqrt_of(std::uint32_t d) { return Scalar(0, 1, d); }

  static Scalar parse(std::string_view text);

  const mpq_class& rational_part() const { return rational_; }
  const mpq_class& radical_part() const { return radical_; }
  std::uint32_t radicand() const { return radicand_; }

  bool is_rational() const { return radicand_ == 0; }
  bool is_zero() const { return radicand_ == 0 && sgn(rational_) == 0; }
  bool is_integer() const { return is_rational() && rational_.get_den() == 1; }

  // Exact sign of the real number, by case analysis on the signs of both parts
  // and a comparison of a^2 against b^2 d.
  int sign() const {
    int sa = sgn(rational_);
    if (radicand_ == 0) return sa;
    int sb = sgn(radical_);
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    mpq_class lhs = rational_ * rational_;
    mpq_class rhs = radical_ * radical_ * radicand_;
    return cmp(lhs, rhs) > 0 ? sa : sb;
  }

  double to_double() const {
    double v = rational_.get_d();
    if (radicand_ != 0) v += radical_.get_d() * std::sqrt(static_cast<double>(radicand_));
    return v;
  }

  std::string to_string() const {
    std::string out = rational_.get_str();
    if (radicand_ != 0) {
      out += sgn(radical_) > 0 ? "+" : "-";
      mpq_class mag = abs(radical_);
      out += mag.get_str();
      out += "*sqrt(" + std::to_string(radicand_) + ")";
    }
    return out;
  }

  Scalar operator-() const {
    Scalar r = *this;
    r.rational_ = -r.rational_;
    r.radical_ = -r.radical_;
    return r;
  }

  Scalar& operator+=(const Scalar& rhs) {
    std::uint32_t d = common_radicand(rhs);
    rational_ += rhs.rational_;
    if (rhs.radicand_ != 0) radical_ += rhs.radical_;
    radicand_ = d;
    normalize();
    return *this;
  }

  Scalar& operator-=(const Scalar& rhs) {
    std::uint32_t d = common_radicand(rhs);
    rational_ -= rhs.rational_;
    if (rhs.radicand_ != 0) radical_ -= rhs.radical_;
    radicand_ = d;
    normalize();
    return *this;
  }

  Scalar& operator*=(const Scalar& rhs) {
    if (radicand_ == 0 && rhs.radicand_ == 0) {
      rational_ *= rhs.rational_;
      return *this;
    }
    std::uint32_t d = common_radicand(rhs);
    // (a + b r)(c + e r) = ac + be d + (ae + bc) r
    mpq_class a = rational_ * rhs.rational_ + radical_ * rhs.radical_ * d;
    mpq_class b = rational_ * rhs.radical_ + radical_ * rhs.rational_;
    rational_ = std::move(a);
    radical_ = std::move(b);
    radicand_ = d;
    normalize();
    return *this;
  }

  Scalar& operator/=(const Scalar& rhs) {
    if (rhs.is_zero()) throw std::domain_error("division by zero");
    if (rhs.radicand_ == 0) {
      rational_ /= rhs.rational_;
      radical_ /= rhs.rational_;
      return *this;
    }
    // 1 / (c + e r) = (c - e r) / (c^2 - e^2 d); the norm is nonzero because d
    // is not a perfect square.
    mpq_class norm = rhs.rational_ * rhs.rational_ - rhs.radical_ * rhs.radical_ * rhs.radicand_;
    Scalar conj(rhs.rational_ / norm, -rhs.radical_ / norm, rhs.radicand_);
    return *this *= conj;
  }

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

  friend bool operator==(const Scalar& x, const Scalar& y) {
    return x.radicand_ == y.radicand_ && x.rational_ == y.rational_ && x.radical_ == y.radical_;
  }

  // Real-number order.
  friend std::strong_ordering operator<=>(const Scalar& x, const Scalar& y) {
    if (x.radicand_ == 0 && y.radicand_ == 0) {
      int c = cmp(x.rational_, y.rational_);
      return c < 0 ? std::strong_ordering::less
                   : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

 private:
  std::uint32_t common_radicand(const Scalar& rhs) const {
    if (radicand_ == 0) return rhs.radicand_;
    if (rhs.radicand_ == 0 || rhs.radicand_ == radicand_) return radicand_;
    throw std::domain_error("mixed radicands " + std::to_string(radicand_) + " and " +
                            std::to_string(rhs.radicand_));
  }

  void normalize() {
    if (radicand_ != 0 && sgn(radical_) == 0) radicand_ = 0;
  }

  mpq_class rational_{0};
  mpq_class radical_{0};
  std::uint32_t radicand_ = 0;
};

inline Scalar abs(const Scalar& s) { return s.sign() < 0 ? -s : s; }

inline Scalar Scalar::parse(std::string_view text) {
  static const std::regex grammar(
      R"(^\s*([+-]?\d+(?:/\d+)?)?(?:([+-]?)(\d+(?:/\d+)?)\*sqrt\((\d+)\))?\s*$)");
  std::string s(text);
  std::smatch m;
  if (!std::regex_match(s, m, grammar) || (!m[1].matched && !m[3].matched)) {
    throw ParseError("malformed scalar '" + s + "'");
  }
  if (m[1].matched && m[3].matched && m[2].length() == 0) {
    throw ParseError("malformed scalar '" + s + "': missing sign before radical term");
  }
  auto rational = [&](const std::string& part) {
    std::string body = part;
    if (!body.empty() && body[0] == '+') body.erase(0, 1);
    mpq_class q;
    if (q.set_str(body, 10) != 0 || q.get_den() == 0) {
      throw ParseError("malformed rational '" + part + "' in '" + s + "'");
    }
    q.canonicalize();
    return q;
  };
  mpq_class a = m[1].matched ? rational(m[1].str()) : mpq_class(0);
  if (!m[3].matched) return Scalar(a);
  mpq_class b = rational(m[3].str());
  if (m[2].str() == "-") b = -b;
  unsigned long d = std::stoul(m[4].str());
  if (d < 2 || d > 0xffffffffUL || !is_valid_radicand(static_cast<std::uint32_t>(d))) {
    throw ParseError("radicand in '" + s + "' must be a square-free integer >= 2");
  }
  return Scalar(a, b, static_cast<std::uint32_t>(d));
}

}  // namespace lonely
