#pragma once

// Exact vectors and matrices over Q(sqrt d), Gaussian-elimination rank, and
// integer lattices spanned by finitely many exact vectors.

#include <gmpxx.h>

#include <algorithm>
#include <cassert>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lonely/error.hpp"
#include "lonely/scalar.hpp"

namespace lonely {

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim) : coords_(dim) {}
  explicit Vector(std::vector<Scalar> coords) : coords_(std::move(coords)) {}
  Vector(std::initializer_list<Scalar> coords) : coords_(coords) {}

  std::size_t dim() const { return coords_.size(); }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }
  Scalar& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Scalar>& coords() const { return coords_; }

  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Scalar& s) { return s.is_zero(); });
  }

  bool is_rational() const {
    return std::all_of(coords_.begin(), coords_.end(),
                       [](const Scalar& s) { return s.is_rational(); });
  }

  Vector& operator+=(const Vector& rhs) {
    assert(rhs.dim() == dim());
    for (std::size_t i = 0; i < dim(); ++i) coords_[i] += rhs.coords_[i];
    return *this;
  }
  Vector& operator-=(const Vector& rhs) {
    assert(rhs.dim() == dim());
    for (std::size_t i = 0; i < dim(); ++i) coords_[i] -= rhs.coords_[i];
    return *this;
  }
  Vector& operator*=(const Scalar& s) {
    for (auto& c : coords_) c *= s;
    return *this;
  }

  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator*(Vector a, const Scalar& s) { return a *= s; }
  friend Vector operator*(const Scalar& s, Vector a) { return a *= s; }
  Vector operator-() const {
    Vector r = *this;
    for (auto& c : r.coords_) c = -c;
    return r;
  }

  friend bool operator==(const Vector&, const Vector&) = default;

  // Lexicographic in the real order of the coordinates.
  friend std::strong_ordering operator<=>(const Vector& a, const Vector& b) {
    std::size_t n = std::min(a.dim(), b.dim());
    for (std::size_t i = 0; i < n; ++i) {
      auto c = a.coords_[i] <=> b.coords_[i];
      if (c != 0) return c;
    }
    return a.dim() <=> b.dim();
  }

  std::string to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < dim(); ++i) {
      if (i) out += ", ";
      out += coords_[i].to_string();
    }
    return out + ")";
  }

  friend std::ostream& operator<<(std::ostream& os, const Vector& v) { return os << v.to_string(); }

 private:
  std::vector<Scalar> coords_;
};

inline Scalar dot(const Vector& a, const Vector& b) {
  assert(a.dim() == b.dim());
  Scalar s;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a[i].is_zero() || b[i].is_zero()) continue;
    s += a[i] * b[i];
  }
  return s;
}

inline Vector cross(const Vector& a, const Vector& b) {
  assert(a.dim() == 3 && b.dim() == 3);
  return Vector{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// z-component of the planar cross product.
inline Scalar cross2(const Vector& a, const Vector& b) { return a[0] * b[1] - a[1] * b[0]; }

inline Vector unit_vector(std::size_t dim, std::size_t axis) {
  Vector v(dim);
  v[axis] = 1;
  return v;
}

// Scale so that the first nonzero coordinate has absolute value one. Direction
// (and hence sign) is preserved.
inline Vector canonical_direction(Vector v) {
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (!v[i].is_zero()) {
      Scalar s = abs(v[i]);
      if (s == Scalar(1)) return v;
      for (std::size_t j = i; j < v.dim(); ++j) v[j] /= s;
      return v;
    }
  }
  return v;
}

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, Vector(cols)) {}
  explicit Matrix(std::vector<Vector> rows, std::size_t cols = 0)
      : cols_(rows.empty() ? cols : rows.front().dim()), rows_(std::move(rows)) {
    for (const auto& r : rows_) {
      if (r.dim() != cols_) throw std::invalid_argument("ragged matrix rows");
    }
  }
  Matrix(std::initializer_list<Vector> rows) : Matrix(std::vector<Vector>(rows)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.rows_[i][i] = 1;
    return m;
  }

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const Vector& row(std::size_t i) const { return rows_[i]; }
  const std::vector<Vector>& row_vectors() const { return rows_; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  Scalar& operator()(std::size_t i, std::size_t j) { return rows_[i][j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows());
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.rows_[j][i] = rows_[i][j];
    return t;
  }

  friend Vector operator*(const Matrix& m, const Vector& v) {
    assert(m.cols() == v.dim());
    Vector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) out[i] = dot(m.rows_[i], v);
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    assert(a.cols() == b.rows());
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) {
        Scalar s;
        for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
        out(i, j) = s;
      }
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

  bool is_orthogonal() const {
    return rows() == cols_ && transpose() * (*this) == identity(cols_);
  }

 private:
  std::size_t cols_ = 0;
  std::vector<Vector> rows_;
};

namespace detail {

// Row echelon form in place; returns the rank.
inline std::size_t eliminate(std::vector<Vector>& rows, std::size_t cols) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const Scalar inv = Scalar(1) / rows[rank][c];
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c].is_zero()) continue;
      Scalar f = rows[r][c] * inv;
      for (std::size_t k = c; k < cols; ++k) {
        if (!rows[rank][k].is_zero()) rows[r][k] -= f * rows[rank][k];
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

inline std::size_t rank(std::span<const Vector> vectors) {
  if (vectors.empty()) return 0;
  std::vector<Vector> rows(vectors.begin(), vectors.end());
  return detail::eliminate(rows, rows.front().dim());
}

inline std::size_t rank(const Matrix& m) { return rank(std::span<const Vector>(m.row_vectors())); }

// Inverse by Gauss-Jordan; throws std::domain_error when singular.
inline Matrix inverse(const Matrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  std::vector<Vector> a = m.row_vectors();
  Matrix inv = Matrix::identity(n);
  std::vector<Vector> b = inv.row_vectors();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) throw std::domain_error("singular matrix");
    std::swap(a[c], a[p]);
    std::swap(b[c], b[p]);
    Scalar s = Scalar(1) / a[c][c];
    a[c] *= s;
    b[c] *= s;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      Scalar f = a[r][c];
      a[r] -= a[c] * f;
      b[r] -= b[c] * f;
    }
  }
  return Matrix(std::move(b));
}

// Basis of {v : normals . v = 0}.
inline std::vector<Vector> null_space(std::span<const Vector> normals, std::size_t dim) {
  std::vector<Vector> rows(normals.begin(), normals.end());
  detail::eliminate(rows, dim);
  // Reduce to RREF to read off free variables.
  std::vector<std::size_t> pivot_col;
  for (auto& r : rows) {
    std::size_t c = 0;
    while (c < dim && r[c].is_zero()) ++c;
    if (c == dim) break;
    r *= Scalar(1) / r[c];
    pivot_col.push_back(c);
  }
  rows.resize(pivot_col.size());
  for (std::size_t i = rows.size(); i-- > 0;) {
    for (std::size_t j = 0; j < i; ++j) {
      Scalar f = rows[j][pivot_col[i]];
      if (!f.is_zero()) rows[j] -= rows[i] * f;
    }
  }
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < dim; ++free) {
    if (std::find(pivot_col.begin(), pivot_col.end(), free) != pivot_col.end()) continue;
    Vector v(dim);
    v[free] = 1;
    for (std::size_t i = 0; i < rows.size(); ++i) v[pivot_col[i]] = -rows[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

struct ZSpanRank {
  std::size_t z_rank = 0;
  std::size_t r_dim = 0;
  friend bool operator==(const ZSpanRank&, const ZSpanRank&) = default;
};

namespace detail {

// Q-linear embedding of Q(sqrt d)^n into Q^(2n): (a_1..a_n, b_1..b_n).
inline std::vector<mpq_class> embed(const Vector& v) {
  std::vector<mpq_class> out(2 * v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) {
    out[i] = v[i].rational_part();
    out[v.dim() + i] = v[i].radicand() == 0 ? mpq_class(0) : v[i].radical_part();
  }
  return out;
}

inline std::uint32_t common_radicand(std::span<const Vector> vectors) {
  std::uint32_t d = 0;
  for (const auto& v : vectors)
    for (const auto& s : v) {
      if (s.radicand() == 0) continue;
      if (d != 0 && d != s.radicand()) throw std::domain_error("mixed radicands in vector set");
      d = s.radicand();
    }
  return d;
}

inline std::size_t rational_rank(std::vector<std::vector<mpq_class>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && sgn(rows[p][c]) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[rank], rows[p]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (sgn(rows[r][c]) == 0) continue;
      mpq_class f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

// z_rank: rank of the abstract Z-module generated by the vectors (rational rank
// of the 2n-column embedding). r_dim: dimension of their real span.
inline ZSpanRank zspan_rank(std::span<const Vector> vectors) {
  std::vector<std::vector<mpq_class>> rows;
  rows.reserve(vectors.size());
  for (const auto& v : vectors) rows.push_back(detail::embed(v));
  return {detail::rational_rank(std::move(rows)), rank(vectors)};
}

// A finitely generated subgroup of R^n is discrete iff its abstract rank equals
// the dimension of its real span.
inline bool is_discrete_span(std::span<const Vector> vectors) {
  auto r = zspan_rank(vectors);
  return r.z_rank == r.r_dim;
}

/// Integer lattice generated by exact vectors, stored as a Hermite normal form
/// of the embedded, denominator-cleared generator matrix.
class Lattice {
 public:
  explicit Lattice(std::span<const Vector> generators) {
    if (generators.empty()) return;
    dim_ = generators.front().dim();
    radicand_ = detail::common_radicand(generators);
    mpz_class scale = 1;
    std::vector<std::vector<mpq_class>> embedded;
    for (const auto& g : generators) {
      if (g.dim() != dim_) throw std::invalid_argument("generators differ in dimension");
      embedded.push_back(detail::embed(g));
      for (const auto& q : embedded.back()) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), q.get_den_mpz_t());
    }
    scale_ = scale;
    std::vector<std::vector<mpz_class>> rows;
    for (const auto& e : embedded) {
      std::vector<mpz_class> r(e.size());
      for (std::size_t i = 0; i < e.size(); ++i) {
        mpq_class s = e[i] * scale_;
        r[i] = s.get_num();
      }
      rows.push_back(std::move(r));
    }
    hnf_ = hermite_normal_form(std::move(rows));
  }

  std::size_t rank() const { return hnf_.size(); }
  std::size_t dim() const { return dim_; }

  // Basis vectors mapped back to Q(sqrt d)^n, in Hermite normal form order.
  std::vector<Vector> basis() const {
    std::vector<Vector> out;
    for (const auto& row : hnf_) {
      Vector v(dim_);
      for (std::size_t i = 0; i < dim_; ++i) {
        mpq_class a(row[i], scale_);
        mpq_class b(row[dim_ + i], scale_);
        a.canonicalize();
        b.canonicalize();
        v[i] = radicand_ == 0 ? Scalar(a) : Scalar(a, b, sgn(b) == 0 ? 0 : radicand_);
      }
      out.push_back(std::move(v));
    }
    return out;
  }

  // Exact membership: reduce the embedded point against the echelon basis.
  bool contains(const Vector& v) const {
    if (v.dim() != dim_) return false;
    for (const auto& s : v) {
      if (s.radicand() != 0 && s.radicand() != radicand_) return false;
    }
    std::vector<mpq_class> e = detail::embed(v);
    std::vector<mpz_class> x(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      mpq_class s = e[i] * scale_;
      if (s.get_den() != 1) return false;
      x[i] = s.get_num();
    }
    for (const auto& row : hnf_) {
      std::size_t c = 0;
      while (sgn(row[c]) == 0) ++c;
      mpz_class q, r;
      mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), x[c].get_mpz_t(), row[c].get_mpz_t());
      if (sgn(r) != 0) return false;
      for (std::size_t k = c; k < x.size(); ++k) x[k] -= q * row[k];
    }
    return std::all_of(x.begin(), x.end(), [](const mpz_class& z) { return sgn(z) == 0; });
  }

  // Row-style HNF: upper echelon, positive pivots, entries above each pivot
  // reduced into [0, pivot). Zero rows dropped.
  static std::vector<std::vector<mpz_class>> hermite_normal_form(std::vector<std::vector<mpz_class>> rows) {
    if (rows.empty()) return rows;
    const std::size_t cols = rows.front().size();
    std::size_t p = 0;
    for (std::size_t c = 0; c < cols && p < rows.size(); ++c) {
      while (true) {
        std::size_t best = rows.size();
        for (std::size_t r = p; r < rows.size(); ++r) {
          if (sgn(rows[r][c]) == 0) continue;
          if (best == rows.size() || mpz_cmpabs(rows[r][c].get_mpz_t(), rows[best][c].get_mpz_t()) < 0) best = r;
        }
        if (best == rows.size()) break;
        std::swap(rows[p], rows[best]);
        bool done = true;
        for (std::size_t r = p + 1; r < rows.size(); ++r) {
          if (sgn(rows[r][c]) == 0) continue;
          mpz_class q;
          mpz_fdiv_q(q.get_mpz_t(), rows[r][c].get_mpz_t(), rows[p][c].get_mpz_t());
          for (std::size_t k = c; k < cols; ++k) rows[r][k] -= q * rows[p][k];
          if (sgn(rows[r][c]) != 0) done = false;
        }
        if (done) break;
      }
      if (sgn(rows[p][c]) == 0) continue;
      if (sgn(rows[p][c]) < 0)
        for (auto& z : rows[p]) z = -z;
      for (std::size_t r = 0; r < p; ++r) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), rows[r][c].get_mpz_t(), rows[p][c].get_mpz_t());
        if (sgn(q) == 0) continue;
        for (std::size_t k = c; k < cols; ++k) rows[r][k] -= q * rows[p][k];
      }
      ++p;
    }
    rows.resize(p);
    return rows;
  }

 private:
  std::size_t dim_ = 0;
  std::uint32_t radicand_ = 0;
  mpz_class scale_ = 1;
  std::vector<std::vector<mpz_class>> hnf_;
};

// Canonical (Hermite normal form) basis of the rational lattice generated by
// the vectors.
inline std::vector<Vector> hnf_lattice_basis(std::span<const Vector> vectors) {
  if (!is_discrete_span(vectors)) throw NotDiscrete("generators span a non-discrete subgroup");
  for (const auto& v : vectors) {
    if (!v.is_rational()) throw NonRational("lattice basis requested for irrational generators");
  }
  return Lattice(vectors).basis();
}

}  // namespace lonely
