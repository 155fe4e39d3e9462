#pragma once

// Finite packings of convex tiles with a uniform-grid spatial index.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lonely/error.hpp"
#include "lonely/polytope.hpp"

namespace lonely {

struct Tile {
  std::size_t id = 0;
  Polytope shape;
};

// Buckets tiles by the grid cells their (slightly inflated) floating bounding
// boxes touch. It only ever narrows candidates for exact predicates.
class SpatialIndex {
 public:
  using Key = std::array<long, 3>;

  SpatialIndex() = default;

  SpatialIndex(std::span<const Tile> tiles, std::size_t dim) : dim_(dim) {
    if (tiles.empty()) return;
    std::vector<double> diam;
    for (const auto& t : tiles) {
      auto [lo, hi] = float_box(t.shape);
      double d = 0;
      for (std::size_t i = 0; i < dim_; ++i) d = std::max(d, hi[i] - lo[i]);
      diam.push_back(d);
    }
    std::nth_element(diam.begin(), diam.begin() + static_cast<std::ptrdiff_t>(diam.size() / 2), diam.end());
    cell_ = std::max(diam[diam.size() / 2], 1e-12);
    for (const auto& t : tiles) {
      auto [lo, hi] = float_box(t.shape);
      for_cells(lo, hi, [&](const Key& k) { cells_[k].push_back(t.id); });
    }
  }

  double cell_size() const { return cell_; }
  const std::map<Key, std::vector<std::size_t>>& cells() const { return cells_; }

  std::vector<std::size_t> near_point(const Vector& x) const {
    std::array<double, 3> p{};
    for (std::size_t i = 0; i < dim_; ++i) p[i] = x[i].to_double();
    return in_box(p, p);
  }

  std::vector<std::size_t> in_box(const std::array<double, 3>& lo, const std::array<double, 3>& hi) const {
    std::set<std::size_t> ids;
    if (cells_.empty()) return {};
    std::array<double, 3> l = lo, h = hi;
    for (std::size_t i = 0; i < dim_; ++i) {
      double pad = 1e-9 * (cell_ + std::abs(l[i]) + std::abs(h[i]));
      l[i] -= pad;
      h[i] += pad;
    }
    for_cells(l, h, [&](const Key& k) {
      auto it = cells_.find(k);
      if (it != cells_.end()) ids.insert(it->second.begin(), it->second.end());
    });
    return {ids.begin(), ids.end()};
  }

  static std::pair<std::array<double, 3>, std::array<double, 3>> float_box(const Polytope& p) {
    std::array<double, 3> lo{}, hi{};
    bool first = true;
    for (const auto& v : p.vertices()) {
      for (std::size_t i = 0; i < v.dim(); ++i) {
        double c = v[i].to_double();
        if (first || c < lo[i]) lo[i] = c;
        if (first || c > hi[i]) hi[i] = c;
      }
      first = false;
    }
    for (std::size_t i = 0; i < p.dim(); ++i) {
      double pad = 1e-9 * (1.0 + std::abs(lo[i]) + std::abs(hi[i]));
      lo[i] -= pad;
      hi[i] += pad;
    }
    return {lo, hi};
  }

 private:
  template <class F>
  void for_cells(const std::array<double, 3>& lo, const std::array<double, 3>& hi, F&& f) const {
    Key a{}, b{};
    for (std::size_t i = 0; i < dim_; ++i) {
      a[i] = static_cast<long>(std::floor(lo[i] / cell_));
      b[i] = static_cast<long>(std::floor(hi[i] / cell_));
    }
    Key k{};
    for (k[0] = a[0]; k[0] <= b[0]; ++k[0])
      for (k[1] = a[1]; k[1] <= b[1]; ++k[1])
        for (k[2] = a[2]; k[2] <= b[2]; ++k[2]) f(k);
  }

  std::size_t dim_ = 0;
  double cell_ = 1.0;
  std::map<Key, std::vector<std::size_t>> cells_;
};

class Patch {
 public:
  Patch() = default;

  /// Validates interior-disjointness (pairs sharing an index cell) and builds
  /// the index. Tile ids are positions in the input. Throws OverlapError for
  /// the lexicographically first overlapping pair.
  static Patch build(std::vector<Polytope> shapes, std::size_t dim = 2) {
    Patch p;
    p.dim_ = shapes.empty() ? dim : shapes.front().dim();
    for (std::size_t i = 0; i < shapes.size(); ++i) {
      if (shapes[i].dim() != p.dim_) throw std::invalid_argument("tiles differ in dimension");
      p.tiles_.push_back({i, std::move(shapes[i])});
    }
    p.index_ = SpatialIndex(p.tiles_, p.dim_);
    for (const auto& [i, j] : p.candidate_pairs()) {
      if (interiors_intersect(p.tiles_[i].shape, p.tiles_[j].shape)) throw OverlapError(i, j);
    }
    return p;
  }

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return tiles_.size(); }
  bool empty() const { return tiles_.empty(); }
  const std::vector<Tile>& tiles() const { return tiles_; }
  const Tile& tile(std::size_t id) const { return tiles_.at(id); }
  const SpatialIndex& index() const { return index_; }

  /// Pairs (i < j) whose index cells coincide, sorted.
  std::vector<std::pair<std::size_t, std::size_t>> candidate_pairs() const {
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& [key, ids] : index_.cells())
      for (std::size_t a = 0; a < ids.size(); ++a)
        for (std::size_t b = a + 1; b < ids.size(); ++b)
          pairs.emplace(std::min(ids[a], ids[b]), std::max(ids[a], ids[b]));
    return {pairs.begin(), pairs.end()};
  }

  std::vector<std::size_t> tiles_containing(const Vector& x) const {
    std::vector<std::size_t> out;
    for (auto id : index_.near_point(x)) {
      if (tiles_[id].shape.locate(x) != Location::Outside) out.push_back(id);
    }
    return out;
  }

  std::vector<std::size_t> tiles_near_segment(const Vector& a, const Vector& b) const {
    std::array<double, 3> lo{}, hi{};
    for (std::size_t i = 0; i < dim_; ++i) {
      double x = a[i].to_double(), y = b[i].to_double();
      lo[i] = std::min(x, y);
      hi[i] = std::max(x, y);
    }
    return index_.in_box(lo, hi);
  }

  /// Distinct tile-vertex points, sorted.
  std::vector<Vector> vertex_points() const {
    std::set<Vector> pts;
    for (const auto& t : tiles_) pts.insert(t.shape.vertices().begin(), t.shape.vertices().end());
    return {pts.begin(), pts.end()};
  }

  /// Number of tiles having x as one of their vertices.
  std::size_t vertex_count(const Vector& x) const {
    std::size_t c = 0;
    for (auto id : tiles_containing(x)) c += is_vertex(tiles_[id].shape, x) ? 1 : 0;
    return c;
  }

  std::vector<Polytope> shapes() const {
    std::vector<Polytope> out;
    for (const auto& t : tiles_) out.push_back(t.shape);
    return out;
  }

 private:
  std::size_t dim_ = 2;
  std::vector<Tile> tiles_;
  SpatialIndex index_;
};

inline Patch build_patch(std::vector<Polytope> tiles, std::size_t dim = 2) {
  return Patch::build(std::move(tiles), dim);
}

inline Polytope box2(const Scalar& x0, const Scalar& y0, const Scalar& x1, const Scalar& y1) {
  return Polytope::from_vertices({Vector{x0, y0}, Vector{x1, y0}, Vector{x1, y1}, Vector{x0, y1}});
}

/// Rectangle R, square S and the strips T_0..T_K accumulating at the origin.
/// Tile order: R, S, T_0, ..., T_K.
inline Patch fig1_patch(std::size_t K) {
  std::vector<Polytope> tiles;
  tiles.push_back(box2(-1, -1, 1, 0));  // R
  tiles.push_back(box2(-1, 0, 0, 1));   // S
  for (std::size_t k = 0; k <= K; ++k) {
    mpz_class den = 1;
    den <<= static_cast<mp_bitcnt_t>(k);
    Scalar right(mpq_class(1, den));
    Scalar left = right / Scalar(2);
    tiles.push_back(box2(left, 0, right, 1));
  }
  return build_patch(std::move(tiles));
}

/// Tiles meeting the closed disc of the given radius around `center`.
inline std::size_t tiles_meeting_disc(const Patch& patch, const Vector& center, const Scalar& radius) {
  Scalar r2 = radius * radius;
  std::size_t count = 0;
  for (const auto& t : patch.tiles()) {
    if (squared_distance(t.shape, center) <= r2) ++count;
  }
  return count;
}

// ---------------------------------------------------------------------------
// Patch text format:
//   line 1 : "<dim> <radicand>"
//   then   : one tile per line, vertices separated by ';', coordinates by ','
// Blank lines and lines starting with '#' are ignored.

inline Vector parse_point(const std::string& text, std::size_t dim, std::uint32_t radicand) {
  std::vector<Scalar> coords;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    Scalar s = Scalar::parse(item);
    if (s.radicand() != 0 && s.radicand() != radicand)
      throw ParseError("coordinate '" + item + "' uses radicand " + std::to_string(s.radicand()));
    coords.push_back(std::move(s));
  }
  if (coords.size() != dim) throw ParseError("point '" + text + "' does not have " + std::to_string(dim) + " coordinates");
  return Vector(std::move(coords));
}

inline Polytope parse_polytope(const std::string& line, std::size_t dim, std::uint32_t radicand) {
  std::vector<Vector> pts;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.find_first_not_of(" \t\r") == std::string::npos) continue;
    pts.push_back(parse_point(item, dim, radicand));
  }
  return Polytope::from_vertices(std::move(pts));
}

struct PatchFile {
  std::size_t dim = 2;
  std::uint32_t radicand = 0;
  std::vector<Polytope> tiles;
};

inline PatchFile read_patch_file(std::istream& in) {
  PatchFile file;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      if (!header) {
        std::stringstream ss(line);
        long d = -1, r = -1;
        if (!(ss >> d >> r) || d < 1 || d > 3 || r < 0 || !is_valid_radicand(static_cast<std::uint32_t>(r)))
          throw ParseError("bad header, expected '<dim> <radicand>'");
        file.dim = static_cast<std::size_t>(d);
        file.radicand = static_cast<std::uint32_t>(r);
        header = true;
        continue;
      }
      file.tiles.push_back(parse_polytope(line, file.dim, file.radicand));
    } catch (const Error& e) {
      throw SchemaError("line " + std::to_string(lineno), e.what());
    }
  }
  if (!header) throw SchemaError("line 1", "missing header");
  return file;
}

inline std::string write_patch_file(const Patch& patch, std::uint32_t radicand = 0) {
  std::string out = std::to_string(patch.dim()) + " " + std::to_string(radicand) + "\n";
  for (const auto& t : patch.tiles()) out += t.shape.to_string() + "\n";
  return out;
}

}  // namespace lonely
