#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "test_util.hpp"

using namespace lonely;
using namespace lonely::testing;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SubstitutionRule table() { return load_rule(corpus("rules/table.json")); }
SubstitutionRule triangle() { return load_rule(corpus("rules/triangle.json")); }

std::string with_replacement(std::string text, const std::string& from, const std::string& to) {
  auto pos = text.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  return text.replace(pos, from.size(), to);
}

struct OracleTile {
  std::vector<Vector> ccw;     // boundary order
  std::vector<Vector> sorted;  // lexicographic order
  Vector lo, hi;               // exact bounding box
};

OracleTile oracle_tile(const Polytope& p) {
  OracleTile t{p.vertices(), p.vertices(), p.vertices()[0], p.vertices()[0]};
  std::sort(t.sorted.begin(), t.sorted.end());
  for (const auto& v : t.ccw)
    for (std::size_t i = 0; i < 2; ++i) {
      t.lo[i] = std::min(t.lo[i], v[i]);
      t.hi[i] = std::max(t.hi[i], v[i]);
    }
  return t;
}

// Closed intersection of convex polygons: no separating axis with a gap.
bool closed_intersect_sat(const OracleTile& p, const OracleTile& q) {
  for (std::size_t i = 0; i < 2; ++i)
    if (p.hi[i] < q.lo[i] || q.hi[i] < p.lo[i]) return false;
  for (const auto* poly : {&p.ccw, &q.ccw}) {
    for (std::size_t i = 0; i < poly->size(); ++i) {
      Vector e = (*poly)[(i + 1) % poly->size()] - (*poly)[i];
      Vector axis{-e[1], e[0]};
      auto range = [&](const std::vector<Vector>& t) {
        Scalar lo = dot(axis, t[0]), hi = lo;
        for (const auto& v : t) {
          lo = std::min(lo, dot(axis, v));
          hi = std::max(hi, dot(axis, v));
        }
        return std::pair{lo, hi};
      };
      auto [a, b] = range(p.ccw);
      auto [c, d] = range(q.ccw);
      if (b < c || d < a) return false;
    }
  }
  return true;
}

// All-pairs constellation oracle, anchored at the first tile of each ordering
// and minimised over both orderings.
std::size_t brute_constellations(const std::vector<Polytope>& tiles) {
  using Key = std::pair<std::vector<Vector>, std::vector<Vector>>;
  std::set<Key> keys;
  std::vector<OracleTile> ts;
  for (const auto& p : tiles) ts.push_back(oracle_tile(p));
  auto anchored = [](std::vector<Vector> a, std::vector<Vector> b) {
    Vector base = a.front();
    for (auto& v : a) v -= base;
    for (auto& v : b) v -= base;
    return Key{a, b};
  };
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t j = i + 1; j < ts.size(); ++j) {
      if (!closed_intersect_sat(ts[i], ts[j])) continue;
      keys.insert(std::min(anchored(ts[i].sorted, ts[j].sorted), anchored(ts[j].sorted, ts[i].sorted)));
    }
  return keys.size();
}

}  // namespace

TEST(ParseRule, TableFile) {
  auto rule = table();
  EXPECT_EQ(rule.dim, 2u);
  EXPECT_EQ(rule.prototiles.size(), 1u);
  EXPECT_EQ(rule.factor, Scalar(2));
  ASSERT_EQ(rule.placements.size(), 1u);
  EXPECT_EQ(rule.placements[0].size(), 4u);
  EXPECT_TRUE(rule.factor_is_positive_integer());
  EXPECT_TRUE(is_vertex(rule.prototiles[0].shape, V2(0, 0)));
  EXPECT_EQ(area2(rule.prototiles[0].shape), Scalar(2));
}

TEST(ParseRule, NonIntegerFactorAcceptedForGeneration) {
  auto text = with_replacement(slurp(corpus("rules/table.json")), "\"factor\": \"2\"", "\"factor\": \"2/3\"");
  auto rule = parse_rule(text);
  EXPECT_EQ(rule.factor, Q(2, 3));
  EXPECT_FALSE(rule.factor_is_positive_integer());
  EXPECT_THROW(flc_criterion(rule), NonIntegerFactor);
}

TEST(ParseRule, SchemaErrorsCarryPointer) {
  const std::string base = slurp(corpus("rules/table.json"));
  auto field_of = [](const std::string& text) -> std::string {
    try {
      parse_rule(text);
    } catch (const SchemaError& e) {
      return e.field();
    }
    return "<no error>";
  };
  EXPECT_EQ(field_of(with_replacement(base, "[\"2\", \"1\"]", "[\"2\", \"x\"]")), "/prototiles/0/vertices/2/1");
  EXPECT_EQ(field_of(with_replacement(base, "\"factor\": \"2\"", "\"factor\": 2")), "/factor");
  EXPECT_EQ(field_of(with_replacement(base, "\"factor\": \"2\"", "\"factor\": \"-2\"")), "/factor");
  EXPECT_EQ(field_of(with_replacement(base, "\"dim\": 2", "\"dim\": 7")), "/dim");
  EXPECT_EQ(field_of(with_replacement(base, "\"radicand\": 0", "\"radicand\": 4")), "/radicand");
  EXPECT_EQ(field_of(with_replacement(base, "[\"0\", \"-1\", \"1\", \"0\"]", "[\"1\", \"1\", \"0\", \"1\"]")),
            "/substitution/table/0/matrix");
  EXPECT_EQ(field_of(with_replacement(base, "[\"0\", \"-1\", \"1\", \"0\"]", "[\"0\", \"-1\", \"1\"]")),
            "/substitution/table/0/matrix");
  EXPECT_EQ(field_of(with_replacement(base, "\"target\": \"table\"", "\"target\": \"chair\"")),
            "/substitution/table/0/target");
  EXPECT_EQ(field_of(with_replacement(base, "\"offset\": [\"1\", \"0\"]", "\"offset\": [\"1\"]")),
            "/substitution/table/0/offset");
  EXPECT_EQ(field_of(with_replacement(base, "\"substitution\"", "\"subst\"")), "/substitution");
  EXPECT_EQ(field_of("{ not json"), "input");
  EXPECT_EQ(field_of(with_replacement(base, "[\"2\", \"1\"], [\"0\", \"1\"]", "[\"4\", \"0\"]")),
            "/prototiles/0/vertices");  // collinear: degenerate tile
  EXPECT_THROW(load_rule(corpus("rules/does_not_exist.json")), std::ios_base::failure);
}

TEST(ParseRule, OriginNormalizationPreservesGeometry) {
  // The table rule written for the prototile translated by (3,2).
  const std::string text = R"json({
    "dim": 2, "radicand": 0, "factor": "2",
    "prototiles": [{"name": "table", "vertices": [["3","2"],["5","2"],["5","3"],["3","3"]]}],
    "substitution": {"table": [
      {"target": "table", "matrix": ["0","-1","1","0"], "offset": ["9","1"]},
      {"target": 0, "matrix": ["0","-1","1","0"], "offset": ["12","1"]},
      {"target": "table", "matrix": ["1","0","0","1"], "offset": ["4","2"]},
      {"target": "table", "matrix": ["1","0","0","1"], "offset": ["4","3"]}]}})json";
  auto shifted = parse_rule(text);
  auto ref = table();
  EXPECT_EQ(shifted.prototiles[0].shape.vertices(), ref.prototiles[0].shape.vertices());
  EXPECT_EQ(shifted.prototiles[0].shift, V2(-3, -2));
  ASSERT_EQ(shifted.placements[0].size(), 4u);
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_EQ(shifted.placements[0][k].offset, ref.placements[0][k].offset) << k;
    EXPECT_EQ(shifted.placements[0][k].linear, ref.placements[0][k].linear) << k;
  }
  EXPECT_NO_THROW(check_self_similar(shifted));
}

TEST(SelfSimilar, CorpusRulesPass) {
  auto audits = check_self_similar(table());
  ASSERT_EQ(audits.size(), 1u);
  EXPECT_EQ(audits[0].pieces, 4u);
  EXPECT_EQ(audits[0].placed_area, Scalar(8));
  EXPECT_EQ(audits[0].inflated_area, Scalar(8));
  // Independent area oracle: the pieces [0,1]x[0,2], [3,4]x[0,2], [1,3]x[0,1], [1,3]x[1,2].
  const auto rule = table();
  std::set<std::vector<Vector>> pieces;
  for (const auto& pl : rule.placements[0]) pieces.insert(placed_shape(rule, pl).vertices());
  std::set<std::vector<Vector>> expected{box2(0, 0, 1, 2).vertices(), box2(3, 0, 4, 2).vertices(),
                                         box2(1, 0, 3, 1).vertices(), box2(1, 1, 3, 2).vertices()};
  EXPECT_EQ(pieces, expected);

  auto tri = check_self_similar(triangle());
  ASSERT_EQ(tri.size(), 1u);
  EXPECT_EQ(tri[0].placed_area, Scalar(2));
}

TEST(SelfSimilar, OverlapAndAreaGap) {
  try {
    check_self_similar(load_rule(fixture("table_overlap.json")));
    FAIL();
  } catch (const SelfSimilarityError& e) {
    EXPECT_EQ(e.kind(), SelfSimilarityError::Kind::Overlap);
    EXPECT_STREQ(to_string(e.kind()), "OverlapError");
  }
  try {
    check_self_similar(load_rule(fixture("table_missing_piece.json")));
    FAIL();
  } catch (const SelfSimilarityError& e) {
    EXPECT_EQ(e.kind(), SelfSimilarityError::Kind::AreaGap);
    EXPECT_NE(std::string(e.what()).find("6 != inflated area 8"), std::string::npos) << e.what();
  }
  auto text = with_replacement(slurp(corpus("rules/table.json")), "\"offset\": [\"4\", \"0\"]", "\"offset\": [\"5\", \"0\"]");
  try {
    check_self_similar(parse_rule(text));
    FAIL();
  } catch (const SelfSimilarityError& e) {
    EXPECT_EQ(e.kind(), SelfSimilarityError::Kind::Containment);
  }
}

TEST(Supertile, CountsAndSupport) {
  auto rule = table();
  EXPECT_EQ(supertile(rule, 0, 0).size(), 1u);
  EXPECT_EQ(supertile(rule, 0, 1).size(), 4u);
  auto s3 = supertile(rule, 0, 3);
  EXPECT_EQ(s3.size(), 64u);
  auto hull = Polytope::from_vertices(s3.vertex_points());
  EXPECT_EQ(hull.vertices(), box2(0, 0, 16, 8).vertices());
  Scalar total = 0;
  for (const auto& t : s3.tiles()) total += area2(t.shape);
  EXPECT_EQ(total, Scalar(128));
  EXPECT_EQ(expand_supertile(rule, 0, 3).scale, Scalar(8));
}

TEST(Supertile, SupportIsInflatedPrototileForAllCorpusRules) {
  for (const auto& rule : {table(), triangle()}) {
    Scalar lambda_k = 1;
    for (std::size_t k = 0; k <= 4; ++k) {
      auto patch = supertile(rule, 0, k);
      std::size_t expected = 1;
      for (std::size_t i = 0; i < k; ++i) expected *= rule.placements[0].size();
      EXPECT_EQ(patch.size(), expected);
      auto big = rule.prototiles[0].shape.scaled(lambda_k);
      EXPECT_EQ(Polytope::from_vertices(patch.vertex_points()).vertices(), big.vertices());
      Scalar total = 0;
      for (const auto& t : patch.tiles()) total += area2(t.shape);
      EXPECT_EQ(total, area2(big));
      lambda_k *= rule.factor;
    }
  }
}

TEST(Supertile, SupertilesSatisfyLonelyAndGraphChecks) {
  for (const auto& rule : {table(), triangle()})
    for (std::size_t k = 0; k <= 3; ++k) {
      auto patch = supertile(rule, 0, k);
      EXPECT_TRUE(lonely_vertex_scan(patch).violations.empty());
      EXPECT_TRUE(components_reach_boundary(patch, build_graph(patch)).pass);
      EXPECT_TRUE(edge_cover_check(patch).empty());
    }
}

TEST(Flc, TableCertified) {
  auto v = flc_criterion(table());
  EXPECT_EQ(v.status, FlcStatus::Certified);
  EXPECT_EQ(v.ranks, (ZSpanRank{2, 2}));
  ASSERT_TRUE(v.basis.has_value());
  EXPECT_EQ(*v.basis, (std::vector<Vector>{V2(1, 0), V2(0, 1)}));
}

TEST(Flc, OrientationsEnterTheLattice) {
  // Alone, the listed table vertices span 2Z x Z; the quarter-turned copies
  // placed by the rule contribute the edge (1,0).
  auto rule = table();
  EXPECT_EQ(hnf_lattice_basis(rule.prototiles[0].shape.vertices()), (std::vector<Vector>{V2(2, 0), V2(0, 1)}));
  auto classes = orientation_classes(rule);
  ASSERT_TRUE(classes.has_value());
  EXPECT_EQ((*classes)[0].size(), 4u);
  auto tri = orientation_classes(triangle());
  ASSERT_TRUE(tri.has_value());
  EXPECT_EQ((*tri)[0].size(), 2u);

  // A rotation of infinite order (3-4-5 triangle angle) has no finite closure.
  auto text = with_replacement(slurp(corpus("rules/table.json")), "[\"0\", \"-1\", \"1\", \"0\"]",
                               "[\"3/5\", \"-4/5\", \"4/5\", \"3/5\"]");
  auto spun = parse_rule(text);
  EXPECT_FALSE(orientation_classes(spun).has_value());
  EXPECT_EQ(flc_criterion(spun).status, FlcStatus::Inconclusive);
}

TEST(Flc, DenseSpanInconclusive) {
  const std::string text = R"json({
    "dim": 2, "radicand": 2, "factor": "2",
    "prototiles": [
      {"name": "a", "vertices": [["0","0"],["1","0"],["0","1"]]},
      {"name": "b", "vertices": [["0","0"],["0+1*sqrt(2)","0"],["0","1"]]}],
    "substitution": {"a": [], "b": []}})json";
  auto v = flc_criterion(parse_rule(text));
  EXPECT_EQ(v.status, FlcStatus::Inconclusive);
  EXPECT_EQ(v.ranks, (ZSpanRank{3, 2}));
  EXPECT_FALSE(v.basis.has_value());
  EXPECT_THROW(vertex_lattice_audit(parse_rule(text), 1), Error);
}

TEST(Flc, NonIntegerFactor) {
  auto text = with_replacement(slurp(corpus("rules/table.json")), "\"factor\": \"2\"", "\"factor\": \"3/2\"");
  EXPECT_THROW(flc_criterion(parse_rule(text)), NonIntegerFactor);
}

TEST(LatticeAudit, TableUpToOrderFour) {
  for (std::size_t k = 0; k <= 4; ++k) {
    auto audit = vertex_lattice_audit(table(), k);
    EXPECT_TRUE(audit.pass()) << k;
    ASSERT_EQ(audit.entries.size(), 1u);
    EXPECT_TRUE(audit.entries[0].outliers.empty());
    EXPECT_EQ(audit.entries[0].components, 1u);
    // Oracle: integer coordinates are exactly the points of Z^2.
    for (const auto& x : supertile(table(), 0, k).vertex_points())
      for (const auto& c : x) EXPECT_TRUE(c.is_integer());
  }
}

TEST(LatticeAudit, NegativeControlThirdShift) {
  auto rule = table();
  auto shapes = supertile(rule, 0, 2).shapes();
  shapes.push_back(rule.prototiles[0].shape.translated(V2(Q(1, 3), 20)));
  Lattice lattice(*prototile_vertices(rule));
  auto out = lattice_outliers(shapes, lattice);
  EXPECT_EQ(out.size(), 4u);
  EXPECT_NE(std::find(out.begin(), out.end(), V2(Q(1, 3), 20)), out.end());
}

TEST(Constellations, GridHasFourClasses) {
  std::vector<Polytope> tiles = square_grid(4, 4).shapes();
  EXPECT_EQ(brute_constellations(tiles), 4u);
  EXPECT_EQ(count_pair_constellations(square_grid(4, 4)), 4u);
  EXPECT_EQ(count_pair_constellations(brick_wall(5, 5)), brute_constellations(brick_wall(5, 5).shapes()));
}

TEST(Constellations, OrderZeroIsEmpty) {
  EXPECT_EQ(enumerate_pair_constellations(table(), 0), (std::vector<std::size_t>{0}));
  EXPECT_EQ(enumerate_pair_constellations(triangle(), 0), (std::vector<std::size_t>{0}));
}

TEST(Constellations, TableStabilizesAtGoldenCount) {
  // Golden value, measured once and confirmed by the all-pairs oracle below.
  constexpr std::size_t kTableGolden = 24;
  auto counts = enumerate_pair_constellations(table(), 5);
  ASSERT_EQ(counts.size(), 6u);
  EXPECT_TRUE(std::is_sorted(counts.begin(), counts.end()));
  EXPECT_EQ(counts[4], counts[5]);
  EXPECT_EQ(counts[5], kTableGolden);
  for (std::size_t k = 0; k <= 5; ++k)
    EXPECT_EQ(counts[k], brute_constellations(supertile(table(), 0, k).shapes())) << k;
}

TEST(Constellations, TriangleStabilizes) {
  constexpr std::size_t kTriangleGolden = 12;
  auto counts = enumerate_pair_constellations(triangle(), 5);
  EXPECT_TRUE(std::is_sorted(counts.begin(), counts.end()));
  EXPECT_EQ(counts[5], kTriangleGolden);
  for (std::size_t k = 0; k <= 4; ++k)
    EXPECT_EQ(counts[k], brute_constellations(supertile(triangle(), 0, k).shapes())) << k;
}

TEST(RuleJson, BitExactRoundTrip) {
  for (const auto& path : {corpus("rules/table.json"), corpus("rules/triangle.json")}) {
    auto rule = load_rule(path);
    std::string once = rule_to_json(rule).dump(2);
    std::string twice = rule_to_json(parse_rule(once)).dump(2);
    EXPECT_EQ(once, twice);
    // Every scalar string of the source survives unchanged.
    auto src = nlohmann::json::parse(slurp(path));
    auto out = nlohmann::json::parse(once);
    EXPECT_EQ(src["factor"], out["factor"]);
    EXPECT_EQ(src["prototiles"][0]["vertices"], out["prototiles"][0]["vertices"]);
    for (std::size_t k = 0; k < src["substitution"].begin()->size(); ++k) {
      EXPECT_EQ((*src["substitution"].begin())[k]["matrix"], (*out["substitution"].begin())[k]["matrix"]);
      EXPECT_EQ((*src["substitution"].begin())[k]["offset"], (*out["substitution"].begin())[k]["offset"]);
    }
  }
  const std::string radical = R"json({"dim": 2, "radicand": 2, "factor": "1+1*sqrt(2)",
    "prototiles": [{"name": "p", "vertices": [["0","0"],["1/2+3/4*sqrt(2)","0"],["0","-5/7-1*sqrt(2)"]]}],
    "substitution": {"p": []}})json";
  auto out = rule_to_json(parse_rule(radical));
  EXPECT_EQ(out["factor"], "1+1*sqrt(2)");
  EXPECT_EQ(out["prototiles"][0]["vertices"][1][0], "1/2+3/4*sqrt(2)");
  EXPECT_EQ(out["prototiles"][0]["vertices"][2][1], "-5/7-1*sqrt(2)");
}
