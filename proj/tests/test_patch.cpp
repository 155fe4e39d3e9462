#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "test_util.hpp"

using namespace lonely;
using namespace lonely::testing;

namespace {

// Is x on the boundary of some tile other than `skip`?
bool on_other_boundary(const Patch& p, const Vector& x, std::size_t skip) {
  for (const auto& t : p.tiles())
    if (t.id != skip && t.shape.locate(x) == Location::Boundary) return true;
  return false;
}

// Sample-point oracle for edge covering: every dyadic point of every tile
// edge away from the outer hull must lie on the boundary of another tile.
std::size_t uncovered_samples(const Patch& p, unsigned steps = 16) {
  const Polytope hull = Polytope::from_vertices(p.vertex_points());
  std::size_t bad = 0;
  for (const auto& t : p.tiles())
    for (const auto& [a, b] : edges(t.shape))
      for (unsigned s = 1; s < steps; ++s) {
        Vector x = a + (b - a) * Q(s, steps);
        if (hull.locate(x) == Location::Boundary) continue;
        if (!on_other_boundary(p, x, t.id)) ++bad;
      }
  return bad;
}

Patch without_tile(const Patch& p, std::size_t id) {
  std::vector<Polytope> shapes;
  for (const auto& t : p.tiles())
    if (t.id != id) shapes.push_back(t.shape);
  return build_patch(shapes);
}

}  // namespace

TEST(BuildPatch, GridAndOverlap) {
  auto grid = square_grid(2, 2);
  EXPECT_EQ(grid.size(), 4u);
  try {
    build_patch({square(0, 0), square(0, 0).translated(V2(Q(1, 2), Q(1, 2))), square(3, 3)});
    FAIL() << "expected OverlapError";
  } catch (const OverlapError& e) {
    EXPECT_EQ(e.first(), 0u);
    EXPECT_EQ(e.second(), 1u);
  }
  // Large tile overlapping a small one far from the large tile's index cells.
  std::vector<Polytope> tiles;
  for (int i = 0; i < 6; ++i) tiles.push_back(square(10 * i, 20));
  tiles.push_back(box2(0, 0, 40, 8));
  tiles.push_back(box2(31, 3, Q(63, 2), Q(7, 2)));
  EXPECT_THROW(build_patch(tiles), OverlapError);
  EXPECT_TRUE(build_patch({}).empty());
}

TEST(SpatialIndex, TilesContainingMatchesBruteForce) {
  auto wall = brick_wall(5, 5);
  std::mt19937 rng(2);
  std::uniform_int_distribution<long> num(-4, 44);
  for (int iter = 0; iter < 300; ++iter) {
    Vector x = V2(Q(num(rng), 4), Q(num(rng) / 2, 4));
    std::vector<std::size_t> brute;
    for (const auto& t : wall.tiles())
      if (t.shape.locate(x) != Location::Outside) brute.push_back(t.id);
    EXPECT_EQ(wall.tiles_containing(x), brute) << x;
  }
}

TEST(Fig1, TileCountsAndWidths) {
  EXPECT_EQ(fig1_patch(0).size(), 3u);
  auto p = fig1_patch(5);
  ASSERT_EQ(p.size(), 8u);  // R, S and T_0 .. T_5
  const auto& t5 = p.tile(7).shape;
  Scalar lo = t5.vertices()[0][0], hi = lo;
  for (const auto& v : t5.vertices()) {
    lo = std::min(lo, v[0]);
    hi = std::max(hi, v[0]);
  }
  EXPECT_EQ(hi - lo, Q(1, 64));
  EXPECT_EQ(lo, Q(1, 64));
}

TEST(Fig1, DiscCounts) {
  // Closed disc of radius 1/4: R, S and every strip T_k with k >= 1.
  for (std::size_t K : {0u, 1u, 3u, 10u}) {
    std::size_t expected = 2 + K;
    EXPECT_EQ(tiles_meeting_disc(fig1_patch(K), V2(0, 0), Q(1, 4)), expected) << K;
  }
  // Radius 1/8 at K = 3 reaches R, S, T_2, T_3.
  EXPECT_EQ(tiles_meeting_disc(fig1_patch(3), V2(0, 0), Q(1, 8)), 4u);
}

TEST(InteriorPoints, Examples) {
  EXPECT_EQ(interior_points(square_grid(2, 2)), (std::vector<Vector>{V2(1, 1)}));
  EXPECT_TRUE(interior_points(build_patch({square(0, 0)})).empty());
  for (std::size_t K : {0u, 2u, 6u}) {
    auto pts = interior_points(fig1_patch(K));
    EXPECT_EQ(std::count(pts.begin(), pts.end(), V2(0, 0)), 0);
  }
}

TEST(LonelyScan, GridHasNoViolations) {
  auto scan = lonely_vertex_scan(square_grid(2, 2));
  EXPECT_TRUE(scan.violations.empty());
  EXPECT_EQ(scan.points_checked, 9u);
  EXPECT_EQ(scan.interior_count, 1u);
}

TEST(LonelyScan, Fig1OriginIsBoundarySingleton) {
  for (std::size_t K = 0; K <= 12; ++K) {
    auto p = fig1_patch(K);
    auto scan = lonely_vertex_scan(p);
    EXPECT_TRUE(scan.violations.empty()) << K;
    EXPECT_EQ(p.vertex_count(V2(0, 0)), 1u) << K;
    EXPECT_NE(std::find(scan.boundary_singletons.begin(), scan.boundary_singletons.end(), V2(0, 0)),
              scan.boundary_singletons.end())
        << K;
    EXPECT_FALSE(build_star(p, V2(0, 0)).complete) << K;
  }
}

TEST(LonelyScan, StarCountConsistency) {
  for (const auto& p : {brick_wall(5, 5), square_grid(3, 4)}) {
    for (const auto& star : vertex_stars(p)) {
      std::size_t brute = 0;
      for (const auto& t : p.tiles()) brute += is_vertex(t.shape, star.center);
      EXPECT_EQ(p.vertex_count(star.center), brute);
      if (star.complete) {
        EXPECT_EQ(star.a_count(), brute);
      }
    }
    EXPECT_TRUE(lonely_vertex_scan(p).violations.empty());
  }
}

TEST(LonelyScan, PinwheelCornerIsNotLonely) {
  // (1,1) is a corner of the unit square and sits mid-edge on the right strip.
  std::vector<Polytope> tiles{square(0, 0), box2(1, 0, 2, 2), box2(-1, 1, 1, 2), box2(-1, -1, 2, 0),
                              box2(-1, 0, 0, 1)};
  auto p = build_patch(tiles);
  ASSERT_TRUE(build_star(p, V2(1, 1)).complete);
  EXPECT_EQ(p.vertex_count(V2(1, 1)), 2u);  // the top strip has it as a corner too
  EXPECT_TRUE(lonely_vertex_scan(p).violations.empty());
}

TEST(Graph, CountsMatchGridFormula) {
  auto one = build_graph(build_patch({square(0, 0)}));
  EXPECT_EQ(one.nodes().size(), 4u);
  EXPECT_EQ(one.edges().size(), 4u);
  EXPECT_EQ(one.components().size(), 1u);
  for (long nx = 1; nx <= 4; ++nx)
    for (long ny = 1; ny <= 3; ++ny) {
      auto g = build_graph(square_grid(nx, ny));
      EXPECT_EQ(g.nodes().size(), static_cast<std::size_t>((nx + 1) * (ny + 1)));
      EXPECT_EQ(g.edges().size(), static_cast<std::size_t>(nx * (ny + 1) + ny * (nx + 1)));
      EXPECT_EQ(g.components().size(), 1u);
    }
  auto g22 = build_graph(square_grid(2, 2));
  EXPECT_EQ(g22.nodes().size(), 9u);
  EXPECT_EQ(g22.edges().size(), 12u);
}

TEST(Graph, BrickWallEdgesAreWholeTileEdges) {
  // The T-vertex (1,1) splits no edge: the brick top (0,1)-(2,1) stays one
  // graph edge, as do the bottoms (0,1)-(1,1) and (1,1)-(3,1) above it.
  auto g = build_graph(brick_wall(5, 5));
  auto a = *g.node_index(V2(0, 1)), b = *g.node_index(V2(2, 1)), c = *g.node_index(V2(1, 1));
  auto d = *g.node_index(V2(3, 1));
  auto has = [&](std::size_t u, std::size_t v) {
    return std::find(g.edges().begin(), g.edges().end(), std::pair{std::min(u, v), std::max(u, v)}) != g.edges().end();
  };
  EXPECT_TRUE(has(a, b));
  EXPECT_TRUE(has(a, c));
  EXPECT_TRUE(has(c, d));
  EXPECT_FALSE(has(c, b));
  EXPECT_EQ(g.components().size(), 1u);
}

TEST(Graph, ComponentsReachBoundary) {
  auto grid = square_grid(2, 2);
  auto rep = components_reach_boundary(grid, build_graph(grid));
  EXPECT_TRUE(rep.pass);
  ASSERT_EQ(rep.components.size(), 1u);
  EXPECT_EQ(rep.components[0].boundary_nodes, 8u);

  auto single = build_patch({square(0, 0)});
  auto rep1 = components_reach_boundary(single, build_graph(single));
  EXPECT_TRUE(rep1.pass);
  EXPECT_EQ(rep1.components[0].boundary_nodes, 4u);
}

TEST(Graph, NegativeControlDeletingBoundaryEdges) {
  auto grid = square_grid(3, 3);
  auto g = build_graph(grid);
  auto flags = boundary_flags(grid, g);
  auto cut = g.without_edges([&](const VertexGraph::Edge& e) { return flags[e.first] || flags[e.second]; });
  auto rep = components_reach_boundary(grid, cut);
  EXPECT_FALSE(rep.pass);
  std::size_t inner = 0;
  for (const auto& c : rep.components) inner += c.boundary_nodes == 0;
  EXPECT_EQ(inner, 1u);
}

TEST(EdgeCover, GridAndBrickWall) {
  auto grid = square_grid(2, 2);
  EXPECT_TRUE(edge_cover_check(grid).empty());
  EXPECT_EQ(uncovered_samples(grid), 0u);
  auto wall = brick_wall(5, 5);
  EXPECT_TRUE(edge_cover_check(wall).empty());
  EXPECT_EQ(uncovered_samples(wall), 0u);
}

TEST(EdgeCover, NegativeControlDeletedTile) {
  auto holey = without_tile(square_grid(3, 3), 4);
  auto gaps = edge_cover_check(holey);
  ASSERT_EQ(gaps.size(), 4u);
  std::set<Vector> mids;
  for (const auto& g : gaps) {
    Vector mid = (g.gap_from + g.gap_to) * Q(1, 2);
    mids.insert(mid);
    EXPECT_FALSE(on_other_boundary(holey, mid, g.tile));
  }
  std::set<Vector> expected{V2(Q(3, 2), 1), V2(2, Q(3, 2)), V2(Q(3, 2), 2), V2(1, Q(3, 2))};
  EXPECT_EQ(mids, expected);
  EXPECT_GT(uncovered_samples(holey), 0u);

  auto wall = without_tile(brick_wall(5, 5), 12);
  auto wall_gaps = edge_cover_check(wall);
  EXPECT_GE(wall_gaps.size(), 1u);
  for (const auto& g : wall_gaps) EXPECT_FALSE(on_other_boundary(wall, (g.gap_from + g.gap_to) * Q(1, 2), g.tile));
}

TEST(PatchFile, ReadCorpusBrickWall) {
  std::ifstream in(corpus("patches/brick_wall_5x5.txt"));
  ASSERT_TRUE(in);
  auto file = read_patch_file(in);
  EXPECT_EQ(file.dim, 2u);
  EXPECT_EQ(file.radicand, 0u);
  auto expected = brick_wall_tiles(5, 5);
  ASSERT_EQ(file.tiles.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(file.tiles[i].vertices(), expected[i].vertices());
}

TEST(PatchFile, RoundTripWithRadicals) {
  Scalar r2 = Scalar::sqrt_of(2);
  auto p = build_patch({box2(0, 0, r2, 1), box2(r2, 0, r2 + Scalar(1), 1)});
  std::string text = write_patch_file(p, 2);
  std::istringstream in(text);
  auto file = read_patch_file(in);
  EXPECT_EQ(file.radicand, 2u);
  ASSERT_EQ(file.tiles.size(), 2u);
  EXPECT_EQ(write_patch_file(build_patch(file.tiles), 2), text);
}

TEST(PatchFile, Errors) {
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return read_patch_file(in);
  };
  EXPECT_THROW(parse(""), SchemaError);
  EXPECT_THROW(parse("2\n"), SchemaError);
  EXPECT_THROW(parse("2 4\n"), SchemaError);
  try {
    parse("2 0\n0,0; 1,0; 1,1\n0,0; 1,x; 1,1\n");
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.field(), "line 3");
  }
  EXPECT_THROW(parse("2 0\n0,0; 1,0; 0,1+1*sqrt(2)\n"), SchemaError);
  EXPECT_THROW(parse("2 0\n0,0; 1,0; 2,0\n"), SchemaError);
  EXPECT_THROW(parse("2 0\n0,0,0; 1,0; 0,1\n"), SchemaError);
  std::ifstream empty(fixture("empty_patch.txt"));
  EXPECT_TRUE(read_patch_file(empty).tiles.empty());
  std::ifstream overlap(fixture("overlap_patch.txt"));
  EXPECT_THROW(build_patch(read_patch_file(overlap).tiles), OverlapError);
}
