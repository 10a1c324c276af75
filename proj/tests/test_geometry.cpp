#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "brute_force.hpp"
#include "levelset/errors.hpp"
#include "levelset/geometry.hpp"

using namespace levelset;

TEST_CASE("bisect splits into 2^d children with doubled indices") {
  SUBCASE("d=1 root") {
    const auto kids = bisect(DyadicCube::unit(1));
    REQUIRE(kids.size() == 2);
    CHECK(kids[0].index == std::vector<std::int64_t>{0});
    CHECK(kids[1].index == std::vector<std::int64_t>{1});
    CHECK(kids[0].depth == 1);
    CHECK(kids[0].low_corner()[0] == 0.0);
    CHECK(kids[1].low_corner()[0] == 0.5);
  }
  SUBCASE("d=2 root gives 4 cubes of side 1/2") {
    const auto kids = bisect(DyadicCube::unit(2));
    REQUIRE(kids.size() == 4);
    for (const auto& c : kids) CHECK(c.side() == 0.5);
  }
  SUBCASE("d=2 depth 2 index (1,3)") {
    const auto kids = bisect(DyadicCube(2, 2, {1, 3}));
    std::set<std::vector<std::int64_t>> got;
    for (const auto& c : kids) {
      CHECK(c.depth == 3);
      got.insert(c.index);
    }
    const std::set<std::vector<std::int64_t>> want{
        {2, 6}, {3, 6}, {2, 7}, {3, 7}};
    CHECK(got == want);
  }
  SUBCASE("depth limit is a hard error") {
    DyadicCube c(1, kMaxDepth, {0});
    CHECK_THROWS_AS(bisect(c), DepthLimitExceeded);
  }
}

TEST_CASE("bisection partitions the parent exactly") {
  // Union of children equals the parent on corner indices; volumes add up.
  std::mt19937_64 rng(2718);
  std::vector<DyadicCube> parents{DyadicCube(2, 3, {5, 2}),
                                  DyadicCube(3, 1, {1, 0, 1})};
  for (int rep = 0; rep < 40; ++rep) {
    const int d = 1 + rep % 3;
    const int depth = static_cast<int>(rng() % 50);
    std::vector<std::int64_t> idx(d);
    for (auto& k : idx)
      k = std::uniform_int_distribution<std::int64_t>(
          0, (std::int64_t{1} << depth) - 1)(rng);
    parents.emplace_back(d, depth, std::move(idx));
  }
  for (const auto& parent : parents) {
    const auto kids = bisect(parent);
    double volume = 0.0;
    for (const auto& c : kids) {
      volume += std::pow(c.side(), c.dim);
      for (int j = 0; j < c.dim; ++j) {
        CHECK(c.index[j] >= 2 * parent.index[j]);
        CHECK(c.index[j] <= 2 * parent.index[j] + 1);
      }
    }
    CHECK(volume == doctest::Approx(std::pow(parent.side(), parent.dim))
                        .epsilon(1e-12));
    // Interiors pairwise disjoint: distinct indices at equal depth.
    std::set<std::vector<std::int64_t>> distinct;
    for (const auto& c : kids) distinct.insert(c.index);
    CHECK(distinct.size() == kids.size());
    // Every child corner is a parent corner or a parent edge midpoint,
    // exactly representable either way: child corners live on the parent's
    // half-grid.
    for (const auto& c : kids) {
      for (const auto& v : c.vertices()) {
        CHECK(parent.contains(v));
      }
    }
  }
}

TEST_CASE("cube geometry") {
  SUBCASE("d=1 depth 1 index 1") {
    const auto g = cube_geometry(DyadicCube(1, 1, {1}));
    CHECK(g.center[0] == 0.75);
    CHECK(g.side == 0.5);
    REQUIRE(g.vertices.size() == 2);
    CHECK(g.vertices[0][0] == 0.5);
    CHECK(g.vertices[1][0] == 1.0);
  }
  SUBCASE("d=2 root") {
    const auto g = cube_geometry(DyadicCube::unit(2));
    CHECK(g.center == Point{0.5, 0.5});
    CHECK(g.vertices.size() == 4);
    CHECK(g.side == 1.0);
  }
  SUBCASE("d=2 depth 3 index (5,2)") {
    const auto g = cube_geometry(DyadicCube(2, 3, {5, 2}));
    CHECK(g.center[0] == 0.6875);
    CHECK(g.center[1] == 0.3125);
  }
}

TEST_CASE("checkerboard classes") {
  SUBCASE("d=2 depth 1 enumerates all four classes") {
    CHECK(checkerboard_class(DyadicCube(2, 1, {0, 0})) == 0);
    CHECK(checkerboard_class(DyadicCube(2, 1, {1, 0})) == 1);
    CHECK(checkerboard_class(DyadicCube(2, 1, {0, 1})) == 2);
    CHECK(checkerboard_class(DyadicCube(2, 1, {1, 1})) == 3);
  }
  SUBCASE("d=1 depth 3 index 5") {
    CHECK(checkerboard_class(DyadicCube(1, 3, {5})) == 1);
  }
  SUBCASE("same-class pair at depth 2 sits exactly 2^-2 apart") {
    const DyadicCube a(2, 2, {0, 0});
    const DyadicCube b(2, 2, {2, 0});
    CHECK(checkerboard_class(a) == checkerboard_class(b));
    CHECK(cube_distance(a, b) == 0.25);
  }
}

TEST_CASE("checkerboard separation holds exhaustively for small d and depth") {
  for (int d = 1; d <= 3; ++d) {
    for (int depth = 1; depth <= 4; ++depth) {
      const auto cubes = brute::all_cubes(d, depth);
      for (std::size_t i = 0; i < cubes.size(); ++i) {
        for (std::size_t j = i + 1; j < cubes.size(); ++j) {
          if (checkerboard_class(cubes[i]) != checkerboard_class(cubes[j]))
            continue;
          CHECK(cube_distance(cubes[i], cubes[j]) >=
                std::ldexp(1.0, -depth));
        }
      }
    }
  }
}

TEST_CASE("greedy packing") {
  SUBCASE("all gaps above scale keep everything") {
    const std::vector<Point> pts{{0.0}, {0.3}, {0.6}, {0.9}};
    CHECK(greedy_packing(pts, 0.25).count == 4);
  }
  SUBCASE("middle point is absorbed") {
    const std::vector<Point> pts{{0.0}, {0.1}, {0.2}};
    const auto res = greedy_packing(pts, 0.15);
    REQUIRE(res.count == 2);
    CHECK(res.witnesses[0][0] == 0.0);
    CHECK(res.witnesses[1][0] == 0.2);
  }
  SUBCASE("4x4 grid with spacing 1/3 at r=0.3 keeps all 16") {
    std::vector<Point> pts;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        pts.push_back({i / 3.0, j / 3.0});
    // Independent check that all pairwise gaps clear the scale.
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        CHECK(sup_distance(pts[i], pts[j]) >= 1.0 / 3.0);
    CHECK(greedy_packing(pts, 0.3).count == 16);
  }
}

TEST_CASE("greedy packing is valid and maximal on random clouds") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const int d = 1 + static_cast<int>(seed % 3);
    const auto pts = brute::random_cloud(d, 12, seed);
    for (double r : {0.1, 0.25, 0.5}) {
      const auto res = greedy_packing(pts, r);
      for (std::size_t i = 0; i < res.witnesses.size(); ++i)
        for (std::size_t j = i + 1; j < res.witnesses.size(); ++j)
          CHECK(sup_distance(res.witnesses[i], res.witnesses[j]) > r);
      for (const auto& p : pts) {
        double nearest = 1e9;
        for (const auto& w : res.witnesses)
          nearest = std::min(nearest, sup_distance(p, w));
        CHECK(nearest <= r);
      }
      // Greedy stays within a factor two of the exact optimum here, and the
      // optimum respects the unit-cube bound.
      const long long exact = brute::exact_packing(pts, r);
      CHECK(2 * res.count >= exact);
      CHECK(exact <= unit_cube_packing_bound(d, r));
    }
  }
}

TEST_CASE("unit cube packing bound") {
  CHECK(unit_cube_packing_bound(2, 0.3) == 16);
  CHECK(unit_cube_packing_bound(1, 2.0) == 1);
  CHECK(unit_cube_packing_bound(3, 0.5) == 27);
}

TEST_CASE("two-scale packing inequality on random clouds") {
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    const int d = 1 + static_cast<int>(seed % 3);
    const auto pts = brute::random_cloud(d, 10, seed);
    const double r1 = 0.1, r2 = 0.3;
    const long long n1 = brute::exact_packing(pts, r1);
    const long long n2 = brute::exact_packing(pts, r2);
    CHECK(double(n1) <= std::pow(1.0 + 4.0 * r2 / r1, d) * double(n2));
  }
}

TEST_CASE("cube record serialization round-trips") {
  const DyadicCube c(3, 5, {7, 0, 31});
  CHECK(cube_to_record(c) == "depth:5 idx:7,0,31");
  CHECK(cube_from_record(cube_to_record(c)) == c);
  CHECK_THROWS(cube_from_record("idx:1,2"));
}

TEST_CASE("cube invariants are enforced") {
  CHECK_THROWS(DyadicCube(2, 1, {0, 2}));   // index out of range
  CHECK_THROWS(DyadicCube(2, -1, {0, 0}));  // negative depth
  CHECK_THROWS(DyadicCube(2, 60, {0, 0}));  // beyond the exactness cap
  // Corner coordinates are exact binary fractions at the deepest level.
  DyadicCube deep(1, kMaxDepth, {(std::int64_t{1} << kMaxDepth) - 1});
  CHECK(deep.low_corner()[0] < 1.0);
  CHECK(deep.low_corner()[0] + deep.side() == 1.0);
}
