#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "ssr/sumsets.hpp"
#include "support/oracles.hpp"

using namespace ssr;

TEST_CASE("subset_sums worked examples", "[sumsets]") {
  CHECK(subset_sums(std::vector<std::int64_t>{1, 2}).sums() ==
        std::vector<std::int64_t>{0, 1, 2, 3});
  CHECK(subset_sums(std::vector<std::int64_t>{1, 1}).sums() ==
        std::vector<std::int64_t>{0, 1, 2});
  std::vector<std::int64_t> pow2{1, 2, 4, 8};
  auto s = subset_sums(pow2);
  REQUIRE(s.size() == 16);
  for (std::int64_t v = 0; v < 16; ++v) CHECK(s.sums()[static_cast<std::size_t>(v)] == v);
  CHECK(subset_sums(std::span<const std::int64_t>{}).sums() == std::vector<std::int64_t>{0});
  CHECK_THROWS_AS(subset_sums(std::vector<std::int64_t>{1, 0}), ValidationError);
}

TEST_CASE("subset_sums matches enumeration and reconstructs", "[sumsets][property]") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 120; ++trial) {
    int n = static_cast<int>(rng() % 11);
    auto items = testing::random_items(rng, n, 1, 30);
    SumSet s = subset_sums(items);
    auto expect = testing::brute_subset_sums(items);
    REQUIRE(std::vector<std::int64_t>(expect.begin(), expect.end()) == s.sums());
    REQUIRE(s.sums().front() == 0);
    REQUIRE(s.sums().back() == std::accumulate(items.begin(), items.end(), std::int64_t{0}));
    // Every entry's witness chain reproduces its sum.
    for (std::size_t k = 0; k < s.size(); ++k) {
      std::int64_t got = 0;
      for (int i : s.reconstruct(k)) got += items[static_cast<std::size_t>(i)];
      REQUIRE(got == s.sums()[k]);
    }
  }
}

TEST_CASE("subset sums grow monotonically with more items", "[sumsets][property]") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 1 + static_cast<int>(rng() % 9);
    auto items = testing::random_items(rng, n, 1, 25);
    std::size_t prev = 1;
    for (int k = 1; k <= n; ++k) {
      std::size_t cur = subset_sums(std::span(items).first(k), false).size();
      REQUIRE(cur >= prev);
      prev = cur;
    }
  }
}

TEST_CASE("subset_sums_capped stops at the doubling bound", "[sumsets]") {
  SECTION("powers of two trip the cap at prefix 3") {
    auto r = subset_sums_capped(std::vector<std::int64_t>{1, 2, 4, 8}, 5);
    CHECK(r.reached);
    CHECK(r.prefix_len == 3);
    CHECK(r.partial.size() == 8);
    CHECK(r.partial.size() <= 2 * (5 + 1));
  }
  SECTION("small collapsing multiset never reaches") {
    auto r = subset_sums_capped(std::vector<std::int64_t>{1, 1, 1}, 10);
    CHECK_FALSE(r.reached);
    CHECK(r.prefix_len == 3);
    CHECK(r.partial.sums() == std::vector<std::int64_t>{0, 1, 2, 3});
  }
  SECTION("a single item already exceeds cap 1") {
    auto r = subset_sums_capped(std::vector<std::int64_t>{1}, 1);
    CHECK(r.reached);
    CHECK(r.prefix_len == 1);
  }
  CHECK_THROWS_AS(subset_sums_capped(std::vector<std::int64_t>{1}, 0), ValidationError);
}

TEST_CASE("subset_sums_capped size bound holds on random inputs", "[sumsets][property]") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 1 + static_cast<int>(rng() % 12);
    auto items = testing::random_items(rng, n, 1, 60);
    std::int64_t cap = 1 + static_cast<std::int64_t>(rng() % 40);
    auto r = subset_sums_capped(items, cap);
    if (r.reached) {
      REQUIRE(static_cast<std::int64_t>(r.partial.size()) > cap);
      REQUIRE(static_cast<std::int64_t>(r.partial.size()) <= 2 * cap);
      // The previous prefix was within cap.
      REQUIRE(r.prefix_len >= 1);
    } else {
      REQUIRE(r.prefix_len == n);
      REQUIRE(static_cast<std::int64_t>(r.partial.size()) <= cap);
    }
  }
}

TEST_CASE("gen_points worked examples", "[sumsets][points]") {
  SECTION("single item, all assignments") {
    auto g = gen_points(std::vector<std::int64_t>{1}, PointVariant::kAll);
    CHECK(g.points() == std::vector<GridPoint>{{-1, 1}, {0, 0}, {1, 1}});
  }
  SECTION("single item, largest placed") {
    auto g = gen_points(std::vector<std::int64_t>{1}, PointVariant::kLargest);
    CHECK(g.points() == std::vector<GridPoint>{{-1, 1}, {1, 1}});
  }
  SECTION("two items with domination pruning") {
    auto g = gen_points(std::vector<std::int64_t>{1, 2}, PointVariant::kAll);
    CHECK(g.points() == std::vector<GridPoint>{{-3, 3},
                                               {-2, 2},
                                               {-1, 3},
                                               {0, 0},
                                               {1, 3},
                                               {2, 2},
                                               {3, 3}});
  }
  SECTION("empty edge cases") {
    CHECK(gen_points(std::span<const std::int64_t>{}, PointVariant::kAll).points() ==
          std::vector<GridPoint>{{0, 0}});
    CHECK(gen_points(std::span<const std::int64_t>{}, PointVariant::kNonempty).points().empty());
    CHECK_THROWS_AS(gen_points(std::span<const std::int64_t>{}, PointVariant::kLargest),
                    ValidationError);
  }
}

TEST_CASE("gen_points equals exhaustive enumeration", "[sumsets][points][property]") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 150; ++trial) {
    int n = 1 + static_cast<int>(rng() % 8);
    auto items = testing::random_items(rng, n, 1, 20);
    std::sort(items.begin(), items.end());
    for (auto variant : {PointVariant::kAll, PointVariant::kLargest, PointVariant::kNonempty}) {
      auto got = gen_points(items, variant).points();
      auto expect = testing::brute_points(items, variant);
      REQUIRE(got == expect);
    }
  }
}

TEST_CASE("gen_points witnesses reconstruct their points", "[sumsets][points][property]") {
  std::mt19937_64 rng(15);
  int checked = 0;
  while (checked < 1000) {
    int n = 1 + static_cast<int>(rng() % 8);
    auto items = testing::random_items(rng, n, 1, 25);
    std::sort(items.begin(), items.end());
    for (auto variant : {PointVariant::kAll, PointVariant::kLargest, PointVariant::kNonempty}) {
      auto g = gen_points(items, variant);
      for (std::size_t k = 0; k < g.size(); ++k) {
        auto [x_set, y_set] = g.reconstruct(k);
        REQUIRE(testing::valid_disjoint_pair(n, x_set, y_set));
        std::int64_t sx = 0, sy = 0;
        for (int i : x_set) sx += items[static_cast<std::size_t>(i)];
        for (int i : y_set) sy += items[static_cast<std::size_t>(i)];
        REQUIRE(sx - sy == g.points()[k].x);
        REQUIRE(sx + sy == g.points()[k].y);
        if (variant == PointVariant::kLargest) {
          bool has_last = false;
          for (int i : x_set) has_last |= i == n - 1;
          for (int i : y_set) has_last |= i == n - 1;
          REQUIRE(has_last);
        }
        if (variant == PointVariant::kNonempty) REQUIRE(!(x_set.empty() && y_set.empty()));
        ++checked;
      }
    }
  }
}

TEST_CASE("point sets respect the y >= |x| invariant", "[sumsets][points]") {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 40; ++trial) {
    auto items = testing::random_items(rng, 6, 1, 30);
    std::sort(items.begin(), items.end());
    for (auto variant : {PointVariant::kAll, PointVariant::kLargest, PointVariant::kNonempty}) {
      GeneratedPoints g = gen_points(items, variant);
      for (const GridPoint& p : g.points()) {
        REQUIRE(p.y >= std::abs(p.x));
      }
    }
  }
}
