#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "ssr/pigeonhole.hpp"
#include "support/oracles.hpp"

using namespace ssr;

namespace {

std::int64_t sum_at(std::span<const std::int64_t> items, const std::vector<int>& idx) {
  std::int64_t s = 0;
  for (int i : idx) s += items[static_cast<std::size_t>(i)];
  return s;
}

}  // namespace

TEST_CASE("equal_sum_pair worked examples", "[pigeonhole]") {
  SECTION("forced by 2^n > sum + 1") {
    std::vector<std::int64_t> items{1, 2, 3};
    auto pair = equal_sum_pair(items);
    REQUIRE(pair.has_value());
    CHECK(sum_at(items, pair->x_indices) == sum_at(items, pair->y_indices));
    CHECK(testing::valid_disjoint_pair(3, pair->x_indices, pair->y_indices));
  }
  SECTION("powers of two have all-distinct sums") {
    CHECK_FALSE(equal_sum_pair(std::vector<std::int64_t>{1, 2, 4}).has_value());
  }
  SECTION("a duplicate pairs with itself") {
    auto pair = equal_sum_pair(std::vector<std::int64_t>{5, 5});
    REQUIRE(pair.has_value());
    CHECK(pair->x_indices.size() == 1);
    CHECK(pair->y_indices.size() == 1);
    CHECK(pair->sum == 5);
  }
  SECTION("cap enforcement") {
    std::vector<std::int64_t> big(25, 1);
    CHECK_THROWS_AS(equal_sum_pair(big), SizeLimitError);
  }
}

TEST_CASE("equal_sum_pair never misses under the pigeonhole condition",
          "[pigeonhole][property]") {
  std::mt19937_64 rng(31);
  int found = 0;
  while (found < 500) {
    int n = 4 + static_cast<int>(rng() % 13);
    auto items = testing::random_items(rng, n, 1, 1 + static_cast<std::int64_t>(rng() % 400));
    std::int64_t total = std::accumulate(items.begin(), items.end(), std::int64_t{0});
    double lhs = std::pow(2.0, n);
    if (!(lhs > static_cast<double>(total) + 1.0)) continue;
    auto pair = equal_sum_pair(items);
    REQUIRE(pair.has_value());
    REQUIRE(sum_at(items, pair->x_indices) == sum_at(items, pair->y_indices));
    REQUIRE(!pair->x_indices.empty());
    REQUIRE(!pair->y_indices.empty());
    REQUIRE(testing::valid_disjoint_pair(n, pair->x_indices, pair->y_indices));
    ++found;
  }
}

TEST_CASE("refined_pigeonhole_solve worked examples", "[pigeonhole][refined]") {
  SECTION("dense consecutive items") {
    std::vector<std::int64_t> items{1, 2, 3, 4, 5, 6};
    auto out = refined_pigeonhole_solve(items, 2);
    REQUIRE(out.found);
    CHECK(sum_at(items, out.x_indices) == sum_at(items, out.y_indices));
    bool touches_t = false;
    for (int i : out.x_indices) touches_t |= i >= 4;
    for (int i : out.y_indices) touches_t |= i >= 4;
    CHECK(touches_t);
  }
  SECTION("duplicate split across B and T") {
    std::vector<std::int64_t> items{3, 3, 10};
    auto out = refined_pigeonhole_solve(items, 2);
    REQUIRE(out.found);
    CHECK(out.sum == 3);
    CHECK(sum_at(items, out.x_indices) == 3);
    CHECK(sum_at(items, out.y_indices) == 3);
    bool touches_t = false;
    for (int i : out.x_indices) touches_t |= i >= 1;
    for (int i : out.y_indices) touches_t |= i >= 1;
    CHECK(touches_t);
  }
  SECTION("all-distinct powers of two are inapplicable") {
    std::vector<std::int64_t> items{1, 2, 4, 8, 16, 32};
    auto out = refined_pigeonhole_solve(items, 2);
    CHECK_FALSE(out.found);
  }
  SECTION("tau validation") {
    std::vector<std::int64_t> items{1, 2};
    CHECK_THROWS_AS(refined_pigeonhole_solve(items, 0), ValidationError);
    CHECK_THROWS_AS(refined_pigeonhole_solve(items, 3), ValidationError);
  }
}

TEST_CASE("refined pigeonhole succeeds whenever the product condition holds",
          "[pigeonhole][refined][property]") {
  std::mt19937_64 rng(32);
  int found = 0;
  while (found < 500) {
    int n = 4 + static_cast<int>(rng() % 9);
    int tau = 1 + static_cast<int>(rng() % std::min(n - 1, 4));
    auto items = testing::random_items(rng, n, 1, 1 + static_cast<std::int64_t>(rng() % 60));
    std::sort(items.begin(), items.end());
    std::span<const std::int64_t> all(items);
    auto b = all.first(static_cast<std::size_t>(n - tau));
    auto t = all.subspan(static_cast<std::size_t>(n - tau));
    // The product condition is decided by brute force, independent of the
    // solver's own subset-sum machinery.
    double product = static_cast<double>(testing::brute_subset_sums(b).size()) *
                     static_cast<double>(testing::brute_subset_sums(t).size());
    std::int64_t total = std::accumulate(items.begin(), items.end(), std::int64_t{0});
    if (!(product > static_cast<double>(total) + 1.0)) continue;

    auto out = refined_pigeonhole_solve(items, tau);
    REQUIRE(out.found);
    std::int64_t sx = sum_at(items, out.x_indices);
    REQUIRE(sx == sum_at(items, out.y_indices));
    REQUIRE(sx > 0);
    REQUIRE(testing::valid_disjoint_pair(n, out.x_indices, out.y_indices));
    bool touches_t = false;
    for (int i : out.x_indices) touches_t |= i >= n - tau;
    for (int i : out.y_indices) touches_t |= i >= n - tau;
    REQUIRE(touches_t);
    ++found;
  }
}

TEST_CASE("refined pigeonhole partial sumset respects the step-2 bound",
          "[pigeonhole][refined][property]") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 4 + static_cast<int>(rng() % 9);
    int tau = 1 + static_cast<int>(rng() % 3);
    auto items = testing::random_items(rng, n, 1, 120);
    std::sort(items.begin(), items.end());
    std::int64_t max_item = items.back();
    std::int64_t cap = detail::pigeonhole_cap(n, max_item, tau);
    auto grown = subset_sums_capped(
        std::span<const std::int64_t>(items).first(static_cast<std::size_t>(n - tau)), cap,
        false);
    if (grown.reached) {
      // Within factor 2 of n*max/2^tau + 1.
      REQUIRE(static_cast<std::int64_t>(grown.partial.size()) <= 2 * cap);
    }
  }
}
