#include <catch2/catch_amalgamated.hpp>

#include "ssr/core.hpp"
#include "support/oracles.hpp"

using namespace ssr;

static Instance inst(std::initializer_list<double> items, double eps = 0.5) {
  return validate_instance(std::vector<double>(items), eps);
}

TEST_CASE("ratio follows the z/0 = infinity convention", "[core][ratio]") {
  Instance i = inst({1, 2, 3});
  CHECK(solution_ratio(i, {2}, {0, 1}).value() == 1.0);          // 3 vs 1+2
  CHECK(solution_ratio(i, {}, {0}).is_infinite());               // empty X
  CHECK(solution_ratio(i, {}, {}).is_infinite());                // 0/0
  Instance j = inst({2, 5});
  CHECK(solution_ratio(j, {1}, {0}).value() == 2.5);
  CHECK(solution_ratio(j, {0}, {1}).value() == 2.5);  // symmetric
}

TEST_CASE("ratio rejects overlapping index sets", "[core][ratio]") {
  Instance i = inst({1, 2, 3});
  CHECK_THROWS_AS(solution_ratio(i, {0, 1}, {1}), InvalidSolutionError);
  CHECK_THROWS_AS(solution_ratio(i, {5}, {}), InvalidSolutionError);
}

TEST_CASE("validate_instance sorts and rejects bad input", "[core][validate]") {
  Instance i = validate_instance({3, 1, 2}, 0.5);
  CHECK(i.items == std::vector<double>{1, 2, 3});
  CHECK(i.epsilon == 0.5);
  CHECK_THROWS_AS(validate_instance({1, -2}, 0.5), NonpositiveItemError);
  CHECK_THROWS_AS(validate_instance({1, 2}, 1.5), EpsilonRangeError);
  CHECK_THROWS_AS(validate_instance({1, 2}, 0.0), EpsilonRangeError);
  CHECK_THROWS_AS(validate_instance({1}, 0.5), TooFewItemsError);
  // Duplicates are multiset entries, not errors.
  CHECK(validate_instance({2, 2}, 0.5).items == std::vector<double>{2, 2});
}

TEST_CASE("brute_force_opt on the worked examples", "[core][oracle]") {
  SECTION("(1,2,3) balances exactly") {
    Solution s = brute_force_opt(inst({1, 2, 3}));
    CHECK(s.ratio.value() == 1.0);
    // Lexicographic tie-break: {1,2} vs {3} precedes {3} vs {1,2}.
    CHECK(s.x_indices == std::vector<int>{0, 1});
    CHECK(s.y_indices == std::vector<int>{2});
  }
  SECTION("(2,5) has a single pairing") {
    Solution s = brute_force_opt(inst({2, 5}));
    CHECK(s.ratio.value() == 2.5);
  }
  SECTION("the 1..n-1 plus n(n-1)/2 family balances") {
    Solution s = brute_force_opt(inst({1, 2, 3, 4, 5, 15}));
    CHECK(s.ratio.value() == 1.0);
  }
  SECTION("cap is enforced") {
    std::vector<double> big(15, 1.0);
    CHECK_THROWS_AS(brute_force_opt(validate_instance(big, 0.5)), SizeLimitError);
  }
}

TEST_CASE("brute_force_opt_l restricts to pairs using the max value", "[core][oracle]") {
  CHECK(brute_force_opt_l(inst({1, 2, 3})).ratio.value() == 1.0);
  CHECK(brute_force_opt_l(inst({1, 1})).ratio.value() == 1.0);
  CHECK(brute_force_opt_l(inst({1, 2, 4, 100})).ratio.value() == 100.0 / 7.0);
  // The unconstrained optimum can be strictly better.
  Instance i = inst({4, 5, 9, 1000});
  CHECK(brute_force_opt(i).ratio.value() == 1.0);
  CHECK(brute_force_opt_l(i).ratio.value() == 1000.0 / 18.0);
}

TEST_CASE("oracle ordering and duplicate properties", "[core][oracle][property]") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + static_cast<int>(rng() % 7);
    auto units = testing::random_items(rng, n, 1, 50);
    Instance i = testing::instance_from_units(units);
    Solution opt = brute_force_opt(i);
    Solution opt_l = brute_force_opt_l(i);
    REQUIRE(opt.ratio <= opt_l.ratio);
    REQUIRE(opt.ratio.value() >= 1.0);
    REQUIRE(testing::valid_disjoint_pair(n, opt.x_indices, opt.y_indices));
    bool dup = false;
    for (int k = 0; k + 1 < n; ++k) dup |= i.items[k] == i.items[k + 1];
    if (dup) REQUIRE(opt.ratio.value() == 1.0);
  }
}

TEST_CASE("scaling items leaves oracle results unchanged", "[core][oracle][property]") {
  std::mt19937_64 rng(77);
  for (double c : {0.5, 2.0, 3.0, 7.0}) {
    for (int trial = 0; trial < 25; ++trial) {
      int n = 3 + static_cast<int>(rng() % 5);
      auto units = testing::random_items(rng, n, 1, 40);
      Instance a = testing::instance_from_units(units);
      std::vector<double> scaled;
      for (std::int64_t u : units) scaled.push_back(static_cast<double>(u) * c);
      Instance b = validate_instance(scaled, 0.5);
      Solution sa = brute_force_opt(a), sb = brute_force_opt(b);
      REQUIRE(sa.ratio.value() == sb.ratio.value());
      REQUIRE(sa.x_indices == sb.x_indices);
      REQUIRE(sa.y_indices == sb.y_indices);
      Solution la = brute_force_opt_l(a), lb = brute_force_opt_l(b);
      REQUIRE(la.ratio.value() == lb.ratio.value());
      REQUIRE(la.x_indices == lb.x_indices);
      REQUIRE(la.y_indices == lb.y_indices);
    }
  }
}

TEST_CASE("ExtendedReal ordering", "[core]") {
  CHECK(ExtendedReal::infinity() > ExtendedReal::of(1e300));
  CHECK(ExtendedReal::quotient(5, 0).is_infinite());
  CHECK(ExtendedReal::quotient(0, 0).is_infinite());
  CHECK(ExtendedReal::quotient(3, 2).value() == 1.5);
  CHECK_THROWS_AS(ExtendedReal::of(-1.0), ValidationError);
}
