#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "ssr/core.hpp"
#include "ssr/sumsets.hpp"

namespace ssr {

inline constexpr int kEqualSumEnumerationCap = 24;

// ============================================================================
// Basic pigeonhole (constructive): two disjoint subsets of equal sum
// ============================================================================

struct EqualSumPair {
  std::vector<int> x_indices;  // ascending, disjoint from y
  std::vector<int> y_indices;
  std::int64_t sum = 0;  // common sum after intersection removal
};

namespace detail {

/// Collision store: sum -> first subset mask. Uses a direct-address table
/// when the total sum is small, a hash map otherwise.
class SumSeen {
 public:
  SumSeen(std::int64_t total, std::size_t expected) {
    if (total + 2 <= (std::int64_t{1} << 26)) {
      table_.assign(static_cast<std::size_t>(total) + 2, kEmpty);
    } else {
      map_.reserve(expected * 2);
    }
  }
  /// Returns the previously stored mask for `sum`, or kEmpty and stores.
  std::uint32_t probe(std::int64_t sum, std::uint32_t mask) {
    if (!table_.empty()) {
      auto& slot = table_[static_cast<std::size_t>(sum)];
      if (slot != kEmpty) return slot;
      slot = mask;
      return kEmpty;
    }
    auto [it, inserted] = map_.try_emplace(sum, mask);
    return inserted ? kEmpty : it->second;
  }
  static constexpr std::uint32_t kEmpty = 0xffffffffu;

 private:
  std::vector<std::uint32_t> table_;
  std::unordered_map<std::int64_t, std::uint32_t> map_;
};

inline std::vector<int> mask_to_indices(std::uint32_t mask) {
  std::vector<int> out;
  for (int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1u) out.push_back(i);
  }
  return out;
}

}  // namespace detail

/// First pair of distinct subsets sharing a sum (depth-first enumeration
/// order), with the intersection removed so the returned sets are disjoint.
/// Guaranteed to find a pair whenever 2^|items| > sum(items) + 1.
inline std::optional<EqualSumPair> equal_sum_pair(std::span<const std::int64_t> items,
                                                  int cap = kEqualSumEnumerationCap) {
  detail::check_grid_items(items);
  const int n = static_cast<int>(items.size());
  if (n > cap) {
    throw SizeLimitError("equal_sum_pair: " + std::to_string(n) + " items exceed cap " +
                         std::to_string(cap));
  }
  std::int64_t total = std::accumulate(items.begin(), items.end(), std::int64_t{0});
  detail::SumSeen seen(total, std::size_t{1} << std::min(n, 22));

  std::uint32_t found_a = 0, found_b = 0;
  // Subsets in depth-first order: item i excluded before included.
  auto walk = [&](auto&& self, int i, std::int64_t sum, std::uint32_t mask) -> bool {
    if (i == n) {
      std::uint32_t prev = seen.probe(sum, mask);
      if (prev != detail::SumSeen::kEmpty) {
        found_a = prev;
        found_b = mask;
        return true;
      }
      return false;
    }
    if (self(self, i + 1, sum, mask)) return true;
    return self(self, i + 1, sum + items[static_cast<std::size_t>(i)],
                mask | (std::uint32_t{1} << i));
  };
  if (!walk(walk, 0, 0, 0)) return std::nullopt;

  std::uint32_t inter = found_a & found_b;
  EqualSumPair pair;
  pair.x_indices = detail::mask_to_indices(found_a & ~inter);
  pair.y_indices = detail::mask_to_indices(found_b & ~inter);
  std::int64_t sx = 0, sy = 0;
  for (int i : pair.x_indices) sx += items[static_cast<std::size_t>(i)];
  for (int i : pair.y_indices) sy += items[static_cast<std::size_t>(i)];
  internal_check(sx == sy, "collision subsets must have equal sums after trimming");
  internal_check(!pair.x_indices.empty() && !pair.y_indices.empty(),
                 "distinct equal-sum subsets cannot nest, both sides stay nonempty");
  pair.sum = sx;
  return pair;
}

// ============================================================================
// Refined pigeonhole over a bottom/top split (Lemma-8/9 style)
// ============================================================================

struct PigeonholeOutcome {
  bool found = false;          // false: the search ended with no equal-sum pair
  std::vector<int> x_indices;  // indices into the input item list
  std::vector<int> y_indices;
  std::int64_t sum = 0;
  int step = 0;        // 1 = found among T alone, 4 = meet in the middle
  int prefix_len = 0;  // how many B items the subset-sum growth consumed
};

namespace detail {

/// Threshold n*max/2^tau as an exact integer floor, saturating safely.
inline std::int64_t pigeonhole_cap(std::int64_t n, std::int64_t max_item, int tau) {
  __int128 prod = static_cast<__int128>(n) * max_item;
  __int128 shifted = tau >= 127 ? 0 : (prod >> tau);
  __int128 cap = shifted + 1;
  const __int128 lim = std::numeric_limits<std::int64_t>::max();
  return static_cast<std::int64_t>(cap > lim ? lim : cap);
}

}  // namespace detail

namespace detail {

/// Body of refined_pigeonhole_solve; `precomputed` optionally supplies the
/// step-2 prefix growth when the caller has already run the identical
/// subset_sums_capped check (the bounded solver does).
inline PigeonholeOutcome refined_pigeonhole_impl(std::span<const std::int64_t> items, int tau,
                                                 const CappedSumSet* precomputed) {
  detail::check_grid_items(items);
  const int n = static_cast<int>(items.size());
  if (tau < 1 || tau > n) {
    throw ValidationError("tau must lie in [1, |I|], got " + std::to_string(tau));
  }

  // T = the tau largest items (ties resolved toward larger input index).
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return items[static_cast<std::size_t>(a)] < items[static_cast<std::size_t>(b)];
  });
  std::vector<int> b_idx(order.begin(), order.end() - tau);
  std::vector<int> t_idx(order.end() - tau, order.end());
  std::sort(b_idx.begin(), b_idx.end());
  std::sort(t_idx.begin(), t_idx.end());
  std::vector<std::int64_t> t_items;
  t_items.reserve(t_idx.size());
  for (int i : t_idx) t_items.push_back(items[static_cast<std::size_t>(i)]);
  std::vector<std::int64_t> b_items;
  b_items.reserve(b_idx.size());
  for (int i : b_idx) b_items.push_back(items[static_cast<std::size_t>(i)]);

  PigeonholeOutcome out;

  // Step 1: ternary counter over the T items, largest item in the lowest
  // digit; 0 = unused, 1 = X, 2 = Y. First nonempty equal-sum pair wins.
  {
    std::int64_t combos = 1;
    for (int i = 0; i < tau; ++i) combos *= 3;
    std::vector<int> digit(static_cast<std::size_t>(tau));
    for (std::int64_t a = 1; a < combos; ++a) {
      std::int64_t rest = a;
      std::int64_t sx = 0, sy = 0;
      for (int d = 0; d < tau; ++d) {
        digit[static_cast<std::size_t>(d)] = static_cast<int>(rest % 3);
        rest /= 3;
      }
      for (int d = 0; d < tau; ++d) {
        // Digit d corresponds to the (d+1)-th largest T item.
        std::int64_t v = t_items[static_cast<std::size_t>(tau - 1 - d)];
        if (digit[static_cast<std::size_t>(d)] == 1) sx += v;
        if (digit[static_cast<std::size_t>(d)] == 2) sy += v;
      }
      if (sx == sy && sx > 0) {
        for (int d = 0; d < tau; ++d) {
          int idx = t_idx[static_cast<std::size_t>(tau - 1 - d)];
          if (digit[static_cast<std::size_t>(d)] == 1) out.x_indices.push_back(idx);
          if (digit[static_cast<std::size_t>(d)] == 2) out.y_indices.push_back(idx);
        }
        std::sort(out.x_indices.begin(), out.x_indices.end());
        std::sort(out.y_indices.begin(), out.y_indices.end());
        out.found = true;
        out.sum = sx;
        out.step = 1;
        return out;
      }
    }
  }

  // After step 1, all 2^tau subset sums of T are pairwise distinct.
  internal_check(static_cast<std::int64_t>(subset_sums(t_items, false).size()) ==
                     (std::int64_t{1} << tau),
                 "step 1 found no pair, so T must have 2^tau distinct subset sums");

  // Step 2: prefix growth of S(B). The threshold may never be reached; in
  // that case the meet-in-the-middle below still runs over all of B, which
  // covers instances that satisfy the product condition |S(B)|*|S(T)| >
  // Sigma(I) + 1 without reaching the per-prefix threshold.
  std::int64_t max_item = items[static_cast<std::size_t>(order.back())];
  std::int64_t cap = detail::pigeonhole_cap(n, max_item, tau);
  CappedSumSet own;
  if (!precomputed) own = subset_sums_capped(b_items, cap, /*track_witnesses=*/false);
  const CappedSumSet& grown = precomputed ? *precomputed : own;
  out.prefix_len = grown.prefix_len;
  std::span<const std::int64_t> b_prefix =
      std::span<const std::int64_t>(b_items).first(static_cast<std::size_t>(grown.prefix_len));

  // Step 3: difference sets as point-set x-coordinates.
  GeneratedPoints P = gen_points(b_prefix, PointVariant::kAll);
  GeneratedPoints Q = gen_points(t_items, PointVariant::kNonempty);

  // Step 4: scan P ascending, binary search each x in Q.
  const auto& qpts = Q.points();
  for (std::size_t pi = 0; pi < P.points().size(); ++pi) {
    std::int64_t x = P.points()[pi].x;
    auto it = std::lower_bound(qpts.begin(), qpts.end(), x,
                               [](const GridPoint& g, std::int64_t v) { return g.x < v; });
    if (it == qpts.end() || it->x != x) continue;
    auto [xb, yb] = P.reconstruct(pi);
    auto [xt, yt] = Q.reconstruct(static_cast<std::size_t>(it - qpts.begin()));
    // q = Sigma(X_T') - Sigma(Y_T') equals p, so the T sides join swapped.
    for (int i : xb) out.x_indices.push_back(b_idx[static_cast<std::size_t>(i)]);
    for (int i : yt) out.x_indices.push_back(t_idx[static_cast<std::size_t>(i)]);
    for (int i : yb) out.y_indices.push_back(b_idx[static_cast<std::size_t>(i)]);
    for (int i : xt) out.y_indices.push_back(t_idx[static_cast<std::size_t>(i)]);
    std::sort(out.x_indices.begin(), out.x_indices.end());
    std::sort(out.y_indices.begin(), out.y_indices.end());
    std::int64_t sx = 0, sy = 0;
    for (int i : out.x_indices) sx += items[static_cast<std::size_t>(i)];
    for (int i : out.y_indices) sy += items[static_cast<std::size_t>(i)];
    internal_check(sx == sy, "meet-in-the-middle match must align the side sums");
    internal_check(!xt.empty() || !yt.empty(), "the match must touch T");
    out.found = true;
    out.sum = sx;
    out.step = 4;
    return out;
  }

  internal_check(!grown.reached,
                 "the subset-sum threshold guarantees a meet-in-the-middle match");
  return out;  // inapplicable: threshold never reached and no match exists
}

}  // namespace detail

/// Equal-sum disjoint pair search over I split into the tau largest items T
/// and the rest B:
///   1. enumerate the 3^tau disjoint pairs within T;
///   2. grow subset sums of B prefix-wise until |S(B_j)| > n*max(I)/2^tau + 1
///      (or B is exhausted);
///   3. build the difference sets from P(B_j) and P_N(T);
///   4. meet in the middle over the two sorted x-coordinate lists.
/// Returns the first match in ascending P-order; `found == false` means the
/// instance admitted no match through this search (possible only when the
/// step-2 threshold was never reached).
inline PigeonholeOutcome refined_pigeonhole_solve(std::span<const std::int64_t> items, int tau) {
  return detail::refined_pigeonhole_impl(items, tau, nullptr);
}

}  // namespace ssr
