#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "ssr/core.hpp"
#include "ssr/sumsets.hpp"

namespace ssr {

inline constexpr double kRelTolerance = 1e-9;

// ============================================================================
// GridInstance: items rounded up to integer multiples of a grid delta
// ============================================================================

struct GridInstance {
  Instance origin;
  double grid = 1.0;                // delta
  std::vector<std::int64_t> units;  // ceil(item/delta), ascending
  std::vector<int> labels;          // unit i came from origin item labels[i]

  double max_unit_value() const { return static_cast<double>(units.back()) * grid; }
};

/// Round every item up to a multiple of delta. The inverse-grid invariant
/// units[i]*delta >= item > (units[i]-1)*delta is enforced against the same
/// floating-point products used everywhere else, so "round up" can never
/// round down even when item/delta itself misrounds.
inline GridInstance round_up(const Instance& inst, double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw ValidationError("grid delta must be positive and finite");
  }
  GridInstance g;
  g.origin = inst;
  g.grid = delta;
  g.units.reserve(inst.items.size());
  g.labels.reserve(inst.items.size());
  std::int64_t total = 0;
  for (int i = 0; i < inst.size(); ++i) {
    double item = inst.items[static_cast<std::size_t>(i)];
    double q = std::ceil(item / delta);
    if (!(q < static_cast<double>(kCoordLimit))) {
      throw ValidationError("grid too fine: rounded units exceed the supported range");
    }
    std::int64_t u = static_cast<std::int64_t>(q);
    if (u < 1) u = 1;
    while (static_cast<double>(u) * delta < item) ++u;
    while (u > 1 && static_cast<double>(u - 1) * delta >= item) --u;
    g.units.push_back(u);
    g.labels.push_back(i);
    total += u;
    if (total > kCoordLimit) {
      throw ValidationError("grid too fine: rounded units exceed the supported range");
    }
  }
  // Rounding a sorted list up is monotone, so the units stay sorted.
  internal_check(std::is_sorted(g.units.begin(), g.units.end()),
                 "rounded units must remain ascending");
  return g;
}

/// Translate a solution over the grid back to the original items and
/// recompute sums and ratio on the unrounded values.
inline Solution unround_solution(const GridInstance& g, const std::vector<int>& x_indices,
                                 const std::vector<int>& y_indices) {
  auto translate = [&](const std::vector<int>& idx) {
    std::vector<int> out;
    out.reserve(idx.size());
    for (int i : idx) {
      if (i < 0 || i >= static_cast<int>(g.units.size())) {
        throw InvalidSolutionError("grid solution index out of range");
      }
      out.push_back(g.labels[static_cast<std::size_t>(i)]);
    }
    return out;
  };
  return make_solution(g.origin, translate(x_indices), translate(y_indices));
}

// ============================================================================
// Rounding transfer checks (used as test oracles and runtime debug checks)
// ============================================================================

struct RoundingReport {
  bool pass = false;
  double achieved_ratio = 0.0;
  double bound = 0.0;
};

namespace detail {

inline std::int64_t unit_sum(const GridInstance& g, const std::vector<int>& idx) {
  std::int64_t s = 0;
  for (int i : idx) s += g.units[static_cast<std::size_t>(i)];
  return s;
}

}  // namespace detail

/// Transfer check for equal-sum grid solutions: with delta within the
/// (eps/2n) * max(X~ union Y~) budget, the unrounded pair keeps ratio
/// <= 1 + eps.
inline RoundingReport check_rounding_one(const GridInstance& g, const std::vector<int>& x_indices,
                                         const std::vector<int>& y_indices, double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw PreconditionError("epsilon must lie in (0,1)");
  }
  std::int64_t sx = detail::unit_sum(g, x_indices);
  std::int64_t sy = detail::unit_sum(g, y_indices);
  if (sx != sy || sx == 0) {
    throw PreconditionError("check_rounding_one requires a nonempty equal-sum grid solution");
  }
  std::int64_t max_u = 0;
  for (int i : x_indices) max_u = std::max(max_u, g.units[static_cast<std::size_t>(i)]);
  for (int i : y_indices) max_u = std::max(max_u, g.units[static_cast<std::size_t>(i)]);
  const double n = static_cast<double>(g.origin.size());
  double budget = epsilon / (2.0 * n) * static_cast<double>(max_u) * g.grid;
  if (g.grid > budget * (1.0 + kRelTolerance)) {
    throw PreconditionError("delta exceeds the (eps/2n) * max(X~ u Y~) budget");
  }

  Solution s = unround_solution(g, x_indices, y_indices);
  RoundingReport r;
  r.achieved_ratio = s.ratio.value();
  r.bound = 1.0 + epsilon;
  r.pass = r.achieved_ratio <= r.bound * (1.0 + kRelTolerance);
  return r;
}

/// Transfer check for grid-optimal solutions containing the largest rounded
/// item: with OPT_L(origin) <= 2 and delta within the (eps/9n) * max(I)
/// budget, the unrounded pair keeps ratio <= (1+eps) * OPT_L(origin).
inline RoundingReport check_rounding_two(const GridInstance& g, const std::vector<int>& x_indices,
                                         const std::vector<int>& y_indices, double epsilon,
                                         double oracle_opt_l) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw PreconditionError("epsilon must lie in (0,1)");
  }
  if (!(oracle_opt_l <= 2.0 * (1.0 + kRelTolerance))) {
    throw PreconditionError("check_rounding_two requires OPT_L(origin) <= 2");
  }
  const double n = static_cast<double>(g.origin.size());
  double budget = epsilon / (9.0 * n) * g.origin.max_item();
  if (g.grid > budget * (1.0 + kRelTolerance)) {
    throw PreconditionError("delta exceeds the (eps/9n) * max(I) budget");
  }
  std::int64_t max_unit = g.units.back();
  bool has_max = false;
  for (int i : x_indices) has_max |= g.units[static_cast<std::size_t>(i)] == max_unit;
  for (int i : y_indices) has_max |= g.units[static_cast<std::size_t>(i)] == max_unit;
  if (!has_max) {
    throw PreconditionError("the grid solution must contain the largest rounded item");
  }

  Solution s = unround_solution(g, x_indices, y_indices);
  RoundingReport r;
  r.achieved_ratio = s.ratio.value();
  r.bound = (1.0 + epsilon) * oracle_opt_l;
  r.pass = r.achieved_ratio <= r.bound * (1.0 + kRelTolerance);
  return r;
}

}  // namespace ssr
