#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ssr/core.hpp"
#include "ssr/geometry.hpp"
#include "ssr/pigeonhole.hpp"
#include "ssr/rounding.hpp"
#include "ssr/sumsets.hpp"

namespace ssr {

// ============================================================================
// sqrt(2)-approximation; exact whenever OPT_L is at least sqrt(2)
// ============================================================================

/// Linear-pass solver returning disjoint X, Y with max(I) in X union Y and
/// R(X,Y) <= max{sqrt(2), OPT_L(I)}.
inline Solution sqrt2_approx(const Instance& inst) {
  const int n = inst.size();
  if (n < 2) throw TooFewItemsError("sqrt2_approx requires n >= 2");
  const auto& it = inst.items;

  // Suffix sums built right to left keep the scan's comparisons exact
  // relative to each other.
  std::vector<double> suffix(static_cast<std::size_t>(n), 0.0);  // suffix[i] = sum it[i..n-2]
  for (int i = n - 2; i >= 0; --i) {
    suffix[static_cast<std::size_t>(i)] =
        suffix[static_cast<std::size_t>(i) + 1] + it[static_cast<std::size_t>(i)];
  }
  const double rest = suffix[0];
  const double top = it[static_cast<std::size_t>(n - 1)];

  std::vector<int> all_but_last(static_cast<std::size_t>(n - 1));
  for (int i = 0; i < n - 1; ++i) all_but_last[static_cast<std::size_t>(i)] = i;

  if (rest <= top) {
    // X = {I[n]}, Y = everything else is exactly OPT_L-optimal here.
    return make_solution(inst, {n - 1}, all_but_last);
  }

  // Largest i with sum(I[i..n-1]) > I[n]; it exists and i < n-1.
  int i = n - 2;
  while (suffix[static_cast<std::size_t>(i)] <= top) --i;
  internal_check(i >= 0 && i < n - 1, "scan index out of range");
  std::vector<int> y, y_prime;
  for (int k = i; k <= n - 2; ++k) y.push_back(k);
  for (int k = i + 1; k <= n - 2; ++k) y_prime.push_back(k);
  internal_check(!y_prime.empty(), "Y' is nonempty since i < n-1");

  const double sum_y = suffix[static_cast<std::size_t>(i)];
  const double sum_y_prime = suffix[static_cast<std::size_t>(i) + 1];
  internal_check(sum_y > top && top >= sum_y_prime, "scan postcondition Sigma(Y) > Sigma(X) >= Sigma(Y')");
  internal_check(sum_y <= 2.0 * sum_y_prime + kRelTolerance * sum_y,
                 "Sigma(Y) <= 2 Sigma(Y') by maximality of the scan index");

  Solution a = make_solution(inst, {n - 1}, std::move(y));
  Solution b = make_solution(inst, {n - 1}, std::move(y_prime));
  return a.ratio <= b.ratio ? a : b;
}

// ============================================================================
// Parameter policy (tau, psi, alpha, beta, branch)
// ============================================================================

enum class Branch {
  kGeometricA,
  kPigeonholeThenGeometricB,
};

struct SolverParams {
  int tau = 1;        // clamped closed-form value, in [1, n-1]
  int top_count = 1;  // |T|; equals n when the clamp binds and T = I
  double psi = 1.0;   // max(T)/min(T) on unrounded values
  double alpha = 0.0;
  double beta = 0.0;
  Branch branch = Branch::kGeometricA;
};

/// tau from the closed form 4/3 * log_{3*4^(1/3)}(1/eps), rounded half up and
/// clamped to [1, n-1]; when the clamp binds the whole instance becomes T.
inline SolverParams choose_params(const Instance& inst) {
  const int n = inst.size();
  const double eps = inst.epsilon;
  const double closed_form = 4.0 / 3.0 * std::log(1.0 / eps) / std::log(3.0 * std::cbrt(4.0));
  const long long rounded = std::llround(closed_form);
  SolverParams p;
  p.tau = static_cast<int>(std::clamp<long long>(rounded, 1, n - 1));
  p.top_count = rounded >= n - 1 ? n : p.tau;
  const double max_t = inst.items.back();
  const double min_t = inst.items[static_cast<std::size_t>(n - p.top_count)];
  p.psi = max_t / min_t;
  p.alpha = eps / (9.0 * n) * max_t;
  p.beta = eps / (2.0 * n) * min_t;
  const double threshold = std::cbrt(eps) * std::pow(4.0, static_cast<double>(p.tau) / 3.0);
  p.branch = p.psi >= threshold ? Branch::kGeometricA : Branch::kPigeonholeThenGeometricB;
  return p;
}

// ============================================================================
// Bounded-optimum solver (Algorithms 1 and 2) and the full SSR_L solver
// ============================================================================

enum class SsrlPath {
  kDuplicate,
  kSqrt2Exact,  // sqrt2_approx hit ratio 1, bounded solver skipped
  kGeometricA,
  kPigeonhole,
  kGeometricBFallback,
};

struct SsrlTrace {
  SsrlPath path = SsrlPath::kGeometricA;
  bool sqrt2_won = false;
};

namespace detail {

inline std::optional<Solution> duplicate_fast_path(const Instance& inst) {
  for (int i = 0; i + 1 < inst.size(); ++i) {
    if (inst.items[static_cast<std::size_t>(i)] == inst.items[static_cast<std::size_t>(i) + 1]) {
      return make_solution(inst, {i}, {i + 1});
    }
  }
  return std::nullopt;
}

/// Alpha-grid rounding followed by the exact geometric solve of the rounded
/// instance (bottom |B| items vs top |T| items).
inline Solution geometric_grid_solve(const Instance& inst, const SolverParams& p) {
  GridInstance grid = round_up(inst, p.alpha);
  const std::size_t nb = grid.units.size() - static_cast<std::size_t>(p.top_count);
  std::span<const std::int64_t> units(grid.units);
  MitmResult m = generalized_mitm(units.first(nb), units.subspan(nb));
  // Concatenation order equals index order, so indices map through directly.
  return unround_solution(grid, m.x_indices, m.y_indices);
}

}  // namespace detail

/// One run of the branch policy of the bounded-optimum solver. The returned
/// pair is always feasible; its (1+eps)*OPT_L guarantee relies on
/// OPT_L(I) <= 2, which solve_ssrl restores by also running sqrt2_approx.
inline Solution solve_ssrl_bounded(const Instance& inst, SsrlTrace* trace = nullptr) {
  if (inst.size() < 2) throw TooFewItemsError("solve_ssrl_bounded requires n >= 2");
  if (auto dup = detail::duplicate_fast_path(inst)) {
    if (trace) trace->path = SsrlPath::kDuplicate;
    return *dup;
  }
  SolverParams p = choose_params(inst);

  if (p.branch == Branch::kPigeonholeThenGeometricB) {
    GridInstance grid_b = round_up(inst, p.beta);
    const std::size_t nb = grid_b.units.size() - static_cast<std::size_t>(p.top_count);
    std::span<const std::int64_t> units(grid_b.units);
    std::int64_t cap =
        detail::pigeonhole_cap(inst.size(), grid_b.units.back(), p.tau);
    CappedSumSet check = subset_sums_capped(units.first(nb), cap, /*track_witnesses=*/false);
    if (check.reached) {
      PigeonholeOutcome out = detail::refined_pigeonhole_impl(units, p.tau, &check);
      internal_check(out.found, "the reached threshold guarantees a pigeonhole solution");
      RoundingReport transfer = check_rounding_one(grid_b, out.x_indices, out.y_indices,
                                                   inst.epsilon);
      internal_check(transfer.pass, "equal grid sums must unround to ratio <= 1 + eps");
      if (trace) trace->path = SsrlPath::kPigeonhole;
      return unround_solution(grid_b, out.x_indices, out.y_indices);
    }
    if (trace) trace->path = SsrlPath::kGeometricBFallback;
    return detail::geometric_grid_solve(inst, p);
  }

  if (trace) trace->path = SsrlPath::kGeometricA;
  return detail::geometric_grid_solve(inst, p);
}

/// Full SSR_L solver: the better of the sqrt(2)-approximation and the
/// bounded-optimum run; guarantees R <= (1+eps) * OPT_L(I).
inline Solution solve_ssrl(const Instance& inst, SsrlTrace* trace = nullptr) {
  Solution s1 = sqrt2_approx(inst);
  if (!s1.ratio.is_infinite() && s1.ratio.value() == 1.0) {
    if (trace) *trace = {SsrlPath::kSqrt2Exact, true};
    return s1;
  }
  SsrlTrace local;
  Solution s2 = solve_ssrl_bounded(inst, &local);
  // Near-ties go to the sqrt(2) candidate (cheaper to audit).
  local.sqrt2_won = !s1.ratio.is_infinite() &&
                    (s2.ratio.is_infinite() ||
                     s1.ratio.value() <= s2.ratio.value() * (1.0 + kRelTolerance));
  if (trace) *trace = local;
  return local.sqrt2_won ? s1 : s2;
}

}  // namespace ssr
