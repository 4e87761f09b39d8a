#pragma once

#include <cmath>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "ssr/core.hpp"
#include "ssr/ssrl.hpp"

namespace ssr {

// ============================================================================
// LL(x) and window planning
// ============================================================================

/// Smallest integer L >= 1 with 2^L > L*x + 1.
inline int ll(double x) {
  if (!(x >= 1.0) || !std::isfinite(x)) {
    throw ValidationError("ll(x) requires x >= 1");
  }
  for (int L = 1; L < 1024; ++L) {
    if (std::ldexp(1.0, L) > static_cast<double>(L) * x + 1.0) return L;
  }
  throw ValidationError("ll(x) out of supported range");
}

/// One window per position: item l closes window [l - width, l] (1-based,
/// clamped at the left edge), width = LL(4/eps')^2.
struct WindowPlan {
  int width = 0;
  std::vector<std::pair<int, int>> windows;  // (lo, hi), 1-based inclusive
};

inline WindowPlan plan_windows(int n, double epsilon_prime) {
  if (n < 2) throw TooFewItemsError("plan_windows requires n >= 2");
  if (!(epsilon_prime > 0.0) || !(epsilon_prime < 1.0)) {
    throw EpsilonRangeError("epsilon' must lie in (0,1)");
  }
  WindowPlan plan;
  int l = ll(4.0 / epsilon_prime);
  plan.width = l * l;
  plan.windows.reserve(static_cast<std::size_t>(n));
  for (int hi = 1; hi <= n; ++hi) {
    plan.windows.emplace_back(std::max(1, hi - plan.width), hi);
  }
  return plan;
}

// ============================================================================
// Top-level solver (window reduction)
// ============================================================================

struct WindowTraceEntry {
  int lo = 0, hi = 0;  // 1-based window bounds; (0,0) for the duplicate path
  SsrlPath path = SsrlPath::kGeometricA;
  bool sqrt2_won = false;
  double ratio = 0.0;
};

struct SolveTrace {
  bool duplicate_fast_path = false;
  double epsilon_prime = 0.0;
  int window_width = 0;
  std::vector<WindowTraceEntry> windows;  // one entry per solved window (size >= 2)
};

namespace detail {

struct WindowResult {
  Solution solution;  // indices already translated to the full instance
  WindowTraceEntry trace;
};

inline WindowResult solve_window(const Instance& inst, double epsilon_prime, int lo, int hi) {
  std::vector<double> slice(inst.items.begin() + (lo - 1), inst.items.begin() + hi);
  Instance sub = Instance::from_sorted(std::move(slice), epsilon_prime);
  SsrlTrace st;
  Solution s = solve_ssrl(sub, &st);
  for (int& i : s.x_indices) i += lo - 1;
  for (int& i : s.y_indices) i += lo - 1;
  WindowResult r;
  r.trace = {lo, hi, st.path, st.sqrt2_won, s.ratio.value()};
  r.solution = std::move(s);
  return r;
}

}  // namespace detail

/// Solve SSR by the window reduction: duplicate fast path, then one SSR_L
/// sub-solve per window at eps' = eps/3, keeping the best solution (smallest
/// closing index wins ties). `threads` parallelizes across windows without
/// changing the result.
inline Solution solve_ssr(const Instance& inst, SolveTrace* trace = nullptr, int threads = 1) {
  if (trace) *trace = SolveTrace{};

  // Duplicates are optimal outright; the sorted scan finds the first pair.
  if (auto dup = detail::duplicate_fast_path(inst)) {
    if (trace) {
      trace->duplicate_fast_path = true;
      trace->windows.push_back({0, 0, SsrlPath::kDuplicate, false, 1.0});
    }
    return *dup;
  }

  const double eps_prime = inst.epsilon / 3.0;
  WindowPlan plan = plan_windows(inst.size(), eps_prime);
  if (trace) {
    trace->epsilon_prime = eps_prime;
    trace->window_width = plan.width;
  }

  const int n = inst.size();
  std::vector<std::optional<detail::WindowResult>> results(static_cast<std::size_t>(n));
  auto run_range = [&](int from, int to) {
    for (int k = from; k < to; ++k) {
      auto [lo, hi] = plan.windows[static_cast<std::size_t>(k)];
      if (hi - lo + 1 < 2) continue;  // a single item admits no pair
      results[static_cast<std::size_t>(k)] = detail::solve_window(inst, eps_prime, lo, hi);
    }
  };
  if (threads <= 1) {
    run_range(0, n);
  } else {
    int workers = std::min(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      int from = n * w / workers, to = n * (w + 1) / workers;
      pool.emplace_back(run_range, from, to);
    }
    for (auto& t : pool) t.join();
  }

  std::optional<Solution> best;
  for (auto& r : results) {
    if (!r) continue;
    if (trace) trace->windows.push_back(r->trace);
    if (!best || r->solution.ratio < best->ratio) best = std::move(r->solution);
  }
  internal_check(best.has_value(), "at least the full-prefix window produces a solution");
  return std::move(*best);
}

}  // namespace ssr
