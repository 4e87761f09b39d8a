#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ssr/core.hpp"
#include "ssr/sumsets.hpp"

namespace ssr {

// ============================================================================
// Rat: exact rational slope/ratio values with +-infinity
// ============================================================================

/// Comparisons cross-multiply in 128 bits; operands must stay within
/// kCoordLimit-derived magnitudes (|num|, den < 2^62), which the grid
/// validation guarantees.
struct Rat {
  std::int64_t num = 0;
  std::int64_t den = 1;  // den > 0 for finite values; den == 0 encodes +-inf via num sign

  static Rat finite(std::int64_t n, std::int64_t d) {
    internal_check(d != 0, "finite rational needs a nonzero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    return Rat{n, d};
  }
  static Rat pos_infinity() { return Rat{1, 0}; }
  static Rat neg_infinity() { return Rat{-1, 0}; }

  bool is_finite() const { return den != 0; }
  bool is_pos_infinity() const { return den == 0 && num > 0; }
  bool is_neg_infinity() const { return den == 0 && num < 0; }

  double to_double() const {
    if (!is_finite()) {
      return num > 0 ? std::numeric_limits<double>::infinity()
                     : -std::numeric_limits<double>::infinity();
    }
    return static_cast<double>(num) / static_cast<double>(den);
  }

  friend bool operator==(const Rat& a, const Rat& b) {
    if (a.den == 0 || b.den == 0) return a.den == b.den && (a.num > 0) == (b.num > 0);
    return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator<(const Rat& a, const Rat& b) {
    if (a.den == 0) return a.num < 0 && !(b.den == 0 && b.num < 0);
    if (b.den == 0) return b.num > 0;
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }
};

/// Slope of the line through p and q; requires distinct x-coordinates.
inline Rat slope_between(GridPoint p, GridPoint q) {
  return Rat::finite(q.y - p.y, q.x - p.x);
}

namespace detail {

inline void check_point_coords(std::span<const GridPoint> pts) {
  for (const GridPoint& p : pts) {
    if (p.x <= -kCoordLimit || p.x >= kCoordLimit || p.y <= -kCoordLimit || p.y >= kCoordLimit) {
      throw ValidationError("point coordinate exceeds the supported range");
    }
  }
}

/// Orientation sign of (b - a) x (c - a).
inline int cross_sign(GridPoint a, GridPoint b, GridPoint c) {
  __int128 lhs = static_cast<__int128>(b.x - a.x) * (c.y - a.y);
  __int128 rhs = static_cast<__int128>(b.y - a.y) * (c.x - a.x);
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

/// Compare slope(p,u) with slope(p,v) for u,v strictly right of p.
inline int slope_cmp_from(GridPoint p, GridPoint u, GridPoint v) {
  __int128 lhs = static_cast<__int128>(u.y - p.y) * (v.x - p.x);
  __int128 rhs = static_cast<__int128>(v.y - p.y) * (u.x - p.x);
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

}  // namespace detail

// ============================================================================
// Lemma-10 style sweep: per-point max slope to the right
// ============================================================================

struct SlopeAnswer {
  bool has_witness = false;  // false: no q strictly right of p, slope is -infinity
  std::size_t q_index = 0;
};

struct HullSweepStats {
  std::size_t inserted = 0;
  std::size_t removed = 0;
};

/// For each p in P, the q in Q strictly to the right of p maximizing the
/// slope of the line through p and q (no witness if none exists).
///
/// Right-to-left sweep over P union Q maintaining the strict upper convex
/// hull of the Q-points seen so far; each P event answers by a tangent
/// binary search on the hull. Inputs need not be sorted or pruned.
inline std::vector<SlopeAnswer> max_slopes_right(std::span<const GridPoint> P,
                                                 std::span<const GridPoint> Q,
                                                 HullSweepStats* stats = nullptr) {
  detail::check_point_coords(P);
  detail::check_point_coords(Q);

  struct Event {
    std::int64_t x;
    bool is_q;  // P events sort before Q events at equal x
    std::size_t index;
  };
  std::vector<Event> events;
  events.reserve(P.size() + Q.size());
  auto by_x = [](const GridPoint& a, const GridPoint& b) { return a.x < b.x; };
  if (std::is_sorted(P.begin(), P.end(), by_x) && std::is_sorted(Q.begin(), Q.end(), by_x)) {
    // Point-set inputs arrive x-sorted; a reverse merge avoids the sort.
    std::size_t i = P.size(), j = Q.size();
    while (i > 0 || j > 0) {
      if (j == 0 || (i > 0 && P[i - 1].x >= Q[j - 1].x)) {
        --i;
        events.push_back({P[i].x, false, i});
      } else {
        --j;
        events.push_back({Q[j].x, true, j});
      }
    }
  } else {
    for (std::size_t i = 0; i < P.size(); ++i) events.push_back({P[i].x, false, i});
    for (std::size_t i = 0; i < Q.size(); ++i) events.push_back({Q[i].x, true, i});
    // Descending x; at equal x handle P queries before Q insertions so that
    // a q sharing p's x-coordinate is not visible (strictly-right
    // semantics).
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
      if (a.x != b.x) return a.x > b.x;
      if (a.is_q != b.is_q) return !a.is_q;
      return a.index < b.index;
    });
  }

  // Hull stored rightmost-first, so the sweep works at the back.
  std::vector<std::size_t> hull;
  hull.reserve(Q.size());
  std::vector<SlopeAnswer> out(P.size());

  for (const Event& ev : events) {
    if (ev.is_q) {
      GridPoint q = Q[ev.index];
      if (!hull.empty() && Q[hull.back()].x == q.x) {
        if (q.y <= Q[hull.back()].y) continue;  // dominated on arrival
        hull.pop_back();
        if (stats) ++stats->removed;
      }
      while (hull.size() >= 2 &&
             detail::cross_sign(q, Q[hull[hull.size() - 1]], Q[hull[hull.size() - 2]]) >= 0) {
        hull.pop_back();
        if (stats) ++stats->removed;
      }
      hull.push_back(ev.index);
      if (stats) ++stats->inserted;
    } else {
      if (hull.empty()) continue;  // answer stays "no witness"
      GridPoint p = P[ev.index];
      // The slope from p is unimodal along the hull; find the first index
      // (rightmost-first order) where moving further left stops improving.
      std::size_t lo = 0, hi = hull.size() - 1;
      while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (detail::slope_cmp_from(p, Q[hull[mid + 1]], Q[hull[mid]]) <= 0) {
          hi = mid;
        } else {
          lo = mid + 1;
        }
      }
      out[ev.index] = {true, hull[lo]};
    }
  }
  return out;
}

// ============================================================================
// Lemma-11 style maximum of (q_y - p_y) / |q_x - p_x|
// ============================================================================

struct PairAnswer {
  Rat value;
  std::size_t p_index = 0;
  std::size_t q_index = 0;
};

/// Maximum of (q_y - p_y)/|q_x - p_x| over P x Q. Any pair with equal
/// x-coordinates makes the result +infinity (witnessed by such a pair).
inline PairAnswer max_abs_slope(std::span<const GridPoint> P, std::span<const GridPoint> Q) {
  if (P.empty() || Q.empty()) {
    throw ValidationError("max_abs_slope requires nonempty point sets");
  }
  detail::check_point_coords(P);
  detail::check_point_coords(Q);

  // Equal-x detection by a merge over the two x-sorted index lists (index
  // order is already correct when the inputs arrive sorted).
  auto by_x = [](const GridPoint& a, const GridPoint& b) { return a.x < b.x; };
  std::vector<std::size_t> pi(P.size()), qi(Q.size());
  for (std::size_t i = 0; i < P.size(); ++i) pi[i] = i;
  for (std::size_t i = 0; i < Q.size(); ++i) qi[i] = i;
  if (!std::is_sorted(P.begin(), P.end(), by_x)) {
    std::sort(pi.begin(), pi.end(), [&](std::size_t a, std::size_t b) {
      return P[a].x != P[b].x ? P[a].x < P[b].x : a < b;
    });
  }
  if (!std::is_sorted(Q.begin(), Q.end(), by_x)) {
    std::sort(qi.begin(), qi.end(), [&](std::size_t a, std::size_t b) {
      return Q[a].x != Q[b].x ? Q[a].x < Q[b].x : a < b;
    });
  }
  {
    std::size_t a = 0, b = 0;
    while (a < pi.size() && b < qi.size()) {
      std::int64_t xa = P[pi[a]].x, xb = Q[qi[b]].x;
      if (xa < xb) {
        ++a;
      } else if (xb < xa) {
        ++b;
      } else {
        // Shared x-coordinate: pick the most extreme witnesses in the group.
        std::size_t best_p = pi[a], best_q = qi[b];
        for (std::size_t k = a; k < pi.size() && P[pi[k]].x == xa; ++k) {
          if (P[pi[k]].y < P[best_p].y) best_p = pi[k];
        }
        for (std::size_t k = b; k < qi.size() && Q[qi[k]].x == xa; ++k) {
          if (Q[qi[k]].y > Q[best_q].y) best_q = qi[k];
        }
        return {Rat::pos_infinity(), best_p, best_q};
      }
    }
  }

  PairAnswer best{Rat::neg_infinity(), 0, 0};
  auto fold = [&](std::span<const GridPoint> PP, std::span<const GridPoint> QQ, bool mirrored) {
    std::vector<SlopeAnswer> ans = max_slopes_right(PP, QQ);
    for (std::size_t i = 0; i < ans.size(); ++i) {
      if (!ans[i].has_witness) continue;
      Rat s = slope_between(PP[i], QQ[ans[i].q_index]);
      if (best.value < s) {
        std::size_t p_orig = mirrored ? P.size() - 1 - i : i;
        std::size_t q_orig = mirrored ? Q.size() - 1 - ans[i].q_index : ans[i].q_index;
        best = {s, p_orig, q_orig};
      }
    }
  };
  fold(P, Q, false);
  // Mirror both sets across the y-axis to capture pairs with q left of p;
  // reversed construction keeps sorted inputs sorted.
  std::vector<GridPoint> Pn(P.size()), Qn(Q.size());
  for (std::size_t i = 0; i < P.size(); ++i) Pn[P.size() - 1 - i] = {-P[i].x, P[i].y};
  for (std::size_t i = 0; i < Q.size(); ++i) Qn[Q.size() - 1 - i] = {-Q[i].x, Q[i].y};
  fold(Pn, Qn, true);
  internal_check(best.value.is_finite(), "no equal x-coordinates yet no finite slope pair");
  return best;
}

// ============================================================================
// Lemma-12 style minimum ratio over point-set pairs
// ============================================================================

/// Minimum of (p_y + q_y + |p_x + q_x|) / (p_y + q_y - |p_x + q_x|) over
/// P x Q, computed through mu = max (p_y + q_y)/|p_x + q_x| as 1 + 2/(mu-1).
/// Requires r_y >= |r_x| for every input point. mu = inf maps to 1; a zero
/// denominator (mu = 1) maps to +infinity.
inline PairAnswer min_pair_ratio(std::span<const GridPoint> P, std::span<const GridPoint> Q) {
  if (P.empty() || Q.empty()) {
    throw ValidationError("min_pair_ratio requires nonempty point sets");
  }
  auto check_above_diagonals = [](std::span<const GridPoint> pts) {
    for (const GridPoint& r : pts) {
      if (r.y < std::abs(r.x)) {
        throw ValidationError("min_pair_ratio requires r_y >= |r_x| for all points");
      }
    }
  };
  check_above_diagonals(P);
  check_above_diagonals(Q);

  // Full negation flips the x-order; reversed construction keeps sorted
  // inputs sorted, with the p-index mapped back afterwards.
  std::vector<GridPoint> Pn(P.size());
  for (std::size_t i = 0; i < P.size(); ++i) Pn[P.size() - 1 - i] = {-P[i].x, -P[i].y};
  PairAnswer mu = max_abs_slope(Pn, Q);
  mu.p_index = P.size() - 1 - mu.p_index;
  if (mu.value.is_pos_infinity()) {
    // Some pair has p_x + q_x = 0: exactly balanced sides, ratio 1.
    return {Rat::finite(1, 1), mu.p_index, mu.q_index};
  }
  internal_check(mu.value.num >= mu.value.den && mu.value.den > 0,
                 "mu below 1 contradicts the r_y >= |r_x| precondition");
  if (mu.value.num == mu.value.den) {
    return {Rat::pos_infinity(), mu.p_index, mu.q_index};
  }
  Rat ratio = Rat::finite(mu.value.num + mu.value.den, mu.value.num - mu.value.den);
  return {ratio, mu.p_index, mu.q_index};
}

// ============================================================================
// Generalized meet in the middle (Lemma-13 style)
// ============================================================================

struct MitmResult {
  std::vector<int> x_indices;  // indices into the concatenation B then T
  std::vector<int> y_indices;
  std::int64_t sum_x = 0;
  std::int64_t sum_y = 0;
  Rat ratio;  // exact OPT_L of the grid instance B union T
};

/// Exact OPT_L over the grid instance B union T (max item in T), through the
/// point sets P(B) and P_L(T) and the slope minimization above. Witness links
/// reconstruct an optimal disjoint pair.
inline MitmResult generalized_mitm(std::span<const std::int64_t> b_items,
                                   std::span<const std::int64_t> t_items) {
  if (t_items.empty()) throw ValidationError("generalized_mitm requires nonempty T");
  std::int64_t max_b = 0, max_t = 0;
  for (std::int64_t v : b_items) max_b = std::max(max_b, v);
  for (std::int64_t v : t_items) max_t = std::max(max_t, v);
  if (max_b > max_t) {
    throw ValidationError("generalized_mitm requires max(B union T) to lie in T");
  }

  // The largest-placed generator pins the final item, so move one maximum of
  // T to the back and translate witness indices through the permutation.
  std::vector<std::size_t> t_perm(t_items.size());
  for (std::size_t i = 0; i < t_items.size(); ++i) t_perm[i] = i;
  std::size_t argmax = 0;
  for (std::size_t i = 0; i < t_items.size(); ++i) {
    if (t_items[i] > t_items[argmax]) argmax = i;
  }
  std::swap(t_perm[argmax], t_perm.back());
  std::vector<std::int64_t> t_arranged(t_items.size());
  for (std::size_t i = 0; i < t_items.size(); ++i) t_arranged[i] = t_items[t_perm[i]];

  GeneratedPoints gp = gen_points(b_items, PointVariant::kAll);
  GeneratedPoints gq = gen_points(t_arranged, PointVariant::kLargest);
  PairAnswer ans = min_pair_ratio(gp.points(), gq.points());

  auto [xb, yb] = gp.reconstruct(ans.p_index);
  auto [xt, yt] = gq.reconstruct(ans.q_index);
  for (int& i : xt) i = static_cast<int>(t_perm[static_cast<std::size_t>(i)]);
  for (int& i : yt) i = static_cast<int>(t_perm[static_cast<std::size_t>(i)]);
  MitmResult r;
  r.ratio = ans.value;
  const int off = static_cast<int>(b_items.size());
  r.x_indices = std::move(xb);
  for (int i : xt) r.x_indices.push_back(i + off);
  r.y_indices = std::move(yb);
  for (int i : yt) r.y_indices.push_back(i + off);
  auto sum_concat = [&](const std::vector<int>& idx) {
    std::int64_t s = 0;
    for (int i : idx) {
      s += i < off ? b_items[static_cast<std::size_t>(i)]
                   : t_items[static_cast<std::size_t>(i - off)];
    }
    return s;
  };
  r.sum_x = sum_concat(r.x_indices);
  r.sum_y = sum_concat(r.y_indices);
  // The witness pair must realize the reported optimum exactly.
  std::int64_t hi = std::max(r.sum_x, r.sum_y), lo = std::min(r.sum_x, r.sum_y);
  if (ans.value.is_finite()) {
    internal_check(lo > 0 && Rat::finite(hi, lo) == ans.value,
                   "reconstructed pair does not realize the computed optimum");
  } else {
    internal_check(lo == 0, "infinite optimum requires an empty side");
  }
  return r;
}

}  // namespace ssr
