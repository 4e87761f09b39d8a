#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ssr {

// ============================================================================
// Errors
// ============================================================================

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

class NonpositiveItemError : public ValidationError {
 public:
  explicit NonpositiveItemError(const std::string& what) : ValidationError(what) {}
};

class EpsilonRangeError : public ValidationError {
 public:
  explicit EpsilonRangeError(const std::string& what) : ValidationError(what) {}
};

class TooFewItemsError : public ValidationError {
 public:
  explicit TooFewItemsError(const std::string& what) : ValidationError(what) {}
};

class InvalidSolutionError : public ValidationError {
 public:
  explicit InvalidSolutionError(const std::string& what) : ValidationError(what) {}
};

/// Raised when an exhaustive routine is asked to run above its size cap.
class SizeLimitError : public std::runtime_error {
 public:
  explicit SizeLimitError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised by the rounding checks when their stated preconditions do not hold
/// (distinct from the check itself failing, which is reported, not thrown).
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Internal consistency check; always on. These guard algorithm guarantees
/// (e.g. "a match must exist at this point"), not user input.
inline void internal_check(bool cond, const char* msg) {
  if (!cond) throw std::logic_error(std::string("internal check failed: ") + msg);
}

// ============================================================================
// ExtendedReal: nonnegative reals extended by +infinity, with z/0 = inf
// ============================================================================

class ExtendedReal {
 public:
  ExtendedReal() = default;

  static ExtendedReal of(double v) {
    if (!(v >= 0.0) || std::isnan(v)) {
      throw ValidationError("ExtendedReal requires a nonnegative value");
    }
    ExtendedReal e;
    e.v_ = v;
    return e;
  }

  static ExtendedReal infinity() {
    ExtendedReal e;
    e.v_ = std::numeric_limits<double>::infinity();
    return e;
  }

  /// Quotient under the convention z/0 = infinity for z >= 0.
  static ExtendedReal quotient(double num, double den) {
    if (num < 0.0 || den < 0.0) {
      throw ValidationError("ExtendedReal::quotient requires nonnegative operands");
    }
    if (den == 0.0) return infinity();
    return of(num / den);
  }

  bool is_infinite() const { return std::isinf(v_); }
  double value() const { return v_; }

  friend bool operator==(ExtendedReal a, ExtendedReal b) { return a.v_ == b.v_; }
  friend bool operator!=(ExtendedReal a, ExtendedReal b) { return a.v_ != b.v_; }
  friend bool operator<(ExtendedReal a, ExtendedReal b) { return a.v_ < b.v_; }
  friend bool operator<=(ExtendedReal a, ExtendedReal b) { return a.v_ <= b.v_; }
  friend bool operator>(ExtendedReal a, ExtendedReal b) { return a.v_ > b.v_; }
  friend bool operator>=(ExtendedReal a, ExtendedReal b) { return a.v_ >= b.v_; }

 private:
  double v_ = 0.0;
};

// ============================================================================
// Instance and Solution
// ============================================================================

/// A problem instance: positive item values sorted ascending plus the target
/// approximation parameter. Duplicate values are allowed (multiset).
struct Instance {
  std::vector<double> items;
  double epsilon = 0.1;

  int size() const { return static_cast<int>(items.size()); }
  double max_item() const { return items.back(); }

  /// Construct from data already known to be sorted, positive and of size
  /// >= 2 (used for window sub-instances; skips re-validation cost).
  static Instance from_sorted(std::vector<double> sorted_items, double epsilon) {
    Instance inst;
    inst.items = std::move(sorted_items);
    inst.epsilon = epsilon;
    return inst;
  }
};

inline Instance validate_instance(std::vector<double> raw_items, double epsilon) {
  if (raw_items.size() < 2) {
    throw TooFewItemsError("instance requires at least 2 items, got " +
                           std::to_string(raw_items.size()));
  }
  for (double v : raw_items) {
    if (!std::isfinite(v) || !(v > 0.0)) {
      throw NonpositiveItemError("all items must be positive finite numbers");
    }
  }
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw EpsilonRangeError("epsilon must lie in (0,1), got " + std::to_string(epsilon));
  }
  std::sort(raw_items.begin(), raw_items.end());
  return Instance::from_sorted(std::move(raw_items), epsilon);
}

/// Two disjoint index sets into an instance with cached sums and ratio.
struct Solution {
  std::vector<int> x_indices;  // ascending
  std::vector<int> y_indices;  // ascending
  double sum_x = 0.0;
  double sum_y = 0.0;
  ExtendedReal ratio;
};

/// R from the two side sums: max of the two quotients, z/0 = inf.
inline ExtendedReal ratio_of_sums(double sum_x, double sum_y) {
  ExtendedReal a = ExtendedReal::quotient(sum_x, sum_y);
  ExtendedReal b = ExtendedReal::quotient(sum_y, sum_x);
  return a >= b ? a : b;
}

namespace detail {

inline void check_index_sets(const Instance& inst, const std::vector<int>& x,
                             const std::vector<int>& y) {
  auto check_side = [&](const std::vector<int>& side) {
    for (int i : side) {
      if (i < 0 || i >= inst.size()) {
        throw InvalidSolutionError("solution index out of range: " + std::to_string(i));
      }
    }
  };
  check_side(x);
  check_side(y);
  // Disjointness; sides are small, a sorted scan suffices.
  std::vector<int> xs = x, ys = y;
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (xs[i] == xs[i + 1]) throw InvalidSolutionError("duplicate index within X");
  }
  for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
    if (ys[i] == ys[i + 1]) throw InvalidSolutionError("duplicate index within Y");
  }
  std::vector<int> inter;
  std::set_intersection(xs.begin(), xs.end(), ys.begin(), ys.end(), std::back_inserter(inter));
  if (!inter.empty()) {
    throw InvalidSolutionError("X and Y overlap at index " + std::to_string(inter.front()));
  }
}

inline double sum_over(const Instance& inst, const std::vector<int>& idx) {
  double s = 0.0;
  for (int i : idx) s += inst.items[static_cast<std::size_t>(i)];
  return s;
}

}  // namespace detail

/// The ratio R(X,Y) of a candidate pair. Throws InvalidSolutionError when the
/// index sets overlap or are out of range.
inline ExtendedReal solution_ratio(const Instance& inst, const std::vector<int>& x_indices,
                                   const std::vector<int>& y_indices) {
  detail::check_index_sets(inst, x_indices, y_indices);
  return ratio_of_sums(detail::sum_over(inst, x_indices), detail::sum_over(inst, y_indices));
}

inline Solution make_solution(const Instance& inst, std::vector<int> x_indices,
                              std::vector<int> y_indices) {
  detail::check_index_sets(inst, x_indices, y_indices);
  std::sort(x_indices.begin(), x_indices.end());
  std::sort(y_indices.begin(), y_indices.end());
  Solution s;
  s.sum_x = detail::sum_over(inst, x_indices);
  s.sum_y = detail::sum_over(inst, y_indices);
  s.ratio = ratio_of_sums(s.sum_x, s.sum_y);
  s.x_indices = std::move(x_indices);
  s.y_indices = std::move(y_indices);
  return s;
}

// ============================================================================
// Exhaustive oracles (3^n assignments; items go to X, Y or neither)
// ============================================================================

inline constexpr int kOracleCapDefault = 14;

namespace detail {

struct BruteBest {
  bool has = false;
  double ratio = 0.0;  // +inf never stored; empty-side leaves are skipped
  std::vector<int> x, y;
};

struct BruteEnumerator {
  const Instance& inst;
  bool require_max;  // restrict to pairs whose union contains the max value
  double max_value;
  BruteBest best;
  std::vector<int> cur_x, cur_y;
  int max_count = 0;  // how many currently-assigned indices carry the max value

  explicit BruteEnumerator(const Instance& i, bool req_max)
      : inst(i), require_max(req_max), max_value(i.items.back()) {}

  void consider_leaf(double sum_x, double sum_y) {
    if (cur_x.empty() || cur_y.empty()) return;
    if (require_max && max_count == 0) return;
    double r = sum_x >= sum_y ? sum_x / sum_y : sum_y / sum_x;
    if (!best.has || r < best.ratio) {
      best.has = true;
      best.ratio = r;
      best.x = cur_x;
      best.y = cur_y;
      return;
    }
    if (r == best.ratio) {
      // Tie-break: lexicographically smallest (x_indices, y_indices).
      if (cur_x < best.x || (cur_x == best.x && cur_y < best.y)) {
        best.x = cur_x;
        best.y = cur_y;
      }
    }
  }

  // Sums travel by value so every leaf sees exactly the additions along its
  // own path; an undo-style accumulator would leave floating-point residue
  // behind when item magnitudes span many orders.
  void walk(int i, double sum_x, double sum_y) {
    int n = inst.size();
    if (i == n) {
      consider_leaf(sum_x, sum_y);
      return;
    }
    double v = inst.items[static_cast<std::size_t>(i)];
    bool is_max = (v == max_value);
    walk(i + 1, sum_x, sum_y);  // item unused
    cur_x.push_back(i);
    if (is_max) ++max_count;
    walk(i + 1, sum_x + v, sum_y);
    cur_x.pop_back();
    cur_y.push_back(i);
    walk(i + 1, sum_x, sum_y + v);
    cur_y.pop_back();
    if (is_max) --max_count;
  }
};

inline Solution brute_force_impl(const Instance& inst, int cap, bool require_max) {
  if (inst.size() > cap) {
    throw SizeLimitError("instance size " + std::to_string(inst.size()) +
                         " exceeds oracle cap " + std::to_string(cap));
  }
  BruteEnumerator e(inst, require_max);
  e.walk(0, 0.0, 0.0);
  internal_check(e.best.has, "oracle found no feasible pair on an instance of size >= 2");
  return make_solution(inst, std::move(e.best.x), std::move(e.best.y));
}

}  // namespace detail

/// Exact OPT(I) over all disjoint nonempty pairs; ties broken by the
/// lexicographically smallest (x_indices, y_indices).
inline Solution brute_force_opt(const Instance& inst, int cap = kOracleCapDefault) {
  return detail::brute_force_impl(inst, cap, /*require_max=*/false);
}

/// Exact OPT_L(I): optimum among pairs whose union contains the largest value.
inline Solution brute_force_opt_l(const Instance& inst, int cap = kOracleCapDefault) {
  return detail::brute_force_impl(inst, cap, /*require_max=*/true);
}

}  // namespace ssr
