#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ssr/core.hpp"

namespace ssr {

/// Coordinates and sums in grid modules must stay below this bound so that
/// 128-bit cross products in the geometry never overflow.
inline constexpr std::int64_t kCoordLimit = std::int64_t{1} << 60;

namespace detail {

inline void check_grid_items(std::span<const std::int64_t> items) {
  std::int64_t total = 0;
  for (std::int64_t v : items) {
    if (v <= 0) throw ValidationError("grid items must be positive integers");
    total += v;
    if (total > kCoordLimit) {
      throw ValidationError("grid item total exceeds the supported coordinate range");
    }
  }
}

}  // namespace detail

// ============================================================================
// SumSet: all subset sums of a set, with per-entry reconstruction links
// ============================================================================

class SumSet;
struct CappedSumSet;
SumSet subset_sums(std::span<const std::int64_t> items, bool track_witnesses);
CappedSumSet subset_sums_capped(std::span<const std::int64_t> items, std::int64_t cap,
                                bool track_witnesses);

class SumSet {
 public:
  /// Sorted, strictly increasing subset sums of the processed prefix.
  const std::vector<std::int64_t>& sums() const { return layer_sums_.back(); }
  std::size_t size() const { return layer_sums_.back().size(); }
  int items_processed() const { return static_cast<int>(layer_sums_.size()) - 1; }

  bool contains(std::int64_t v) const {
    const auto& s = sums();
    return std::binary_search(s.begin(), s.end(), v);
  }

  /// Walk the links back to an achieving subset (indices into the input).
  /// Requires witness tracking (on by default in subset_sums).
  std::vector<int> reconstruct(std::size_t entry) const {
    internal_check(!layer_wit_.empty() || items_processed() == 0,
                   "SumSet built without witnesses cannot reconstruct");
    std::vector<int> subset;
    int layer = items_processed();
    std::size_t k = entry;
    while (layer > 0) {
      const Link& link = layer_wit_[static_cast<std::size_t>(layer) - 1][k];
      if (link.used_item) subset.push_back(layer - 1);
      k = static_cast<std::size_t>(link.parent);
      --layer;
    }
    std::reverse(subset.begin(), subset.end());
    return subset;
  }

 private:
  struct Link {
    std::int32_t parent;
    bool used_item;
  };

  // layer_sums_[i] = sums of items[0..i); layer 0 is {0}.
  std::vector<std::vector<std::int64_t>> layer_sums_;
  std::vector<std::vector<Link>> layer_wit_;  // one per item layer, absent if untracked

  friend SumSet subset_sums(std::span<const std::int64_t>, bool);
  friend struct CappedSumSet;
  friend CappedSumSet subset_sums_capped(std::span<const std::int64_t>, std::int64_t, bool);
};

namespace detail {

/// One merge step of S(Z_i) = S(Z_{i-1}) union (S(Z_{i-1}) + z_i).
/// On collisions the carried entry wins, so links prefer omitting the item.
inline void sumset_merge_step(const std::vector<std::int64_t>& prev, std::int64_t z,
                              std::vector<std::int64_t>& out,
                              std::vector<std::pair<std::int32_t, bool>>* links) {
  out.clear();
  out.reserve(prev.size() * 2);
  if (links) {
    links->clear();
    links->reserve(prev.size() * 2);
  }
  std::size_t a = 0, b = 0;
  const std::size_t n = prev.size();
  while (a < n || b < n) {
    std::int64_t va = a < n ? prev[a] : 0;
    std::int64_t vb = b < n ? prev[b] + z : 0;
    bool take_a;
    if (a >= n) {
      take_a = false;
    } else if (b >= n) {
      take_a = true;
    } else if (va < vb) {
      take_a = true;
    } else if (vb < va) {
      take_a = false;
    } else {  // equal: keep the carried entry, advance both
      out.push_back(va);
      if (links) links->emplace_back(static_cast<std::int32_t>(a), false);
      ++a;
      ++b;
      continue;
    }
    if (take_a) {
      out.push_back(va);
      if (links) links->emplace_back(static_cast<std::int32_t>(a), false);
      ++a;
    } else {
      out.push_back(vb);
      if (links) links->emplace_back(static_cast<std::int32_t>(b), true);
      ++b;
    }
  }
}

}  // namespace detail

/// All subset sums of positive integer items, built by incremental merging.
inline SumSet subset_sums(std::span<const std::int64_t> items, bool track_witnesses = true) {
  detail::check_grid_items(items);
  SumSet s;
  s.layer_sums_.push_back({0});
  std::vector<std::pair<std::int32_t, bool>> links;
  for (std::int64_t z : items) {
    std::vector<std::int64_t> next;
    detail::sumset_merge_step(s.layer_sums_.back(), z, next, track_witnesses ? &links : nullptr);
    s.layer_sums_.push_back(std::move(next));
    if (track_witnesses) {
      std::vector<SumSet::Link> layer(links.size());
      for (std::size_t i = 0; i < links.size(); ++i) layer[i] = {links[i].first, links[i].second};
      s.layer_wit_.push_back(std::move(layer));
    }
  }
  return s;
}

struct CappedSumSet {
  bool reached = false;  // true iff some prefix exceeded the cap
  SumSet partial;        // S of the processed prefix
  int prefix_len = 0;    // number of items processed
};

/// Process items in order, stopping at the first prefix whose sum count
/// exceeds `cap`. The doubling bound per step keeps the partial set at most
/// twice the cap. If no prefix exceeds the cap the full SumSet is returned.
inline CappedSumSet subset_sums_capped(std::span<const std::int64_t> items, std::int64_t cap,
                                       bool track_witnesses = true) {
  if (cap < 1) throw ValidationError("cap must be at least 1");
  detail::check_grid_items(items);
  CappedSumSet r;
  r.partial.layer_sums_.push_back({0});
  std::vector<std::pair<std::int32_t, bool>> links;
  for (std::int64_t z : items) {
    std::vector<std::int64_t> next;
    detail::sumset_merge_step(r.partial.layer_sums_.back(), z, next,
                              track_witnesses ? &links : nullptr);
    r.partial.layer_sums_.push_back(std::move(next));
    if (track_witnesses) {
      std::vector<SumSet::Link> layer(links.size());
      for (std::size_t i = 0; i < links.size(); ++i) layer[i] = {links[i].first, links[i].second};
      r.partial.layer_wit_.push_back(std::move(layer));
    }
    ++r.prefix_len;
    if (static_cast<std::int64_t>(r.partial.layer_sums_.back().size()) > cap) {
      r.reached = true;
      return r;
    }
  }
  r.reached = false;
  return r;
}

// ============================================================================
// Point sets P(I), P_L(I), P_N(I)
// ============================================================================

/// A plane point (sum(X) - sum(Y), sum(X) + sum(Y)) in grid units.
struct GridPoint {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend bool operator==(GridPoint a, GridPoint b) { return a.x == b.x && a.y == b.y; }
};

enum class PointVariant {
  kAll,       // disjoint X,Y unrestricted
  kLargest,   // max(I) must be placed in X or Y
  kNonempty,  // X union Y nonempty
};

enum class Side : std::uint8_t { kNone, kX, kY };

/// Non-dominated point set of one variant, plus per-layer witness links
/// sufficient to reconstruct a realizing pair (X,Y) for any final point.
/// Only the final layer's coordinates are kept; intermediate layers keep
/// their witness arrays (parent index + decision) and nothing else.
class GeneratedPoints {
 public:
  /// Final points sorted by strictly increasing x (domination resolved).
  const std::vector<GridPoint>& points() const { return final_pts_; }
  std::size_t size() const { return final_pts_.size(); }

  /// Item index sets (X,Y) realizing the point at `entry`.
  std::pair<std::vector<int>, std::vector<int>> reconstruct(std::size_t entry) const {
    std::vector<int> x, y;
    int layer = n_;
    std::uint8_t chain = final_chain_;
    std::size_t k = entry;
    while (layer > 0) {
      // The aux chain for kLargest holds a single (final) layer; for
      // kNonempty it holds one layer per item, aligned with the P chain.
      std::size_t off = chain == 0
                            ? p_off_[static_cast<std::size_t>(layer) - 1]
                            : aux_off_[single_aux_layer_ ? 0 : static_cast<std::size_t>(layer) - 1];
      std::uint32_t w = wit_arena_[off + k];
      Side side = static_cast<Side>((w >> 29) & 3u);
      if (side == Side::kX) x.push_back(layer - 1);
      if (side == Side::kY) y.push_back(layer - 1);
      chain = static_cast<std::uint8_t>(w >> 31);
      k = w & kParentMask;
      --layer;
    }
    std::reverse(x.begin(), x.end());
    std::reverse(y.begin(), y.end());
    return {std::move(x), std::move(y)};
  }

  // Witness links are packed into 32 bits: parent index (29 bits), side (2),
  // parent chain (1). Layer sizes are validated against the parent range.
  static constexpr std::uint32_t kParentMask = (std::uint32_t{1} << 29) - 1;
  static std::uint32_t pack_wit(std::size_t parent, Side side, std::uint8_t chain) {
    return static_cast<std::uint32_t>(parent) |
           (static_cast<std::uint32_t>(side) << 29) | (static_cast<std::uint32_t>(chain) << 31);
  }

 private:
  int n_ = 0;
  std::uint8_t final_chain_ = 0;
  bool single_aux_layer_ = false;
  std::vector<GridPoint> final_pts_;
  // All witness layers share one arena; per-chain offsets index into it.
  std::vector<std::uint32_t> wit_arena_;
  std::vector<std::size_t> p_off_;
  std::vector<std::size_t> aux_off_;

  friend GeneratedPoints gen_points(std::span<const std::int64_t>, PointVariant);
};

namespace detail {

/// One recurrence step: merge the carried points (optional) with the +z and
/// -z shifts of `shifted`, resolving domination (max y per x). Tie order is
/// carried, then +z, then -z; each source has unique x-coordinates. Output
/// buffers keep their capacity across calls (clear, never shrink).
template <typename PackFn>
inline void merge_shift_step(const std::vector<GridPoint>* carried, std::uint8_t carried_chain,
                             const std::vector<GridPoint>& shifted, std::uint8_t shifted_chain,
                             std::int64_t z, std::vector<GridPoint>& out_pts,
                             std::vector<std::uint32_t>& out_wit, PackFn pack) {
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
  const std::size_t na = carried ? carried->size() : 0;
  const std::size_t nb = shifted.size();
  out_pts.clear();
  out_wit.clear();
  std::size_t a = 0, b = 0, c = 0;
  while (a < na || b < nb || c < nb) {
    const std::int64_t xa = a < na ? (*carried)[a].x : kInf;
    const std::int64_t xb = b < nb ? shifted[b].x + z : kInf;
    const std::int64_t xc = c < nb ? shifted[c].x - z : kInf;
    std::int64_t x = xa < xb ? xa : xb;
    if (xc < x) x = xc;
    GridPoint best{x, 0};
    std::uint32_t w = 0;
    bool have = false;
    if (xa == x) {
      best = (*carried)[a];
      w = pack(a, Side::kNone, carried_chain);
      have = true;
      ++a;
    }
    if (xb == x) {
      std::int64_t y = shifted[b].y + z;
      if (!have || y > best.y) {
        best = {x, y};
        w = pack(b, Side::kX, shifted_chain);
        have = true;
      }
      ++b;
    }
    if (xc == x) {
      std::int64_t y = shifted[c].y + z;
      if (!have || y > best.y) {
        best = {x, y};
        w = pack(c, Side::kY, shifted_chain);
      }
      ++c;
    }
    out_pts.push_back(best);
    out_wit.push_back(w);
  }
}

}  // namespace detail

/// Generate the non-dominated point set of the requested variant, by the
/// three-way merge recurrence over item prefixes.
inline GeneratedPoints gen_points(std::span<const std::int64_t> items, PointVariant variant) {
  detail::check_grid_items(items);
  if (variant == PointVariant::kLargest) {
    if (items.empty()) {
      throw ValidationError("P_L of an empty set is undefined (no largest element)");
    }
    // The recurrence forces the final item into X or Y, so the final item
    // must attain the maximum for the largest-placed semantics to hold.
    if (*std::max_element(items.begin(), items.end()) != items.back()) {
      throw ValidationError("P_L generation requires the last item to attain max(I)");
    }
  }
  GeneratedPoints g;
  g.n_ = static_cast<int>(items.size());

  std::vector<GridPoint> p_cur = {GridPoint{0, 0}};
  std::vector<GridPoint> p_next;
  std::vector<GridPoint> aux_cur, aux_next;  // P_N chain (kNonempty only)
  std::vector<std::uint32_t> wit_buf;
  const bool need_aux_chain = variant == PointVariant::kNonempty;
  auto pack = [](std::size_t parent, Side side, std::uint8_t chain) {
    return GeneratedPoints::pack_wit(parent, side, chain);
  };
  auto commit_wit = [&](std::vector<std::size_t>& offsets) {
    offsets.push_back(g.wit_arena_.size());
    g.wit_arena_.insert(g.wit_arena_.end(), wit_buf.begin(), wit_buf.end());
  };
  auto check_layer = [](const std::vector<GridPoint>& layer) {
    if (layer.size() > GeneratedPoints::kParentMask) {
      throw ValidationError("point set layer exceeds the supported size");
    }
  };

  // P chain: stop one layer early for kLargest (its final layer drops the
  // carried stream). Other variants need all n layers.
  const int p_layers = variant == PointVariant::kLargest ? g.n_ - 1 : g.n_;
  for (int i = 0; i < p_layers; ++i) {
    std::int64_t z = items[static_cast<std::size_t>(i)];
    detail::merge_shift_step(&p_cur, std::uint8_t{0}, p_cur, std::uint8_t{0}, z, p_next, wit_buf,
                             pack);
    check_layer(p_next);
    commit_wit(g.p_off_);
    if (need_aux_chain) {
      detail::merge_shift_step(&aux_cur, std::uint8_t{1}, p_cur, std::uint8_t{0}, z, aux_next,
                               wit_buf, pack);
      check_layer(aux_next);
      commit_wit(g.aux_off_);
      std::swap(aux_cur, aux_next);
    }
    std::swap(p_cur, p_next);
  }

  switch (variant) {
    case PointVariant::kAll:
      g.final_chain_ = 0;
      g.final_pts_ = std::move(p_cur);
      break;
    case PointVariant::kNonempty:
      g.final_chain_ = 1;
      g.final_pts_ = std::move(aux_cur);
      break;
    case PointVariant::kLargest: {
      std::int64_t z = items[static_cast<std::size_t>(g.n_ - 1)];
      detail::merge_shift_step(nullptr, std::uint8_t{0}, p_cur, std::uint8_t{0}, z, p_next,
                               wit_buf, pack);
      check_layer(p_next);
      commit_wit(g.aux_off_);
      g.final_chain_ = 1;
      g.single_aux_layer_ = true;
      g.final_pts_ = std::move(p_next);
      break;
    }
  }
  return g;
}

}  // namespace ssr
