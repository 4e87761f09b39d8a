#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ssr/core.hpp"

namespace ssr {

/// PRNG algorithm used by all generators; recorded in generated metadata so
/// runs are reproducible across builds of this code base.
inline constexpr const char* kGeneratorAlgorithm = "mt19937_64";

namespace detail {

/// Uniform double in [0,1) with a pinned mapping (the standard library's
/// distributions are not specified bit-exactly; the raw engine is).
inline double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// n values drawn independently uniform on [lo, hi], sorted.
inline Instance gen_uniform(int n, double lo, double hi, std::uint64_t seed,
                            double epsilon = 0.1) {
  if (n < 2) throw TooFewItemsError("gen_uniform requires n >= 2");
  if (!(lo > 0.0) || !(lo <= hi) || !std::isfinite(hi)) {
    throw ValidationError("gen_uniform requires 0 < lo <= hi");
  }
  std::mt19937_64 rng(seed);
  std::vector<double> items;
  items.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    items.push_back(lo + detail::unit_double(rng) * (hi - lo));
  }
  return validate_instance(std::move(items), epsilon);
}

/// As gen_uniform but with integer-valued items (uniform on [lo, hi]).
inline Instance gen_uniform_int(int n, std::int64_t lo, std::int64_t hi, std::uint64_t seed,
                                double epsilon = 0.1) {
  if (n < 2) throw TooFewItemsError("gen_uniform_int requires n >= 2");
  if (!(lo > 0) || lo > hi) throw ValidationError("gen_uniform_int requires 0 < lo <= hi");
  std::mt19937_64 rng(seed);
  std::vector<double> items;
  items.reserve(static_cast<std::size_t>(n));
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  for (int i = 0; i < n; ++i) {
    items.push_back(static_cast<double>(lo + static_cast<std::int64_t>(rng() % span)));
  }
  return validate_instance(std::move(items), epsilon);
}

/// The family {1, 2, ..., n-1, n(n-1)/2}: the full prefix balances exactly
/// against the big item, but no short suffix window does.
inline Instance gen_paper_family(int n, double epsilon = 0.1) {
  if (n < 3) throw ValidationError("gen_paper_family requires n >= 3");
  std::vector<double> items;
  items.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n - 1; ++i) items.push_back(static_cast<double>(i));
  items.push_back(static_cast<double>(n) * (n - 1) / 2.0);
  return validate_instance(std::move(items), epsilon);
}

/// Geometric progression base^0 .. base^(n-1) with seeded multiplicative
/// jitter; nowhere dense, so it exercises the large-spread branches.
inline Instance gen_geometric(int n, double base, std::uint64_t seed, double jitter = 0.01,
                              double epsilon = 0.1) {
  if (n < 2) throw TooFewItemsError("gen_geometric requires n >= 2");
  if (!(base > 1.0) || !std::isfinite(base)) {
    throw ValidationError("gen_geometric requires base > 1");
  }
  if (!(jitter >= 0.0) || jitter >= 0.5) {
    throw ValidationError("gen_geometric requires jitter in [0, 0.5)");
  }
  std::mt19937_64 rng(seed);
  std::vector<double> items;
  items.reserve(static_cast<std::size_t>(n));
  double v = 1.0;
  for (int i = 0; i < n; ++i) {
    double u = detail::unit_double(rng);
    items.push_back(v * (1.0 + jitter * (2.0 * u - 1.0)));
    v *= base;
  }
  return validate_instance(std::move(items), epsilon);
}

}  // namespace ssr
