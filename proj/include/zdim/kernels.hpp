#pragma once

// Data-parallel inner loops. Each kernel has a serial twin in
// zdim/reference.hpp that tests and bench/ compare against.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "zdim/numeric.hpp"

namespace zdim::kernels {

/// Element counts a pair scan visits, largest first.
struct CountPlan {
  std::vector<std::size_t> counts;
  std::uint64_t pairs = 0;  // windows inspected in total
  bool subsampled = false;
};

/// Every count in [min_count, n] when that costs at most `budget` windows;
/// otherwise counts n, n-s, n-2s, ... with the smallest stride s that fits.
CountPlan plan_counts(std::size_t n, std::size_t min_count, std::uint64_t budget);

template <class T>
struct MinSpan {
  std::size_t count = 0;
  std::size_t first = 0;  // index of the window's first element
  T span{};               // x[first + count - 1] - x[first] + 1
  bool found = false;
};

/// For each planned count c: the shortest window of c consecutive elements
/// whose span is >= min_span, leftmost on ties. Parallel over counts.
template <class T>
std::vector<MinSpan<T>> min_span_by_count(std::span<const T> xs, const T& min_span, const CountPlan& plan);

/// ⌊p·b/q⌋ for every b, order preserved (duplicates kept). q > 0.
std::vector<std::int64_t> floor_scale_small(std::span<const std::int64_t> xs, std::int64_t p, std::int64_t q);
std::vector<Integer> floor_scale_big(std::span<const Integer> xs, const Rational& lambda);

/// Sorted multiset {a + b : a in xs, b in ys}; both inputs sorted ascending.
/// Rows are filled in parallel and merged pairwise.
std::vector<std::int64_t> pair_sums_sorted(std::span<const std::int64_t> xs, std::span<const std::int64_t> ys);
std::vector<Integer> pair_sums_sorted(std::span<const Integer> xs, std::span<const Integer> ys);

/// Distinct sums via a bitmap over [xs.front()+ys.front(), xs.back()+ys.back()].
std::vector<std::int64_t> distinct_sums_bitmap(std::span<const std::int64_t> xs, std::span<const std::int64_t> ys);

/// Multiplicity of each value in a sorted run: (value, count) pairs.
template <class T>
std::vector<std::pair<T, std::uint64_t>> run_lengths(std::span<const T> sorted);

}  // namespace zdim::kernels
