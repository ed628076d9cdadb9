#pragma once

// Serial, deliberately naive counterparts of the kernels and estimators.
// Tests use them as oracles; bench/ times them against the parallel code.

#include <cstdint>
#include <vector>

#include "zdim/integer_set.hpp"
#include "zdim/kernels.hpp"
#include "zdim/numeric.hpp"

namespace zdim::reference {

template <class T>
std::vector<kernels::MinSpan<T>> min_span_by_count(std::span<const T> xs, const T& min_span,
                                                   const kernels::CountPlan& plan);

/// All |xs|·|ys| sums, sorted by std::sort.
std::vector<std::int64_t> pair_sums_sorted(std::span<const std::int64_t> xs, std::span<const std::int64_t> ys);

/// Distinct sums via a sorted, deduplicated vector of Integer.
std::vector<Integer> distinct_sums(const std::vector<Integer>& xs, const std::vector<Integer>& ys);

struct BestInterval {
  HighFloat value;
  Integer lo;
  Integer hi;
  std::size_t count = 0;
  bool found = false;
};

/// Brute force over every pair i <= j of element indices with
/// count >= min_count and length >= min_length; ratio log c / log L.
BestInterval best_dimension(const std::vector<Integer>& xs, const Integer& min_length, std::size_t min_count = 2);

/// Same enumeration for c / L^alpha.
BestInterval best_measure(const std::vector<Integer>& xs, const Rational& alpha, const Integer& min_length,
                          std::size_t min_count = 2);

}  // namespace zdim::reference
