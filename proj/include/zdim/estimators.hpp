#pragma once

// Interval-scan estimators for density, counting dimension and counting
// alpha-measure of a finite set. All maxima run over element-aligned
// intervals (x_i - 1, x_j]; the result is a lower approximation of the
// limsup over the truncation.

#include <cstdint>
#include <optional>

#include "zdim/integer_set.hpp"
#include "zdim/numeric.hpp"

namespace zdim {

struct ScanSchedule {
  std::uint64_t pair_budget = 50'000'000;
  /// Shortest admissible witness. Unset means ceil(sqrt(hull length)), which
  /// keeps a handful of adjacent elements from deciding the estimate.
  std::optional<Integer> min_length;
  /// Fewest elements a candidate may hold; a set of size 1 always uses 1.
  std::size_t min_count = 2;

  /// Every aligned interval with at least two elements.
  static ScanSchedule exhaustive() {
    ScanSchedule s;
    s.min_length = Integer(1);
    return s;
  }
  static ScanSchedule with_min_length(Integer length) {
    ScanSchedule s;
    s.min_length = std::move(length);
    return s;
  }
};

/// min_length after resolving the default against E's hull.
Integer effective_min_length(const IntegerSet& e, const ScanSchedule& schedule);

struct DimensionEstimate {
  HighFloat alpha_hat;
  std::optional<Rational> alpha_exact;  // set when count^q = length^p for small q
  Interval witness;
  std::size_t count = 0;
  std::uint64_t pairs_scanned = 0;
  bool subsampled = false;
};

struct MeasureEstimate {
  HighFloat value;
  std::optional<Rational> value_exact;  // when |witness|^alpha is an integer
  Rational alpha;
  std::optional<Interval> witness;  // empty only for the empty set
  std::size_t count = 0;
  std::uint64_t pairs_scanned = 0;
  bool subsampled = false;
};

std::size_t count_in(const IntegerSet& e, const Interval& interval);

/// max |E∩I|/|I|. Empty E gives value 0 without a witness.
MeasureEstimate density_estimate(const IntegerSet& e, const ScanSchedule& schedule = {});

/// max log|E∩I| / log|I|. Throws std::invalid_argument for |E| < 2.
DimensionEstimate dimension_estimate(const IntegerSet& e, const ScanSchedule& schedule = {});

/// max |E∩I| / |I|^alpha for alpha in [0,1].
MeasureEstimate alpha_measure_estimate(const IntegerSet& e, const Rational& alpha, const ScanSchedule& schedule = {});

/// D̂(E) <= D̂(F) for E ⊆ F, both scanned with F's resolved schedule.
/// Throws std::invalid_argument("not a subset") otherwise.
bool monotonicity_check(const IntegerSet& e, const IntegerSet& f, const ScanSchedule& schedule = {});

/// Relative tolerance under which two HighFloat scores count as equal.
HighFloat score_tolerance();

}  // namespace zdim
