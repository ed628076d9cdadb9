#pragma once

// Sup-ratio functional, dyadic thinning, regular-subset extraction and the
// ladder diagnostics for regularity, compatibility and universality.

#include <optional>
#include <string>
#include <vector>

#include "zdim/estimators.hpp"
#include "zdim/integer_set.hpp"

namespace zdim {

struct SupRatio {
  HighFloat value;
  Interval witness;
  Rational alpha;
  std::size_t count = 0;
  bool exact = true;  // false when the block exceeded the exact-scan cap
};

/// Largest element count above which sup_ratio subsamples counts.
inline constexpr std::size_t kSupRatioExactCap = 5000;

/// max over aligned J ⊆ I of |F∩J| / |J|^alpha, single elements included.
SupRatio sup_ratio(const IntegerSet& f, const Interval& interval, const Rational& alpha);

struct ThinningStep {
  std::size_t size = 0;
  HighFloat s;
};

struct ThinningTrace {
  HighFloat initial_s;
  std::size_t initial_size = 0;
  std::vector<ThinningStep> steps;
  IntegerSet final_set;
  HighFloat final_s;
  bool stalled = false;  // s > 2 with at most 3 elements left
};

/// {a_1..a_k} -> {a_1, a_2, a_4, ..., a_{2⌈k/2⌉-2}, a_k}.
IntegerSet dyadic_step(const IntegerSet& f);

/// Applies dyadic_step to F∩I until s_F(I) <= 2.
ThinningTrace dyadic_thin(const IntegerSet& f, const Interval& interval, const Rational& alpha);

struct RegularBlock {
  Interval j;     // witness interval J_n
  Interval hull;  // I_n
  ThinningTrace thinning;
  HighFloat hull_s;     // s_{F_n}(I_n), required <= 3
  HighFloat block_ratio;  // |F_n ∩ J_n| / |J_n|^alpha, required > 1/2
  bool condition_i = false;
  bool condition_ii = false;
};

struct RegularSubset {
  IntegerSet set;
  std::vector<RegularBlock> blocks;
  bool truncation_exhausted = false;
  bool exact = true;
};

RegularSubset extract_regular_subset(const IntegerSet& e, const Rational& alpha, std::size_t n_blocks);

/// Best interval of one fixed length, anchored at elements.
struct Rung {
  Integer length;
  std::size_t count = 0;
  Integer lo;  // interval (lo, lo + length]
  HighFloat ratio;  // count / length^alpha
};

/// Powers of two (or of sqrt 2 when dense) from 2 up to the hull length,
/// plus the hull length itself.
std::vector<Integer> geometric_ladder(const Integer& max_length, bool dense = false);

std::vector<Rung> ladder_scan(const IntegerSet& e, const std::vector<Integer>& lengths, const HighFloat& alpha);

enum class Trend { kBounded, kGrowing };
std::string to_string(Trend t);

struct RegularityReport {
  DimensionEstimate dimension;
  MeasureEstimate measure;  // max ratio over the ladder at alpha_hat
  std::vector<Rung> rungs;
  HighFloat slope;  // least-squares slope of log ratio against log length
  Trend trend = Trend::kBounded;
};

RegularityReport regularity_diagnostic(const IntegerSet& e, const ScanSchedule& schedule = {});

struct CompatibilityPair {
  Interval i, j;
  std::size_t count_e = 0, count_f = 0;
  Rational length_ratio;
  HighFloat constant_e, constant_f;  // count / length^D
};

struct CompatibilityReport {
  HighFloat dim_e, dim_f;
  Rational ratio_band, c_min;
  std::vector<Integer> rungs;
  std::vector<std::optional<CompatibilityPair>> pairs;  // one slot per rung
  std::size_t found() const;
};

/// Dimensions default to the estimators' D̂; pass declared values to test a
/// construction against its intended exponents.
CompatibilityReport compatibility_check(const IntegerSet& e, const IntegerSet& f, const Rational& ratio_band,
                                        const Rational& c_min, std::optional<HighFloat> dim_e = std::nullopt,
                                        std::optional<HighFloat> dim_f = std::nullopt);

struct UniversalityReport {
  HighFloat dimension;
  Rational c_min;
  std::vector<Rung> rungs;
  std::vector<bool> pass;
  bool universal = true;
};

UniversalityReport universality_check(const IntegerSet& e, const Rational& c_min,
                                      std::optional<HighFloat> dimension = std::nullopt);

}  // namespace zdim
