#pragma once

// Scaling-parameter machinery for E + ⌊λF⌋: collision windows Λ_{z,z'},
// collision statistics, the double-counting identity for Δ_n and the
// λ-sweep experiments.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "zdim/arithmetic.hpp"
#include "zdim/estimators.hpp"
#include "zdim/integer_set.hpp"

namespace zdim {

/// Compact window [lo, hi] of positive rationals.
class LambdaWindow {
 public:
  LambdaWindow(Rational lo, Rational hi);
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational measure() const { return hi_ - lo_; }
  bool contains(const Rational& x) const { return x >= lo_ && x <= hi_; }

 private:
  Rational lo_, hi_;
};

struct RationalPiece {
  Rational lo, hi;
  bool lo_closed = true;
  bool hi_closed = false;
  bool contains(const Rational& x) const {
    return (lo_closed ? x >= lo : x > lo) && (hi_closed ? x <= hi : x < hi);
  }
};

using Point = std::pair<Integer, Integer>;  // z = (a, b)

struct PairWindow {
  Point z, z2;
  std::optional<std::pair<Rational, Rational>> outer;  // open; unset when b = b'
  std::vector<RationalPiece> exact;                    // disjoint, increasing, inside Λ
  bool same_b = false;
  Rational measure() const;
  bool in_exact(const Rational& x) const;
};

/// Solutions of a + ⌊λb⌋ = a' + ⌊λb'⌋ with λ in Λ, from the breakpoints of
/// λ -> ⌊λb⌋ - ⌊λb'⌋. For b = b' the result is Λ (a = a') or empty.
PairWindow pair_window(const Point& z, const Point& z2, const LambdaWindow& window);

/// Necessary condition: a window meeting Λ forces minΛ|b-b'| - 1 < |a-a'| < maxΛ|b-b'| + 1.
bool difference_bound_admits(const Point& z, const Point& z2, const LambdaWindow& window);

struct CollisionOptions {
  std::uint64_t max_pairs = 100'000'000;
  bool keep_histogram = true;
};

struct CollisionReport {
  Rational lambda;
  std::uint64_t total = 0;  // Σ_m s(m) = |E_in|·|F_in|
  Integer pair_count;       // N(λ) = Σ_m s(m)², ordered pairs incl. z = z'
  std::vector<std::pair<Integer, std::uint64_t>> histogram;  // (m, s(m)), increasing m
  std::uint64_t distinct = 0;                                // |S(λ)|
  Integer energy;                                            // same value as pair_count
  Rational cs_bound;                                         // (Σs)² / Σs²
};

CollisionReport collision_stats(const IntegerSet& e_in, const IntegerSet& f_in, const Rational& lambda,
                                const CollisionOptions& options = {});

struct DeltaOptions {
  std::uint64_t max_pair_pairs = 100'000'000;  // (|E_in|·|F_in|)²
};

struct DeltaReport {
  Rational exact_value;       // Σ_{z,z'} m(Λ_{z,z'} ∩ Λ)
  std::uint64_t per_pair_terms = 0;  // ordered pairs with a nonempty window
  Rational quadrature_value;  // ∫_Λ N(λ) dλ summed gap by gap
  HighFloat quadrature_high;
  std::uint64_t breakpoint_count = 0;
};

/// Both sides of the double-counting identity, computed independently.
/// Element magnitudes must stay below 2^40 and Λ's terms below 2^20.
DeltaReport delta_exact(const IntegerSet& e_in, const IntegerSet& f_in, const LambdaWindow& window,
                        const DeltaOptions& options = {});

/// m(Λ_{z,z'} ∩ Λ) by integer event walk; used by delta_exact.
Rational window_measure(const Point& z, const Point& z2, const LambdaWindow& window);

struct MatchedPair {
  Interval i, j;
};

struct SweepOptions {
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  HighFloat threshold = 0.6;
  std::uint64_t max_pairs = 100'000'000;
  ScanSchedule schedule;  // for the sum's dimension estimate
  bool collisions = true;
};

struct SweepRecord {
  Rational lambda;
  std::size_t pair_index = 0;
  HighFloat dimension;
  Interval witness;
  std::uint64_t distinct = 0;
  Integer target_length;  // |I + ⌊λJ⌋|
  std::optional<Integer> energy;
  std::optional<Rational> cs_bound;
  bool above = false;
};

struct SweepSummary {
  std::size_t count = 0;
  std::size_t above = 0;
  double fraction_above = 0;
  HighFloat min, median, max;
};

struct SweepReport {
  Rational window_lo, window_hi;
  HighFloat threshold;
  std::uint64_t seed = 0;
  std::vector<SweepRecord> records;
  SweepSummary summary;
};

/// `samples` rationals u/10^6 drawn uniformly from Λ by mt19937_64(seed).
std::vector<Rational> draw_lambdas(const LambdaWindow& window, std::size_t samples, std::uint64_t seed);

/// Dimension of E∩I + ⌊λ(F∩J)⌋ for each drawn λ (cycling through `pairs`).
SweepReport sweep(const IntegerSet& e, const IntegerSet& f, const LambdaWindow& window,
                  const std::vector<MatchedPair>& pairs, const SweepOptions& options);

/// One record for a given λ; the unit sweep() maps over.
SweepRecord sweep_one(const IntegerSet& e, const IntegerSet& f, const MatchedPair& pair, const Rational& lambda,
                      const SweepOptions& options);

SweepSummary summarize(const std::vector<SweepRecord>& records, const HighFloat& threshold);

struct MultiSweepRecord {
  std::vector<Rational> lambdas;  // λ_1..λ_k
  HighFloat dimension;
  std::uint64_t distinct = 0;
  Integer target_length;
  bool above = false;
};

struct MultiSweepReport {
  HighFloat target;  // min(1, Σ D̂(E_i))
  HighFloat threshold;
  std::vector<MultiSweepRecord> records;
  SweepSummary summary;
};

/// E_0∩I_0 + ⌊λ_1(E_1∩I_1)⌋ + ... with every λ_i drawn from Λ.
MultiSweepReport multi_sweep(const std::vector<IntegerSet>& sets, const std::vector<Interval>& windows,
                             const LambdaWindow& window, const SweepOptions& options);

}  // namespace zdim
