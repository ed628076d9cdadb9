#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "support.hpp"
#include "zdim/estimators.hpp"
#include "zdim/generators.hpp"
#include "zdim/reference.hpp"
#include "zdim/zset_io.hpp"

using namespace zdim;
using zdim::test::random_set;
using zdim::test::set_of;
using zdim::test::uniform;

namespace {

double d(const HighFloat& x) { return x.convert_to<double>(); }

IntegerSet cantor3(std::size_t depth) { return cantor_set({TransitionMatrix::full(2), 3, {0, 2}, depth}).set; }

IntegerSet squares(std::uint64_t n) { return power_set(Rational(1, 2), n); }

}  // namespace

TEST(Interval, RejectsEmpty) {
  EXPECT_THROW(Interval(3, 3), std::invalid_argument);
  EXPECT_EQ(Interval(-2, 5).length(), 7);
  EXPECT_TRUE(Interval(0, 4).contains(Integer(4)));
  EXPECT_FALSE(Interval(0, 4).contains(Integer(0)));
}

TEST(IntegerSet, StorageSwitchesForHugeElements) {
  const Integer huge = Integer(1) << 80;
  const IntegerSet s = IntegerSet::from_unsorted({huge, Integer(3), Integer(-1), Integer(3)});
  EXPECT_FALSE(s.is_small());
  EXPECT_EQ(s.size(), 3u);
  EXPECT_EQ(s.back(), huge);
  EXPECT_TRUE(set_of({5, 1, 3}).is_small());
  EXPECT_THROW(IntegerSet::from_sorted({Integer(2), Integer(2)}), std::invalid_argument);
}

TEST(CountIn, Examples) {
  EXPECT_EQ(count_in(squares(1000), Interval(0, 100)), 10u);
  EXPECT_EQ(count_in(IntegerSet(), Interval(0, 100)), 0u);
  // digit-string oracle: x < 81 with base-3 digits in {0,2}
  std::size_t oracle = 0;
  for (int x = 1; x <= 27; ++x) {
    bool ok = true;
    for (int y = x; y > 0; y /= 3) ok = ok && (y % 3 != 1);
    oracle += ok;
  }
  EXPECT_EQ(oracle, 7u);
  EXPECT_EQ(count_in(cantor3(3), Interval(0, 27)), oracle);
}

TEST(CountIn, AdditiveOverAdjacentIntervals) {
  std::mt19937_64 gen(1);
  for (int t = 0; t < 200; ++t) {
    const IntegerSet e = random_set(gen, 1 + gen() % 300, -500, 500);
    const std::int64_t m = uniform(gen, -600, 600), n = m + uniform(gen, 2, 600);
    const std::int64_t k = uniform(gen, m + 1, n - 1);
    EXPECT_EQ(count_in(e, Interval(m, k)) + count_in(e, Interval(k, n)), count_in(e, Interval(m, n)));
  }
}

TEST(Density, Examples) {
  std::vector<std::int64_t> all, evens;
  for (std::int64_t x = 1; x <= 1000; ++x) {
    all.push_back(x);
    if (x % 2 == 0) evens.push_back(x);
  }
  EXPECT_EQ(density_estimate(IntegerSet::from_sorted_small(all)).value, 1);
  EXPECT_GE(density_estimate(IntegerSet::from_sorted_small(evens)).value, HighFloat(1) / 2);

  const IntegerSet sq = squares(1000);
  const MeasureEstimate m = density_estimate(sq);
  EXPECT_LE(m.value, HighFloat(2) / 3);
  EXPECT_EQ(HighFloat(count_in(sq, sq.hull())) / to_high(sq.hull().length()), HighFloat(1000) / 1000000);

  const MeasureEstimate empty = density_estimate(IntegerSet());
  EXPECT_EQ(empty.value, 0);
  EXPECT_FALSE(empty.witness.has_value());
}

TEST(Dimension, SquaresExactHalf) {
  const DimensionEstimate e = dimension_estimate(squares(1000));
  ASSERT_TRUE(e.alpha_exact.has_value());
  EXPECT_EQ(*e.alpha_exact, Rational(1, 2));
  EXPECT_EQ(e.witness.lo(), 0);
  // ties at every (0, k^2] resolve to the shortest admissible one
  const Integer k = iroot(e.witness.hi(), 2);
  EXPECT_EQ(k * k, e.witness.hi());
  EXPECT_GE(e.witness.length(), effective_min_length(squares(1000), {}));
  EXPECT_FALSE(e.subsampled);
}

TEST(Dimension, AdjacentPair) {
  const DimensionEstimate e = dimension_estimate(set_of({0, 1}));
  EXPECT_EQ(e.alpha_hat, 1);
  EXPECT_EQ(e.witness, Interval(-1, 1));
}

TEST(Dimension, TernaryCantor) {
  const DimensionEstimate e = dimension_estimate(cantor3(12));
  EXPECT_NEAR(d(e.alpha_hat), std::log(2.0) / std::log(3.0), 0.01);
  EXPECT_LE(e.alpha_hat, 1);
}

TEST(Dimension, DegenerateSetThrows) {
  EXPECT_THROW(dimension_estimate(set_of({4})), std::invalid_argument);
  EXPECT_THROW(dimension_estimate(IntegerSet()), std::invalid_argument);
}

TEST(AlphaMeasure, Examples) {
  const MeasureEstimate sq = alpha_measure_estimate(squares(1000), Rational(1, 2));
  EXPECT_GT(sq.value, 0);
  EXPECT_LE(sq.value, 1);

  const IntegerSet e = set_of({3, 9, 10, 40, 41, 42});
  const MeasureEstimate zero = alpha_measure_estimate(e, Rational(0), ScanSchedule::exhaustive());
  EXPECT_EQ(zero.value, 6);
  EXPECT_EQ(*zero.witness, e.hull());

  const double log23 = std::log(2.0) / std::log(3.0);
  Rational a(log23);
  EXPECT_LE(d(alpha_measure_estimate(cantor3(10), a).value), 1.0 + 1e-9);

  EXPECT_THROW(alpha_measure_estimate(e, Rational(-1, 2)), std::invalid_argument);
  EXPECT_THROW(alpha_measure_estimate(e, Rational(3, 2)), std::invalid_argument);
}

TEST(AlphaMeasure, ValueMatchesWitness) {
  std::mt19937_64 gen(2);
  for (int t = 0; t < 50; ++t) {
    const IntegerSet e = random_set(gen, 2 + gen() % 200, 0, 5000);
    const Rational alpha(static_cast<long>(gen() % 11), 10);
    const MeasureEstimate m = alpha_measure_estimate(e, alpha);
    const HighFloat expect = HighFloat(count_in(e, *m.witness)) /
                             (alpha == 0 ? HighFloat(1) : exp(to_high(alpha) * log(to_high(m.witness->length()))));
    EXPECT_LE(abs(m.value - expect), expect * score_tolerance() * 1024);
    EXPECT_EQ(m.count, count_in(e, *m.witness));
  }
}

TEST(Monotonicity, Examples) {
  EXPECT_TRUE(monotonicity_check(squares(100), squares(1000)));
  EXPECT_TRUE(monotonicity_check(IntegerSet(), squares(1000)));
  const IntegerSet c = cantor3(9);
  std::vector<Integer> half;
  for (std::size_t i = 0; i < c.size(); i += 2) half.push_back(c[i]);
  EXPECT_TRUE(monotonicity_check(IntegerSet::from_sorted(half), c));
  EXPECT_THROW(monotonicity_check(set_of({2, 3}), set_of({2, 4})), std::invalid_argument);
}

TEST(Monotonicity, RandomSubsets) {
  std::mt19937_64 gen(3);
  for (int t = 0; t < 50; ++t) {
    const IntegerSet f = random_set(gen, 2 + gen() % 300, 0, 3000);
    std::vector<Integer> sub;
    for (const auto& x : f.elements())
      if (gen() % 3) sub.push_back(x);
    EXPECT_TRUE(monotonicity_check(IntegerSet::from_sorted(sub), f));
  }
}

TEST(AlphaMeasure, NonIncreasingInAlpha) {
  std::mt19937_64 gen(4);
  for (int t = 0; t < 40; ++t) {
    const IntegerSet e = random_set(gen, 2 + gen() % 200, -1000, 1000);
    HighFloat prev = -1;
    for (int k = 10; k >= 0; --k) {
      const HighFloat v = alpha_measure_estimate(e, Rational(k, 10)).value;
      if (prev >= 0) {
        EXPECT_GE(v, prev);
      }
      prev = v;
    }
  }
}

TEST(Dimension, TranslationAndReflectionInvariant) {
  std::mt19937_64 gen(5);
  for (int t = 0; t < 40; ++t) {
    const IntegerSet e = random_set(gen, 2 + gen() % 300, -2000, 2000);
    const Integer c = uniform(gen, -100000, 100000);
    const DimensionEstimate base = dimension_estimate(e);
    const DimensionEstimate moved = dimension_estimate(translate(e, c));
    const DimensionEstimate flipped = dimension_estimate(negate(e));
    EXPECT_EQ(base.alpha_hat, moved.alpha_hat);
    EXPECT_EQ(base.witness.lo() + c, moved.witness.lo());
    EXPECT_EQ(base.alpha_hat, flipped.alpha_hat);
  }
}

TEST(Dimension, UnionDominatesParts) {
  std::mt19937_64 gen(6);
  for (int t = 0; t < 40; ++t) {
    const IntegerSet e = random_set(gen, 2 + gen() % 200, 0, 4000);
    const IntegerSet f = random_set(gen, 2 + gen() % 200, 0, 4000);
    const IntegerSet u = set_union(e, f);
    // shared schedule: the union's floor
    const ScanSchedule s = ScanSchedule::with_min_length(effective_min_length(u, {}));
    HighFloat best = 0;
    for (const IntegerSet* part : {&e, &f})
      if (part->hull().length() >= *s.min_length) best = std::max(best, dimension_estimate(*part, s).alpha_hat);
    EXPECT_GE(dimension_estimate(u, s).alpha_hat, best);
  }
}

TEST(Dimension, SubsampledNeverExceedsFull) {
  std::mt19937_64 gen(7);
  for (int t = 0; t < 20; ++t) {
    const IntegerSet e = random_set(gen, 500 + gen() % 500, 0, 100000);
    ScanSchedule small;
    small.pair_budget = 2000;
    const DimensionEstimate sub = dimension_estimate(e, small);
    const DimensionEstimate full = dimension_estimate(e);
    EXPECT_TRUE(sub.subsampled);
    EXPECT_FALSE(full.subsampled);
    EXPECT_LE(sub.pairs_scanned, 2000u);
    EXPECT_LE(sub.alpha_hat, full.alpha_hat);
  }
}

TEST(Dimension, MatchesBruteForceOracle) {
  std::mt19937_64 gen(8);
  for (int t = 0; t < 60; ++t) {
    const IntegerSet e = random_set(gen, 2 + gen() % 120, -300, 300);
    const ScanSchedule s = t % 2 ? ScanSchedule::exhaustive() : ScanSchedule{};
    const Integer floor_len = effective_min_length(e, s);
    const auto oracle = reference::best_dimension(e.elements(), floor_len);
    ASSERT_TRUE(oracle.found);
    const DimensionEstimate got = dimension_estimate(e, s);
    EXPECT_LE(abs(got.alpha_hat - oracle.value), HighFloat(1e-25));
    const Rational alpha(static_cast<long>(gen() % 11), 10);
    const auto moracle = reference::best_measure(e.elements(), alpha, floor_len);
    EXPECT_LE(abs(alpha_measure_estimate(e, alpha, s).value - moracle.value), moracle.value * HighFloat(1e-25));
  }
}

TEST(ZsetIo, RoundTrip) {
  IntegerSet s = IntegerSet::from_unsorted({Integer(-5), Integer(0), Integer(1) << 70}, "test set");
  std::stringstream buf;
  write_zset(buf, s);
  EXPECT_EQ(buf.str().rfind("#zset v1\n#provenance test set\n-5\n0\n", 0), 0u);
  const IntegerSet back = read_zset(buf);
  EXPECT_EQ(back, s);
  EXPECT_EQ(back.provenance(), "test set");
}

TEST(ZsetIo, RejectsBadInput) {
  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      read_zset(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("#zset v1\n1\n3\n2\n"), 4u);
  EXPECT_EQ(line_of("#zset v1\n1\n1\n"), 3u);
  EXPECT_EQ(line_of("#zset v1\n 1\n"), 2u);
  EXPECT_EQ(line_of("#zset v2\n1\n"), 1u);
  EXPECT_EQ(line_of("#zset v1\n#provenance x\n12a\n"), 3u);
  EXPECT_EQ(line_of("#zset v1\n-0\n4\n"), 2u);  // non-canonical zero
}
