#include <gtest/gtest.h>

#include <map>
#include <omp.h>

#include "support.hpp"
#include "zdim/generators.hpp"
#include "zdim/marstrand.hpp"

using namespace zdim;
using zdim::test::random_set;
using zdim::test::set_of;

namespace {

double d(const HighFloat& x) { return x.convert_to<double>(); }

bool collide(const Point& z, const Point& w, const Rational& lambda) {
  return z.first + floor(lambda * z.second) == w.first + floor(lambda * w.second);
}

Rational random_rational(std::mt19937_64& gen, const LambdaWindow& w, long den) {
  const Rational span = w.measure();
  Rational q = w.lo() + span * Rational(static_cast<long>(gen() % (den + 1)), den);
  q.canonicalize();
  return q;
}

Point random_point(std::mt19937_64& gen, std::int64_t range) {
  return {Integer(static_cast<long>(zdim::test::uniform(gen, -range, range))),
          Integer(static_cast<long>(zdim::test::uniform(gen, 0, range)))};
}

}  // namespace

TEST(LambdaWindow, RejectsNonPositiveAndDegenerate) {
  EXPECT_THROW(LambdaWindow(Rational(-1), Rational(1)), std::invalid_argument);
  EXPECT_THROW(LambdaWindow(Rational(0), Rational(1)), std::invalid_argument);
  EXPECT_THROW(LambdaWindow(Rational(2), Rational(2)), std::invalid_argument);
  EXPECT_EQ(LambdaWindow(Rational(1), Rational(5, 2)).measure(), Rational(3, 2));
}

TEST(PairWindow, Examples) {
  const LambdaWindow w(Rational(1), Rational(2));
  // 0 + ⌊λ·2⌋ = 1 + ⌊λ·1⌋ holds for λ in [1, 3/2)
  const PairWindow p = pair_window({0, 2}, {1, 1}, w);
  EXPECT_EQ(p.measure(), Rational(1, 2));
  EXPECT_TRUE(p.in_exact(Rational(1)));
  EXPECT_FALSE(p.in_exact(Rational(3, 2)));
  // equal b: all of Λ or nothing
  EXPECT_EQ(pair_window({3, 5}, {3, 5}, w).measure(), 1);
  EXPECT_EQ(pair_window({3, 5}, {4, 5}, w).measure(), 0);
  EXPECT_TRUE(pair_window({3, 5}, {4, 5}, w).same_b);
}

TEST(PairWindow, MembershipMatchesDirectEvaluation) {
  std::mt19937_64 gen(51);
  const LambdaWindow w(Rational(1, 2), Rational(3));
  for (int t = 0; t < 300; ++t) {
    const Point z = random_point(gen, 40), z2 = random_point(gen, 40);
    const PairWindow p = pair_window(z, z2, w);
    for (int s = 0; s < 40; ++s) {
      const Rational lambda = random_rational(gen, w, 997);
      EXPECT_EQ(p.in_exact(lambda), collide(z, z2, lambda));
    }
    // every breakpoint and piece endpoint is also checked exactly
    for (const auto& piece : p.exact) {
      for (const Rational& x : {piece.lo, piece.hi}) {
        if (w.contains(x)) {
          EXPECT_EQ(p.in_exact(x), collide(z, z2, x));
        }
      }
    }
    EXPECT_EQ(p.measure(), window_measure(z, z2, w));
    if (p.measure() > 0) {
      EXPECT_TRUE(difference_bound_admits(z, z2, w));
    }
  }
}

TEST(PairWindow, MeasureIsSymmetric) {
  std::mt19937_64 gen(52);
  const LambdaWindow w(Rational(2, 3), Rational(7, 4));
  for (int t = 0; t < 500; ++t) {
    const Point z = random_point(gen, 1000), z2 = random_point(gen, 1000);
    EXPECT_EQ(window_measure(z, z2, w), window_measure(z2, z, w));
  }
}

TEST(Collision, SmallHistogram) {
  const CollisionReport r = collision_stats(set_of({0, 1, 2}), set_of({0, 1, 2}), Rational(1));
  EXPECT_EQ(r.total, 9u);
  EXPECT_EQ(r.distinct, 5u);
  EXPECT_EQ(r.pair_count, 19);
  EXPECT_EQ(r.energy, 19);
  EXPECT_EQ(r.cs_bound, Rational(81, 19));
  const std::vector<std::uint64_t> s{1, 2, 3, 2, 1};
  ASSERT_EQ(r.histogram.size(), 5u);
  for (std::size_t m = 0; m < 5; ++m) {
    EXPECT_EQ(r.histogram[m].first, static_cast<long>(m));
    EXPECT_EQ(r.histogram[m].second, s[m]);
  }
}

TEST(Collision, MatchesNaiveMultiplicities) {
  std::mt19937_64 gen(53);
  for (int t = 0; t < 60; ++t) {
    const std::int64_t range = t % 3 == 0 ? 50 : (t % 3 == 1 ? 100000 : 1'000'000'000'000LL);
    const IntegerSet e = random_set(gen, 1 + gen() % 120, -range, range);
    const IntegerSet f = random_set(gen, 1 + gen() % 120, 0, range);
    const Rational lambda(static_cast<long>(1 + gen() % 500), static_cast<long>(1 + gen() % 200));
    std::map<Integer, std::uint64_t> naive;
    for (const auto& a : e.elements())
      for (const auto& b : f.elements()) ++naive[a + floor(lambda * b)];
    const CollisionReport r = collision_stats(e, f, lambda);
    Integer energy = 0;
    for (const auto& [m, s] : naive) energy += s * s;
    EXPECT_EQ(r.distinct, naive.size());
    EXPECT_EQ(r.pair_count, energy);
    EXPECT_EQ(r.total, e.size() * f.size());
    using Histogram = std::vector<std::pair<Integer, std::uint64_t>>;
    EXPECT_EQ(r.histogram, Histogram(naive.begin(), naive.end()));
    // Cauchy-Schwarz: |S| >= (Σs)² / Σs²
    EXPECT_GE(Rational(static_cast<unsigned long>(r.distinct)), r.cs_bound);
  }
}

TEST(Delta, IdentityAndPairwiseSum) {
  std::mt19937_64 gen(54);
  for (int t = 0; t < 12; ++t) {
    const IntegerSet e = random_set(gen, 2 + gen() % 12, 0, 200);
    const IntegerSet f = random_set(gen, 2 + gen() % 12, 0, 200);
    const LambdaWindow w(Rational(1 + static_cast<long>(gen() % 3), 2), Rational(5, 2));
    const DeltaReport rep = delta_exact(e, f, w);
    EXPECT_EQ(rep.exact_value, rep.quadrature_value);
    std::vector<Point> pts;
    for (const auto& a : e.elements())
      for (const auto& b : f.elements()) pts.emplace_back(a, b);
    Rational naive = 0;
    for (const auto& z : pts)
      for (const auto& z2 : pts) naive += pair_window(z, z2, w).measure();
    EXPECT_EQ(rep.exact_value, naive);
    EXPECT_NEAR(d(rep.quadrature_high), naive.get_d(), 1e-12 * naive.get_d());
  }
}

TEST(Delta, DiagonalLowerBound) {
  // Δ >= |E||F|·m(Λ) from z = z'
  const IntegerSet e = cantor_set({TransitionMatrix::full(2), 3, {0, 2}, 4}).set;
  const LambdaWindow w(Rational(1), Rational(2));
  const DeltaReport rep = delta_exact(e, e, w);
  EXPECT_GE(rep.exact_value, Rational(static_cast<unsigned long>(e.size() * e.size())));
  EXPECT_EQ(rep.exact_value, rep.quadrature_value);
}

TEST(Delta, GuardThrows) {
  std::mt19937_64 gen(55);
  const IntegerSet e = random_set(gen, 200, 0, 10000);
  EXPECT_THROW(delta_exact(e, e, LambdaWindow(Rational(1), Rational(2)), DeltaOptions{1000}), SizeGuardError);
}

TEST(DrawLambdas, PinnedStream) {
  const auto q = draw_lambdas(LambdaWindow(Rational(1), Rational(2)), 5, 0);
  const std::vector<std::string> golden{"1834587/1000000", "19009/10000", "636373/500000", "1916963/1000000",
                                        "893253/500000"};
  ASSERT_EQ(q.size(), golden.size());
  for (std::size_t i = 0; i < q.size(); ++i) EXPECT_EQ(to_string(q[i]), golden[i]);
}

TEST(DrawLambdas, GridWindowAndDeterminism) {
  std::mt19937_64 gen(56);
  for (int t = 0; t < 30; ++t) {
    const Rational lo(static_cast<long>(1 + gen() % 50), 7);
    const LambdaWindow w(lo, lo + Rational(static_cast<long>(1 + gen() % 20), 3));
    const std::uint64_t seed = gen();
    const auto q = draw_lambdas(w, 200, seed);
    EXPECT_EQ(q, draw_lambdas(w, 200, seed));
    for (const auto& x : q) {
      EXPECT_TRUE(w.contains(x));
      EXPECT_EQ(Integer(1'000'000) % x.get_den(), 0);
    }
  }
  EXPECT_THROW(draw_lambdas(LambdaWindow(Rational(1, 3000000), Rational(1, 2000000)), 1, 0), std::invalid_argument);
}

TEST(Sweep, SummaryMedian) {
  std::vector<SweepRecord> recs;
  for (double v : {0.1, 0.9, 0.3, 0.5}) {
    SweepRecord r{Rational(1), 0, HighFloat(v), Interval(0, 1), 0, Integer(0), {}, {}, false};
    recs.push_back(r);
  }
  const SweepSummary s = summarize(recs, HighFloat(0.4));
  EXPECT_EQ(s.count, 4u);
  EXPECT_EQ(s.above, 2u);
  EXPECT_DOUBLE_EQ(s.fraction_above, 0.5);
  EXPECT_NEAR(d(s.median), 0.4, 1e-30);
  EXPECT_NEAR(d(s.min), 0.1, 1e-30);
  EXPECT_NEAR(d(s.max), 0.9, 1e-30);
}

TEST(Sweep, IntegerLambdaTargetLength) {
  const IntegerSet e = power_set(Rational(1, 2), 100);
  const MatchedPair pair{Interval(0, 10000), Interval(0, 10000)};
  SweepOptions opt;
  const SweepRecord r = sweep_one(e, e, pair, Rational(2), opt);
  // |(0,10000] + ⌊2·(0,10000]⌋| = 10000 + 20000 - 2
  EXPECT_EQ(r.target_length, 29998);
  EXPECT_EQ(r.distinct, sumset(e, floor_scale(e, Rational(2))).size());
  ASSERT_TRUE(r.energy.has_value());
  EXPECT_GE(Rational(static_cast<unsigned long>(r.distinct)), *r.cs_bound);
}

TEST(Sweep, DeterministicAcrossThreadCounts) {
  const IntegerSet e = cantor_set({TransitionMatrix::full(2), 3, {0, 2}, 7}).set;
  const std::vector<MatchedPair> pairs{{e.hull(), e.hull()}};
  SweepOptions opt;
  opt.samples = 6;
  opt.seed = 9;
  const LambdaWindow w(Rational(1), Rational(2));
  omp_set_num_threads(1);
  const SweepReport a = sweep(e, e, w, pairs, opt);
  omp_set_num_threads(4);
  const SweepReport b = sweep(e, e, w, pairs, opt);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].lambda, b.records[i].lambda);
    EXPECT_EQ(a.records[i].dimension, b.records[i].dimension);
    EXPECT_EQ(a.records[i].distinct, b.records[i].distinct);
    EXPECT_EQ(a.records[i].energy, b.records[i].energy);
  }
  EXPECT_THROW(sweep(e, e, w, {}, opt), std::invalid_argument);
}

TEST(MultiSweep, ArityAndTarget) {
  const IntegerSet e = cantor_set({TransitionMatrix::full(2), 3, {0, 2}, 6}).set;
  SweepOptions opt;
  opt.samples = 3;
  const LambdaWindow w(Rational(1), Rational(2));
  const MultiSweepReport r = multi_sweep({e, e, e}, {e.hull(), e.hull(), e.hull()}, w, opt);
  EXPECT_NEAR(d(r.target), 1.0, 1e-30);  // 3·log2/log3 > 1
  ASSERT_EQ(r.records.size(), 3u);
  for (const auto& rec : r.records) EXPECT_EQ(rec.lambdas.size(), 2u);
  EXPECT_THROW(multi_sweep({e}, {e.hull()}, w, opt), std::invalid_argument);
}
