#include <gtest/gtest.h>

#include <algorithm>
#include <omp.h>

#include "support.hpp"
#include "zdim/kernels.hpp"
#include "zdim/reference.hpp"

using namespace zdim;
using zdim::test::random_set;

namespace {

std::vector<std::int64_t> as_small(const IntegerSet& s) { return {s.small().begin(), s.small().end()}; }

template <class T>
void expect_same(const std::vector<kernels::MinSpan<T>>& a, const std::vector<kernels::MinSpan<T>>& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].count, b[i].count);
    EXPECT_EQ(a[i].found, b[i].found);
    if (a[i].found && b[i].found) {
      EXPECT_EQ(a[i].first, b[i].first);
      EXPECT_EQ(a[i].span, b[i].span);
    }
  }
}

class ThreadCounts : public ::testing::TestWithParam<int> {
 protected:
  void SetUp() override { omp_set_num_threads(GetParam()); }
  void TearDown() override { omp_set_num_threads(1); }
};

}  // namespace

TEST(PlanCounts, FullAndStrided) {
  const kernels::CountPlan full = kernels::plan_counts(10, 2, 1000);
  EXPECT_FALSE(full.subsampled);
  EXPECT_EQ(full.counts.size(), 9u);
  EXPECT_EQ(full.counts.front(), 10u);
  EXPECT_EQ(full.counts.back(), 2u);
  EXPECT_EQ(full.pairs, 45u);  // Σ_{c=2}^{10} (11 - c)
  const kernels::CountPlan strided = kernels::plan_counts(10000, 2, 100000);
  EXPECT_TRUE(strided.subsampled);
  EXPECT_LE(strided.pairs, 100000u);
  EXPECT_EQ(strided.counts.front(), 10000u);
  EXPECT_TRUE(kernels::plan_counts(1, 2, 10).counts.empty());
}

TEST_P(ThreadCounts, MinSpanMatchesReference) {
  std::mt19937_64 gen(61 + GetParam());
  for (int t = 0; t < 40; ++t) {
    const IntegerSet s = random_set(gen, 2 + gen() % 400, -100000, 100000);
    const std::int64_t min_span = 1 + static_cast<std::int64_t>(gen() % 5000);
    const auto plan = kernels::plan_counts(s.size(), 2, t % 2 ? 500 : 1'000'000);
    expect_same(kernels::min_span_by_count<std::int64_t>(s.small(), min_span, plan),
                reference::min_span_by_count<std::int64_t>(s.small(), min_span, plan));
    const auto big = s.elements();
    expect_same(kernels::min_span_by_count<Integer>(big, Integer(min_span), plan),
                reference::min_span_by_count<Integer>(big, Integer(min_span), plan));
  }
}

TEST_P(ThreadCounts, PairSumsMatchReference) {
  std::mt19937_64 gen(71 + GetParam());
  for (int t = 0; t < 30; ++t) {
    const auto xs = as_small(random_set(gen, 1 + gen() % 300, -1'000'000, 1'000'000));
    const auto ys = as_small(random_set(gen, 1 + gen() % 300, -1'000'000, 1'000'000));
    const auto got = kernels::pair_sums_sorted(std::span<const std::int64_t>(xs), std::span<const std::int64_t>(ys));
    EXPECT_EQ(got, reference::pair_sums_sorted(xs, ys));

    std::vector<Integer> bx(xs.begin(), xs.end()), by(ys.begin(), ys.end());
    const auto big = kernels::pair_sums_sorted(std::span<const Integer>(bx), std::span<const Integer>(by));
    EXPECT_TRUE(std::equal(big.begin(), big.end(), got.begin(), got.end()));

    const auto distinct = kernels::distinct_sums_bitmap(xs, ys);
    const auto oracle = reference::distinct_sums(bx, by);
    EXPECT_TRUE(std::equal(distinct.begin(), distinct.end(), oracle.begin(), oracle.end()));
  }
}

TEST_P(ThreadCounts, FloorScaleMatchesRational) {
  std::mt19937_64 gen(81 + GetParam());
  for (int t = 0; t < 50; ++t) {
    const auto xs = as_small(random_set(gen, 1 + gen() % 500, -1'000'000'000, 1'000'000'000));
    const std::int64_t p = 1 + static_cast<std::int64_t>(gen() % 1000), q = 1 + static_cast<std::int64_t>(gen() % 1000);
    const auto got = kernels::floor_scale_small(xs, p, q);
    ASSERT_EQ(got.size(), xs.size());
    std::vector<Integer> bx(xs.begin(), xs.end());
    const auto big = kernels::floor_scale_big(bx, Rational(p, q));
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const Integer want = floor(Rational(xs[i]) * Rational(p, q));
      EXPECT_EQ(Integer(static_cast<long>(got[i])), want);
      EXPECT_EQ(big[i], want);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Threads, ThreadCounts, ::testing::Values(1, 3));

TEST(RunLengths, Examples) {
  const std::vector<std::int64_t> xs{1, 1, 2, 5, 5, 5};
  const auto r = kernels::run_lengths<std::int64_t>(xs);
  const std::vector<std::pair<std::int64_t, std::uint64_t>> want{{1, 2}, {2, 1}, {5, 3}};
  EXPECT_EQ(r, want);
  EXPECT_TRUE(kernels::run_lengths<std::int64_t>(std::span<const std::int64_t>()).empty());
}
