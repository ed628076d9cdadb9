#include <gtest/gtest.h>

#include "support.hpp"
#include "zdim/arithmetic.hpp"
#include "zdim/generators.hpp"
#include "zdim/reference.hpp"

using namespace zdim;
using zdim::test::random_set;
using zdim::test::set_of;

namespace {

IntegerSet naive_floor_scale(const IntegerSet& e, const Rational& lambda) {
  std::vector<Integer> out;
  for (const auto& x : e.elements()) out.push_back(floor(Rational(x) * lambda));
  return IntegerSet::from_unsorted(std::move(out));
}

IntegerSet shifted_big(const IntegerSet& e) {
  // same set translated far beyond the int64 range
  Integer shift;
  mpz_ui_pow_ui(shift.get_mpz_t(), 10, 30);
  return translate(e, shift);
}

}  // namespace

TEST(FloorScale, Examples) {
  EXPECT_EQ(floor_scale(set_of({1, 2, 3}), Rational(3, 2)), set_of({1, 3, 4}));
  EXPECT_EQ(floor_scale(set_of({1, 2, 3}), Rational(1, 3)), set_of({0, 1}));
  EXPECT_EQ(floor_scale(set_of({-3, -1, 2}), Rational(1, 2)), set_of({-2, -1, 1}));
  EXPECT_THROW(floor_scale(set_of({1}), Rational(0)), std::invalid_argument);
  EXPECT_THROW(floor_scale(set_of({1}), Rational(-1)), std::invalid_argument);
}

TEST(FloorScale, MatchesRationalFloor) {
  std::mt19937_64 gen(31);
  for (int t = 0; t < 200; ++t) {
    const IntegerSet e = random_set(gen, 1 + gen() % 60, -100000, 100000);
    Rational lambda(static_cast<long>(1 + gen() % 1000), static_cast<long>(1 + gen() % 300));
    lambda.canonicalize();
    EXPECT_EQ(floor_scale(e, lambda), naive_floor_scale(e, lambda));
    const IntegerSet b = shifted_big(e);
    EXPECT_EQ(floor_scale(b, lambda), naive_floor_scale(b, lambda));
  }
}

TEST(FloorScale, IntegerScaleIsExactMultiple) {
  std::mt19937_64 gen(32);
  const IntegerSet e = random_set(gen, 100, 0, 1000000);
  const IntegerSet s = floor_scale(e, Rational(7));
  ASSERT_EQ(s.size(), e.size());
  for (std::size_t i = 0; i < e.size(); ++i) EXPECT_EQ(s[i], 7 * e[i]);
}

TEST(Sumset, Examples) {
  EXPECT_EQ(sumset(set_of({0, 1}), set_of({0, 10})), set_of({0, 1, 10, 11}));
  EXPECT_EQ(sumset(set_of({0, 1, 2}), set_of({0, 1, 2})), set_of({0, 1, 2, 3, 4}));
  EXPECT_EQ(sum_scaled(set_of({0, 1}), set_of({1, 2}), Rational(3, 2)), set_of({1, 2, 3, 4}));
  EXPECT_THROW(sumset(IntegerSet(), set_of({1})), std::invalid_argument);
}

TEST(Sumset, GuardNamesTheRemedy) {
  std::mt19937_64 gen(33);
  const IntegerSet a = random_set(gen, 200, 0, 1 << 20);
  try {
    sumset(a, a, SumsetOptions{1000});
    FAIL() << "expected the size guard";
  } catch (const SizeGuardError& e) {
    EXPECT_NE(std::string(e.what()).find("restrict windows"), std::string::npos);
  }
}

TEST(Sumset, MatchesReference) {
  std::mt19937_64 gen(34);
  for (int t = 0; t < 100; ++t) {
    const std::int64_t spread = t % 2 ? 1000 : 1'000'000'000;
    const IntegerSet a = random_set(gen, 1 + gen() % 150, -spread, spread);
    const IntegerSet b = random_set(gen, 1 + gen() % 150, -spread, spread);
    const IntegerSet s = sumset(a, b);
    EXPECT_EQ(s.elements(), reference::distinct_sums(a.elements(), b.elements()));
    EXPECT_EQ(s, sumset(b, a));
    EXPECT_EQ(sumset(shifted_big(a), b), shifted_big(s));
  }
}

TEST(Sumset, CardinalityBounds) {
  std::mt19937_64 gen(35);
  for (int t = 0; t < 100; ++t) {
    const IntegerSet a = random_set(gen, 1 + gen() % 80, 0, 5000);
    const IntegerSet b = random_set(gen, 1 + gen() % 80, 0, 5000);
    const std::size_t n = sumset(a, b).size();
    EXPECT_GE(n, a.size() + b.size() - 1);
    EXPECT_LE(n, a.size() * b.size());
  }
}

TEST(Star, Examples) {
  const IntegerSet squares = power_set(Rational(1, 2), 100);
  const StarProduct p = star(squares, power_set(Rational(1, 2), 12));
  // indices 1, 4, ..., 100 fall inside; 121 and 144 do not
  EXPECT_EQ(p.skipped, 2u);
  std::vector<std::int64_t> fourth;
  for (std::int64_t k = 1; k <= 10; ++k) fourth.push_back(k * k * k * k);
  EXPECT_EQ(p.set, IntegerSet::from_sorted_small(fourth));
  EXPECT_THROW(star(squares, set_of({0, 101})), std::invalid_argument);
}

TEST(Star, IndexComposition) {
  // (E * F) * G = E * (F * G) whenever every index is in range
  std::mt19937_64 gen(36);
  for (int t = 0; t < 50; ++t) {
    const IntegerSet e = random_set(gen, 300, 0, 1'000'000);
    const IntegerSet f = random_set(gen, 120, 1, static_cast<std::int64_t>(e.size()));
    const IntegerSet g = random_set(gen, 40, 1, static_cast<std::int64_t>(f.size()));
    EXPECT_EQ(star(star(e, f).set, g).set, star(e, star(f, g).set).set);
  }
}

TEST(StarWitness, SquaresOnUnitWindow) {
  const IntegerSet squares = power_set(Rational(1, 2), 100);
  const StarWitness w = star_witness(squares, Interval(0, 10000), Rational(1, 2));
  EXPECT_EQ(w.f.size(), 10u);
  EXPECT_EQ(w.count, 10u);
  EXPECT_EQ(w.product.back(), 10000);
  EXPECT_THROW(star_witness(squares, Interval(10, 15), Rational(1, 2)), std::invalid_argument);
}

TEST(Asymptotic, ShiftedIndices) {
  const IntegerSet e = power_set(Rational(1, 2), 200);
  std::vector<std::int64_t> next;
  for (std::int64_t n = 2; n <= 201; ++n) next.push_back(n * n);
  const IntegerSet f = IntegerSet::from_sorted_small(next);
  EXPECT_TRUE(asymptotic_check(e, e, 0, 1).holds);
  EXPECT_TRUE(asymptotic_check(e, f, 1, 1).holds);
  const AsymptoticReport r = asymptotic_check(e, f, 0, 5);
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.violation, std::optional<std::size_t>(5));
  EXPECT_THROW(asymptotic_check(e, f, 0, 500), std::invalid_argument);
}
