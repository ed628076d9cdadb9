#include "zdim/reference.hpp"

#include <algorithm>

namespace zdim::reference {

template <class T>
std::vector<kernels::MinSpan<T>> min_span_by_count(std::span<const T> xs, const T& min_span,
                                                   const kernels::CountPlan& plan) {
  std::vector<kernels::MinSpan<T>> out;
  for (std::size_t c : plan.counts) {
    kernels::MinSpan<T> best;
    best.count = c;
    for (std::size_t i = 0; i + c <= xs.size(); ++i) {
      T span = xs[i + c - 1] - xs[i] + 1;
      if (span >= min_span && (!best.found || span < best.span)) {
        best.span = span;
        best.first = i;
        best.found = true;
      }
    }
    out.push_back(best);
  }
  return out;
}

template std::vector<kernels::MinSpan<std::int64_t>> min_span_by_count(std::span<const std::int64_t>,
                                                                       const std::int64_t&, const kernels::CountPlan&);
template std::vector<kernels::MinSpan<Integer>> min_span_by_count(std::span<const Integer>, const Integer&,
                                                                  const kernels::CountPlan&);

std::vector<std::int64_t> pair_sums_sorted(std::span<const std::int64_t> xs, std::span<const std::int64_t> ys) {
  std::vector<std::int64_t> out;
  out.reserve(xs.size() * ys.size());
  for (auto a : xs)
    for (auto b : ys) out.push_back(a + b);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Integer> distinct_sums(const std::vector<Integer>& xs, const std::vector<Integer>& ys) {
  std::vector<Integer> out;
  for (const auto& a : xs)
    for (const auto& b : ys) out.push_back(a + b);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

template <class Score>
BestInterval best_by(const std::vector<Integer>& xs, const Integer& min_length, std::size_t min_count, Score score) {
  BestInterval best;
  const HighFloat tol = ldexp(HighFloat(1), -100);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i; j < xs.size(); ++j) {
      const std::size_t count = j - i + 1;
      const Integer lo = xs[i] - 1;
      const Integer length = xs[j] - lo;
      if (count < min_count || length < min_length) continue;
      const HighFloat v = score(count, length);
      bool take = !best.found || v > best.value * (1 + tol);
      if (!take && v >= best.value * (1 - tol)) {
        const Integer best_len = best.hi - best.lo;
        take = length < best_len || (length == best_len && lo < best.lo);
      }
      if (take) best = {v, lo, xs[j], count, true};
    }
  }
  return best;
}

}  // namespace

BestInterval best_dimension(const std::vector<Integer>& xs, const Integer& min_length, std::size_t min_count) {
  return best_by(xs, min_length, min_count, [](std::size_t c, const Integer& len) {
    return log(HighFloat(c)) / log(to_high(len));
  });
}

BestInterval best_measure(const std::vector<Integer>& xs, const Rational& alpha, const Integer& min_length,
                          std::size_t min_count) {
  const HighFloat a = to_high(alpha);
  return best_by(xs, min_length, min_count, [&](std::size_t c, const Integer& len) {
    return HighFloat(c) / pow(to_high(len), a);
  });
}

}  // namespace zdim::reference
