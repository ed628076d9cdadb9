#include "zdim/kernels.hpp"

#include <algorithm>
#include <stdexcept>

#include <omp.h>

#include "zdim/integer_set.hpp"

namespace zdim::kernels {

namespace {

std::uint64_t windows_for(std::size_t n, std::size_t c) { return static_cast<std::uint64_t>(n - c + 1); }

template <class T>
void merge_runs(std::vector<T>& data, std::size_t run) {
  const std::size_t total = data.size();
  if (run == 0 || run >= total) return;
  std::vector<T> buffer(total);
  std::vector<T>* src = &data;
  std::vector<T>* dst = &buffer;
  for (std::size_t width = run; width < total; width *= 2) {
    const std::ptrdiff_t blocks = static_cast<std::ptrdiff_t>((total + 2 * width - 1) / (2 * width));
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t b = 0; b < blocks; ++b) {
      const std::size_t lo = static_cast<std::size_t>(b) * 2 * width;
      const std::size_t mid = std::min(lo + width, total);
      const std::size_t hi = std::min(lo + 2 * width, total);
      std::merge(std::make_move_iterator(src->begin() + lo), std::make_move_iterator(src->begin() + mid),
                 std::make_move_iterator(src->begin() + mid), std::make_move_iterator(src->begin() + hi),
                 dst->begin() + lo);
    }
    std::swap(src, dst);
  }
  if (src != &data) data = std::move(*src);
}

}  // namespace

CountPlan plan_counts(std::size_t n, std::size_t min_count, std::uint64_t budget) {
  CountPlan plan;
  if (min_count == 0) min_count = 1;
  if (n < min_count) return plan;
  // Σ_{c=min_count}^{n} (n - c + 1) = k(k+1)/2 with k = n - min_count + 1
  const std::uint64_t k = n - min_count + 1;
  const std::uint64_t full = k * (k + 1) / 2;
  std::size_t stride = 1;
  if (full > budget && budget > 0) {
    stride = static_cast<std::size_t>((full + budget - 1) / budget);
    auto cost = [&](std::size_t s) {
      std::uint64_t total = 0;
      for (std::size_t c = n; c >= min_count; c -= std::min(c, s)) {
        total += windows_for(n, c);
        if (c < s + min_count) break;
      }
      return total;
    };
    while (stride < n && cost(stride) > budget) ++stride;
    plan.subsampled = stride > 1;
  }
  for (std::size_t c = n;; c -= stride) {
    plan.counts.push_back(c);
    plan.pairs += windows_for(n, c);
    if (c < stride + min_count) break;
  }
  return plan;
}

template <class T>
std::vector<MinSpan<T>> min_span_by_count(std::span<const T> xs, const T& min_span, const CountPlan& plan) {
  std::vector<MinSpan<T>> out(plan.counts.size());
  const std::ptrdiff_t jobs = static_cast<std::ptrdiff_t>(plan.counts.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t k = 0; k < jobs; ++k) {
    const std::size_t c = plan.counts[static_cast<std::size_t>(k)];
    MinSpan<T> best;
    best.count = c;
    T span{};
    for (std::size_t i = 0; i + c <= xs.size(); ++i) {
      span = xs[i + c - 1] - xs[i];
      span += 1;
      if (span < min_span) continue;
      if (!best.found || span < best.span) {
        best.span = span;
        best.first = i;
        best.found = true;
      }
    }
    out[static_cast<std::size_t>(k)] = std::move(best);
  }
  return out;
}

template std::vector<MinSpan<std::int64_t>> min_span_by_count(std::span<const std::int64_t>, const std::int64_t&,
                                                              const CountPlan&);
template std::vector<MinSpan<Integer>> min_span_by_count(std::span<const Integer>, const Integer&, const CountPlan&);

std::vector<std::int64_t> floor_scale_small(std::span<const std::int64_t> xs, std::int64_t p, std::int64_t q) {
  if (q <= 0) throw std::invalid_argument("floor_scale_small: denominator must be positive");
  std::vector<std::int64_t> out(xs.size());
  bool overflow = false;
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for reduction(|| : overflow)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const __int128 prod = static_cast<__int128>(p) * xs[static_cast<std::size_t>(i)];
    __int128 quot = prod / q;
    if (prod % q != 0 && prod < 0) --quot;
    if (quot > kSmallLimit || quot < -kSmallLimit) overflow = true;
    out[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(quot);
  }
  if (overflow) throw std::overflow_error("floor_scale_small: result leaves the int64 fast path");
  return out;
}

std::vector<Integer> floor_scale_big(std::span<const Integer> xs, const Rational& lambda) {
  std::vector<Integer> out(xs.size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    Integer prod = lambda.get_num() * xs[k];
    mpz_fdiv_q(out[k].get_mpz_t(), prod.get_mpz_t(), lambda.get_den().get_mpz_t());
  }
  return out;
}

std::vector<std::int64_t> pair_sums_sorted(std::span<const std::int64_t> xs, std::span<const std::int64_t> ys) {
  const std::size_t m = ys.size();
  std::vector<std::int64_t> out(xs.size() * m);
  const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    const std::int64_t a = xs[static_cast<std::size_t>(i)];
    std::int64_t* row = out.data() + static_cast<std::size_t>(i) * m;
    for (std::size_t j = 0; j < m; ++j) row[j] = a + ys[j];
  }
  merge_runs(out, m);
  return out;
}

std::vector<Integer> pair_sums_sorted(std::span<const Integer> xs, std::span<const Integer> ys) {
  const std::size_t m = ys.size();
  std::vector<Integer> out(xs.size() * m);
  const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    const auto r = static_cast<std::size_t>(i);
    for (std::size_t j = 0; j < m; ++j) out[r * m + j] = xs[r] + ys[j];
  }
  merge_runs(out, m);
  return out;
}

std::vector<std::int64_t> distinct_sums_bitmap(std::span<const std::int64_t> xs, std::span<const std::int64_t> ys) {
  if (xs.empty() || ys.empty()) return {};
  const std::int64_t base = xs.front() + ys.front();
  const auto range = static_cast<std::uint64_t>(xs.back() + ys.back() - base) + 1;
  std::vector<std::uint64_t> words((range + 63) / 64, 0);
  const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    const std::int64_t a = xs[static_cast<std::size_t>(i)] - base;
    for (std::int64_t b : ys) {
      const auto off = static_cast<std::uint64_t>(a + b);
      const std::uint64_t bit = std::uint64_t{1} << (off & 63);
      std::uint64_t& word = words[off >> 6];
#pragma omp atomic update
      word |= bit;
    }
  }
  std::vector<std::int64_t> out;
  for (std::size_t w = 0; w < words.size(); ++w) {
    std::uint64_t word = words[w];
    while (word) {
      const int bit = __builtin_ctzll(word);
      out.push_back(base + static_cast<std::int64_t>(w * 64 + static_cast<std::size_t>(bit)));
      word &= word - 1;
    }
  }
  return out;
}

template <class T>
std::vector<std::pair<T, std::uint64_t>> run_lengths(std::span<const T> sorted) {
  std::vector<std::pair<T, std::uint64_t>> out;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i + 1;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    out.emplace_back(sorted[i], static_cast<std::uint64_t>(j - i));
    i = j;
  }
  return out;
}

template std::vector<std::pair<std::int64_t, std::uint64_t>> run_lengths(std::span<const std::int64_t>);
template std::vector<std::pair<Integer, std::uint64_t>> run_lengths(std::span<const Integer>);

}  // namespace zdim::kernels
