#include "zdim/arithmetic.hpp"

#include <algorithm>

#include "zdim/generators.hpp"
#include "zdim/kernels.hpp"

namespace zdim {

IntegerSet floor_scale(const IntegerSet& e, const Rational& lambda) {
  if (lambda <= 0)
    throw std::invalid_argument("lambda must be positive; negative lambda reduces to the positive case via F -> -F");
  std::string prov = e.provenance().empty() ? std::string{} : "floor(" + to_string(lambda) + " * " + e.provenance() + ")";
  if (e.is_small() && fits_int64(lambda.get_num()) && fits_int64(lambda.get_den())) {
    try {
      auto out = kernels::floor_scale_small(e.small(), lambda.get_num().get_si(), lambda.get_den().get_si());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return IntegerSet::from_sorted_small(std::move(out), prov);
    } catch (const std::overflow_error&) {
      // falls through to the arbitrary-precision path
    }
  }
  const std::vector<Integer> xs = e.elements();
  auto out = kernels::floor_scale_big(xs, lambda);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return IntegerSet::from_sorted(std::move(out), prov);
}

IntegerSet sumset(const IntegerSet& e, const IntegerSet& f, const SumsetOptions& options) {
  if (e.empty() || f.empty()) throw std::invalid_argument("sumset needs nonempty sets");
  const std::uint64_t pairs = static_cast<std::uint64_t>(e.size()) * f.size();
  if (pairs > options.max_pairs)
    throw SizeGuardError("sumset too large, restrict windows (" + std::to_string(pairs) + " pairs > " +
                         std::to_string(options.max_pairs) + ")");
  if (e.is_small() && f.is_small()) {
    auto xs = e.small();
    auto ys = f.small();
    const auto range = static_cast<std::uint64_t>((xs.back() + ys.back()) - (xs.front() + ys.front())) + 1;
    if (range <= std::max<std::uint64_t>(16 * pairs, std::uint64_t{1} << 26) && range <= (std::uint64_t{1} << 34))
      return IntegerSet::from_sorted_small(kernels::distinct_sums_bitmap(xs, ys));
    auto sums = kernels::pair_sums_sorted(xs, ys);
    sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
    return IntegerSet::from_sorted_small(std::move(sums));
  }
  const std::vector<Integer> xs = e.elements();
  const std::vector<Integer> ys = f.elements();
  auto sums = kernels::pair_sums_sorted(xs, ys);
  sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
  return IntegerSet::from_sorted(std::move(sums));
}

IntegerSet sum_scaled(const IntegerSet& e, const IntegerSet& f, const Rational& lambda, const SumsetOptions& options) {
  return sumset(e, floor_scale(f, lambda), options);
}

StarProduct star(const IntegerSet& e, const IntegerSet& f) {
  StarProduct out;
  std::vector<Integer> picked;
  for (const auto& n : f.elements()) {
    if (n < 1 || n > static_cast<unsigned long>(e.size())) {
      ++out.skipped;
      continue;
    }
    picked.push_back(e[n.get_ui() - 1]);
  }
  if (picked.empty()) throw std::invalid_argument("empty star product: no index of F lies in 1..|E|");
  out.set = IntegerSet::from_sorted(std::move(picked));
  return out;
}

StarWitness star_witness(const IntegerSet& e, const Interval& interval, const Rational& alpha) {
  const std::size_t i = e.upper_bound(interval.lo());
  const std::size_t j = e.upper_bound(interval.hi());
  if (j <= i) throw std::invalid_argument("witness interval contains no element of E");
  const IntegerSet unit = power_set(alpha, j - i);  // E_alpha ∩ (0, j - i] is a prefix of this
  std::vector<Integer> idx;
  for (const auto& x : unit.elements()) {
    if (x > static_cast<unsigned long>(j - i)) break;
    idx.push_back(x + static_cast<unsigned long>(i));
  }
  IntegerSet f = IntegerSet::from_sorted(std::move(idx), "star witness alpha=" + to_string(alpha));
  StarProduct p = star(e, f);
  StarWitness w{std::move(f), std::move(p.set), interval, 0};
  w.count = w.product.count_in(interval);
  return w;
}

AsymptoticReport asymptotic_check(const IntegerSet& e, const IntegerSet& f, std::size_t i, std::size_t n0) {
  const std::size_t last = std::min(f.size(), e.size() >= i ? e.size() - i : 0);
  const std::size_t first = std::max<std::size_t>({n0, i + 1, 1});
  if (last < n0) throw std::invalid_argument("window too short: last checkable index is below n0");
  AsymptoticReport rep{true, std::nullopt, first, last};
  for (std::size_t n = first; n <= last; ++n) {
    const Integer b = f[n - 1];
    if (e[n - i - 1] > b || b > e[n + i - 1]) {
      rep.holds = false;
      rep.violation = n;
      break;
    }
  }
  return rep;
}

}  // namespace zdim
