#include "zdim/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "zdim/kernels.hpp"

namespace zdim {

namespace {

struct Candidate {
  std::size_t count;
  std::size_t first;
  Integer span;
};

struct Scan {
  std::vector<Candidate> candidates;
  std::uint64_t pairs = 0;
  bool subsampled = false;
};

Scan scan_min_spans(const IntegerSet& e, const Integer& min_length, const ScanSchedule& schedule) {
  const std::size_t min_count = e.size() == 1 ? 1 : std::max<std::size_t>(schedule.min_count, 1);
  const std::uint64_t budget = schedule.pair_budget;
  const kernels::CountPlan plan = kernels::plan_counts(e.size(), min_count, budget);
  Scan scan;
  scan.pairs = plan.pairs;
  scan.subsampled = plan.subsampled;
  e.visit([&](auto xs) {
    using T = std::remove_cv_t<typename decltype(xs)::element_type>;
    T floor_len{};
    if constexpr (std::is_same_v<T, std::int64_t>) {
      // Spans of a small set stay below 2^63.
      floor_len = fits_int64(min_length) ? min_length.get_si() : std::numeric_limits<std::int64_t>::max();
    } else {
      floor_len = min_length;
    }
    for (auto& m : kernels::min_span_by_count<T>(xs, floor_len, plan)) {
      if (!m.found) continue;
      if constexpr (std::is_same_v<T, std::int64_t>) {
        scan.candidates.push_back({m.count, m.first, Integer(static_cast<long>(m.span))});
      } else {
        scan.candidates.push_back({m.count, m.first, std::move(m.span)});
      }
    }
  });
  return scan;
}

// Max of a score over candidates: a double pass narrows the field, HighFloat
// decides; near-equal scores go to the shorter, then leftmost, interval.
template <class Fast, class Precise>
std::optional<std::size_t> select_best(const IntegerSet& e, const std::vector<Candidate>& cs, Fast fast,
                                       Precise precise) {
  if (cs.empty()) return std::nullopt;
  std::vector<double> approx(cs.size());
  for (std::size_t i = 0; i < cs.size(); ++i) approx[i] = fast(cs[i]);
  const double top = *std::max_element(approx.begin(), approx.end());
  const double cut = top - 1e-9 * std::max(std::abs(top), 1e-300);

  std::vector<std::pair<std::size_t, HighFloat>> near;
  for (std::size_t i = 0; i < cs.size(); ++i)
    if (approx[i] >= cut) near.emplace_back(i, precise(cs[i]));
  HighFloat best = near.front().second;
  for (const auto& [i, v] : near) best = std::max(best, v);
  const HighFloat slack = abs(best) * score_tolerance();

  std::optional<std::size_t> pick;
  for (const auto& [i, v] : near) {
    if (v < best - slack) continue;
    if (!pick) {
      pick = i;
      continue;
    }
    const Candidate& a = cs[i];
    const Candidate& b = cs[*pick];
    if (a.span < b.span || (a.span == b.span && e[a.first] < e[b.first])) pick = i;
  }
  return pick;
}

Interval witness_of(const IntegerSet& e, const Candidate& c) {
  return Interval(e[c.first] - 1, e[c.first + c.count - 1]);
}

std::optional<Rational> exact_log_ratio(std::size_t count, const Integer& length, const HighFloat& approx) {
  const Integer c(static_cast<unsigned long>(count));
  for (unsigned long q = 1; q <= 12; ++q) {
    const auto p = static_cast<unsigned long>(llround(static_cast<double>(approx) * static_cast<double>(q)));
    if (p == 0 || p > q) continue;
    if (p * mpz_sizeinbase(length.get_mpz_t(), 2) > 4096) break;
    Integer lhs, rhs;
    mpz_pow_ui(lhs.get_mpz_t(), c.get_mpz_t(), q);
    mpz_pow_ui(rhs.get_mpz_t(), length.get_mpz_t(), p);
    if (lhs == rhs) {
      Rational r(static_cast<long>(p), static_cast<long>(q));
      r.canonicalize();
      return r;
    }
  }
  return std::nullopt;
}

void require_alpha(const Rational& alpha) {
  if (alpha < 0 || alpha > 1) throw std::invalid_argument("alpha must lie in [0,1], got " + to_string(alpha));
}

}  // namespace

HighFloat score_tolerance() { return ldexp(HighFloat(1), -110); }

Integer effective_min_length(const IntegerSet& e, const ScanSchedule& schedule) {
  if (schedule.min_length) return *schedule.min_length < 1 ? Integer(1) : *schedule.min_length;
  if (e.empty()) return Integer(1);
  const Integer length = e.hull().length();
  Integer r = iroot(length, 2);
  if (r * r < length) r += 1;
  return r < 1 ? Integer(1) : r;
}

std::size_t count_in(const IntegerSet& e, const Interval& interval) { return e.count_in(interval); }

MeasureEstimate alpha_measure_estimate(const IntegerSet& e, const Rational& alpha, const ScanSchedule& schedule) {
  require_alpha(alpha);
  MeasureEstimate out;
  out.alpha = alpha;
  out.value = 0;
  if (e.empty()) return out;

  Scan scan = scan_min_spans(e, effective_min_length(e, schedule), schedule);
  out.pairs_scanned = scan.pairs;
  out.subsampled = scan.subsampled;
  const double a = alpha.get_d();
  const HighFloat ah = to_high(alpha);
  auto fast = [&](const Candidate& c) { return std::log(static_cast<double>(c.count)) - a * log_double(c.span); };
  auto precise = [&](const Candidate& c) {
    if (alpha == 0) return HighFloat(c.count);
    if (alpha == 1) return HighFloat(c.count) / to_high(c.span);
    return HighFloat(c.count) / exp(ah * log(to_high(c.span)));
  };
  auto pick = select_best(e, scan.candidates, fast, precise);
  if (!pick) return out;
  const Candidate& best = scan.candidates[*pick];
  out.witness = witness_of(e, best);
  out.count = best.count;
  out.value = precise(best);
  if (auto root = exact_rational_power(best.span, alpha)) {
    out.value_exact = Rational(Integer(static_cast<unsigned long>(best.count)), *root);
    out.value_exact->canonicalize();
  }
  return out;
}

MeasureEstimate density_estimate(const IntegerSet& e, const ScanSchedule& schedule) {
  return alpha_measure_estimate(e, Rational(1), schedule);
}

DimensionEstimate dimension_estimate(const IntegerSet& e, const ScanSchedule& schedule) {
  if (e.size() < 2) throw std::invalid_argument("degenerate set: dimension needs at least 2 elements");
  ScanSchedule pairs_only = schedule;
  pairs_only.min_count = std::max<std::size_t>(schedule.min_count, 2);
  Scan scan = scan_min_spans(e, effective_min_length(e, schedule), pairs_only);
  auto fast = [](const Candidate& c) { return std::log(static_cast<double>(c.count)) / log_double(c.span); };
  auto precise = [](const Candidate& c) { return log(HighFloat(c.count)) / log(to_high(c.span)); };
  auto pick = select_best(e, scan.candidates, fast, precise);
  if (!pick) throw std::invalid_argument("no interval reaches the minimum witness length");
  const Candidate& best = scan.candidates[*pick];
  DimensionEstimate out{precise(best), std::nullopt, witness_of(e, best), best.count, scan.pairs, scan.subsampled};
  out.alpha_exact = exact_log_ratio(best.count, best.span, out.alpha_hat);
  return out;
}

bool monotonicity_check(const IntegerSet& e, const IntegerSet& f, const ScanSchedule& schedule) {
  if (!e.is_subset_of(f)) throw std::invalid_argument("not a subset");
  if (e.size() < 2) return true;
  ScanSchedule shared = schedule;
  shared.min_length = effective_min_length(f, schedule);
  if (e.hull().length() < *shared.min_length) return true;  // no admissible interval: estimate 0
  return dimension_estimate(e, shared).alpha_hat <= dimension_estimate(f, shared).alpha_hat;
}

}  // namespace zdim
