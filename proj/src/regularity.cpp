#include "zdim/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zdim {

namespace {

HighFloat power_of(const Integer& length, const HighFloat& alpha) {
  if (alpha == 0) return 1;
  return exp(alpha * log(to_high(length)));
}

}  // namespace

SupRatio sup_ratio(const IntegerSet& f, const Interval& interval, const Rational& alpha) {
  const IntegerSet g = f.restrict_to(interval);
  if (g.empty()) throw std::invalid_argument("sup_ratio: F has no element in the interval");
  ScanSchedule schedule = ScanSchedule::exhaustive();
  schedule.min_count = 1;
  const std::uint64_t k = g.size();
  schedule.pair_budget = k <= kSupRatioExactCap ? k * (k + 1) / 2 : schedule.pair_budget;
  const MeasureEstimate m = alpha_measure_estimate(g, alpha, schedule);
  return SupRatio{m.value, *m.witness, alpha, m.count, !m.subsampled};
}

IntegerSet dyadic_step(const IntegerSet& f) {
  const std::size_t k = f.size();
  if (k <= 2) return f;
  std::vector<Integer> kept{f[0]};
  const std::size_t last_even = 2 * ((k + 1) / 2) - 2;  // 2⌈k/2⌉ - 2
  for (std::size_t idx = 2; idx <= last_even; idx += 2) kept.push_back(f[idx - 1]);
  if (kept.back() != f[k - 1]) kept.push_back(f[k - 1]);
  return IntegerSet::from_sorted(std::move(kept), f.provenance());
}

ThinningTrace dyadic_thin(const IntegerSet& f, const Interval& interval, const Rational& alpha) {
  ThinningTrace trace;
  IntegerSet g = f.restrict_to(interval);
  SupRatio s = sup_ratio(g, interval, alpha);
  trace.initial_s = s.value;
  trace.initial_size = g.size();
  while (s.value > 2) {
    IntegerSet next = dyadic_step(g);
    if (next.size() == g.size()) {
      trace.stalled = true;
      break;
    }
    g = std::move(next);
    s = sup_ratio(g, interval, alpha);
    trace.steps.push_back({g.size(), s.value});
  }
  trace.final_s = s.value;
  trace.final_set = std::move(g);
  return trace;
}

RegularSubset extract_regular_subset(const IntegerSet& e, const Rational& alpha, std::size_t n_blocks) {
  if (e.empty()) throw std::invalid_argument("extract_regular_subset: empty set");
  if (n_blocks < 1) throw std::invalid_argument("n_blocks must be at least 1");
  if (alpha <= 0 || alpha > 1) throw std::invalid_argument("alpha must lie in (0,1]");
  const HighFloat a = to_high(alpha);
  RegularSubset out;

  // I_1 = J_1 = {a}, F_1 = {a}.
  const Integer first = e.front();
  Interval hull(first - 1, first);
  std::vector<Integer> chosen{first};
  {
    RegularBlock b{hull, hull, {}, 1, 1, true, true};
    b.thinning.initial_s = b.thinning.final_s = 1;
    b.thinning.initial_size = 1;
    b.thinning.final_set = IntegerSet::from_sorted({first});
    out.blocks.push_back(std::move(b));
  }

  for (std::size_t n = 1; n < n_blocks; ++n) {
    // gap ⌈|I_n|^(1/alpha)⌉ to the right of b_n, exact
    Integer gap;
    {
      Integer lifted;
      mpz_pow_ui(lifted.get_mpz_t(), hull.length().get_mpz_t(), alpha.get_den().get_ui());
      const unsigned long root = alpha.get_num().get_ui();
      gap = iroot(lifted, root);
      Integer check;
      mpz_pow_ui(check.get_mpz_t(), gap.get_mpz_t(), root);
      if (check < lifted) gap += 1;
    }
    const Integer start = hull.hi() + gap;
    if (start >= e.back()) {
      out.truncation_exhausted = true;
      break;
    }
    const IntegerSet region = e.restrict_to(Interval(start, e.back()));
    ScanSchedule schedule = ScanSchedule::with_min_length(Integer(static_cast<unsigned long>(n + 1)));
    schedule.min_count = 1;
    const MeasureEstimate best = alpha_measure_estimate(region, alpha, schedule);
    out.exact = out.exact && !best.subsampled;
    const HighFloat threshold = pow(HighFloat(n + 1), 1 - a);
    if (!best.witness || best.value < threshold) {
      out.truncation_exhausted = true;
      break;
    }
    const Interval j = *best.witness;
    ThinningTrace thin = dyadic_thin(e, j, alpha);
    const IntegerSet& block = thin.final_set;
    for (const auto& x : block.elements()) chosen.push_back(x);
    hull = Interval(hull.lo(), j.hi());

    const IntegerSet so_far = IntegerSet::from_sorted(chosen);
    const SupRatio hs = sup_ratio(so_far, hull, alpha);
    out.exact = out.exact && hs.exact;
    const HighFloat ratio = HighFloat(block.count_in(j)) / power_of(j.length(), a);
    RegularBlock b{j, hull, std::move(thin), hs.value, ratio, hs.value <= 3, ratio > HighFloat(1) / 2};
    out.blocks.push_back(std::move(b));
  }
  out.set = IntegerSet::from_sorted(std::move(chosen),
                                    "regular subset alpha=" + to_string(alpha) + " of " + e.provenance());
  return out;
}

std::vector<Integer> geometric_ladder(const Integer& max_length, bool dense) {
  std::vector<Integer> out;
  if (max_length < 1) return out;
  if (!dense) {
    for (Integer len = 2; len < max_length; len *= 2) out.push_back(len);
  } else {
    // ⌈2^(k/2)⌉ for k = 2, 3, ...
    for (unsigned long k = 2;; ++k) {
      Integer len;
      if (k % 2 == 0) {
        mpz_ui_pow_ui(len.get_mpz_t(), 2, k / 2);
      } else {
        Integer sq;
        mpz_ui_pow_ui(sq.get_mpz_t(), 2, k);  // (2^(k/2))² = 2^k
        len = iroot(sq, 2);
        if (len * len < sq) len += 1;
      }
      if (len >= max_length) break;
      if (out.empty() || out.back() != len) out.push_back(len);
    }
  }
  out.push_back(max_length);
  return out;
}

std::vector<Rung> ladder_scan(const IntegerSet& e, const std::vector<Integer>& lengths, const HighFloat& alpha) {
  std::vector<Rung> rungs(lengths.size());
  const std::ptrdiff_t jobs = static_cast<std::ptrdiff_t>(lengths.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t r = 0; r < jobs; ++r) {
    const Integer& length = lengths[static_cast<std::size_t>(r)];
    Rung rung{length, 0, Integer(0), HighFloat(0)};
    e.visit([&](auto xs) {
      using T = std::remove_cv_t<typename decltype(xs)::element_type>;
      T len{};
      if constexpr (std::is_same_v<T, std::int64_t>) {
        len = fits_int64(length) && length <= kSmallLimit ? length.get_si() : kSmallLimit;
      } else {
        len = length;
      }
      std::size_t hi = 0;
      std::size_t best_count = 0, best_i = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        // interval (x_i - 1, x_i - 1 + len]
        if (hi < i) hi = i;
        while (hi < xs.size() && xs[hi] - xs[i] < len) ++hi;
        if (hi - i > best_count) {
          best_count = hi - i;
          best_i = i;
        }
      }
      rung.count = best_count;
      if (best_count > 0) rung.lo = Integer(xs[best_i]) - 1;
    });
    rung.ratio = HighFloat(rung.count) / power_of(length, alpha);
    rungs[static_cast<std::size_t>(r)] = std::move(rung);
  }
  return rungs;
}

std::string to_string(Trend t) { return t == Trend::kBounded ? "bounded" : "growing"; }

RegularityReport regularity_diagnostic(const IntegerSet& e, const ScanSchedule& schedule) {
  RegularityReport rep{dimension_estimate(e, schedule), {}, {}, 0, Trend::kBounded};
  const HighFloat a = rep.dimension.alpha_hat;
  rep.rungs = ladder_scan(e, geometric_ladder(e.hull().length()), a);

  std::size_t best = 0;
  for (std::size_t r = 1; r < rep.rungs.size(); ++r)
    if (rep.rungs[r].ratio > rep.rungs[best].ratio) best = r;
  const Rung& top = rep.rungs[best];
  rep.measure.value = top.ratio;
  rep.measure.count = top.count;
  rep.measure.witness = Interval(top.lo, top.lo + top.length);
  rep.measure.alpha = rep.dimension.alpha_exact.value_or(Rational(static_cast<double>(a)));

  // Regression over rungs with at least two elements.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (const auto& r : rep.rungs) {
    if (r.count < 2) continue;
    const double x = log_double(r.length);
    const double y = std::log(static_cast<double>(r.ratio));
    sx += x, sy += y, sxx += x * x, sxy += x * y;
    ++m;
  }
  if (m >= 2) {
    const double denom = static_cast<double>(m) * sxx - sx * sx;
    rep.slope = denom != 0 ? (static_cast<double>(m) * sxy - sx * sy) / denom : 0.0;
  }
  rep.trend = rep.slope > HighFloat(0.1) ? Trend::kGrowing : Trend::kBounded;
  return rep;
}

std::size_t CompatibilityReport::found() const {
  return static_cast<std::size_t>(std::count_if(pairs.begin(), pairs.end(), [](const auto& p) { return p.has_value(); }));
}

CompatibilityReport compatibility_check(const IntegerSet& e, const IntegerSet& f, const Rational& ratio_band,
                                        const Rational& c_min, std::optional<HighFloat> dim_e,
                                        std::optional<HighFloat> dim_f) {
  if (e.size() < 2 || f.size() < 2) throw std::invalid_argument("compatibility_check needs at least 2 elements each");
  if (ratio_band < 1) throw std::invalid_argument("ratio band must be at least 1");
  CompatibilityReport rep;
  rep.dim_e = dim_e ? *dim_e : dimension_estimate(e).alpha_hat;
  rep.dim_f = dim_f ? *dim_f : dimension_estimate(f).alpha_hat;
  rep.ratio_band = ratio_band;
  rep.c_min = c_min;

  const Integer max_len = std::max(e.hull().length(), f.hull().length());
  rep.rungs = geometric_ladder(max_len);
  const std::vector<Rung> re = ladder_scan(e, rep.rungs, rep.dim_e);
  const std::vector<Rung> rf = ladder_scan(f, rep.rungs, rep.dim_f);
  const HighFloat c = to_high(c_min);

  for (std::size_t r = 0; r < rep.rungs.size(); ++r) {
    std::optional<CompatibilityPair> best;
    if (re[r].count > 0 && re[r].ratio >= c) {
      for (std::size_t s = 0; s < rep.rungs.size(); ++s) {
        const Rational ratio(rep.rungs[r], rep.rungs[s]);
        if (ratio * ratio_band < 1 || ratio > ratio_band) continue;
        if (rf[s].count == 0 || rf[s].ratio < c) continue;
        CompatibilityPair p{Interval(re[r].lo, re[r].lo + re[r].length), Interval(rf[s].lo, rf[s].lo + rf[s].length),
                            re[r].count, rf[s].count, ratio, re[r].ratio, rf[s].ratio};
        p.length_ratio.canonicalize();
        // closest length ratio to 1 wins; ties keep the earlier rung
        auto distance = [](const Rational& q) { return q >= 1 ? Rational(q) : Rational(1 / q); };
        if (!best || distance(p.length_ratio) < distance(best->length_ratio)) best = std::move(p);
      }
    }
    rep.pairs.push_back(std::move(best));
  }
  return rep;
}

UniversalityReport universality_check(const IntegerSet& e, const Rational& c_min, std::optional<HighFloat> dimension) {
  if (e.size() < 2) throw std::invalid_argument("universality_check needs at least 2 elements");
  UniversalityReport rep;
  rep.dimension = dimension ? *dimension : dimension_estimate(e).alpha_hat;
  rep.c_min = c_min;
  rep.rungs = ladder_scan(e, geometric_ladder(e.hull().length(), true), rep.dimension);
  const HighFloat c = to_high(c_min);
  for (const auto& r : rep.rungs) {
    rep.pass.push_back(r.ratio >= c);
    rep.universal = rep.universal && rep.pass.back();
  }
  return rep;
}

}  // namespace zdim
