#include "zdim/marstrand.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "zdim/kernels.hpp"

namespace zdim {

namespace {

using i128 = __int128;

Integer from_i128(i128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  Integer hi(static_cast<unsigned long>(u >> 64));
  Integer lo(static_cast<unsigned long>(u & ~std::uint64_t{0}));
  Integer out = (hi << 64) + lo;
  return neg ? Integer(-out) : out;
}

i128 floor_div128(i128 n, i128 d) {
  i128 q = n / d;
  if ((n % d != 0) && ((n < 0) != (d < 0))) --q;
  return q;
}

// Exact sum of terms num/den, bucketed by denominator.
class DenAccumulator {
 public:
  void add(i128 num, std::int64_t den) {
    if (num == 0) return;
    if (den < 0) num = -num, den = -den;
    buckets_[den] += num;
  }
  void merge(const DenAccumulator& other) {
    for (const auto& [d, n] : other.buckets_) buckets_[d] += n;
  }
  Rational total() const {
    std::vector<std::pair<std::int64_t, i128>> sorted(buckets_.begin(), buckets_.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    Rational out = 0;
    for (const auto& [d, n] : sorted) {
      Rational term(from_i128(n), Integer(static_cast<long>(d)));
      term.canonicalize();
      out += term;
    }
    return out;
  }

 private:
  std::unordered_map<std::int64_t, i128> buckets_;
};

struct Frac {
  i128 num;
  i128 den;  // > 0
};

bool less(const Frac& x, const Frac& y) { return x.num * y.den < y.num * x.den; }

Frac frac_of(const Rational& r) { return {r.get_num().get_si(), r.get_den().get_si()}; }

// Value of ⌊λb⌋ on the open interval just right of x > 0.
i128 floor_right_of(std::int64_t b, const Frac& x) {
  if (b == 0) return 0;
  if (b > 0) return floor_div128(x.num * b, x.den);
  return -floor_div128(x.num * static_cast<i128>(-b), x.den) - 1;
}

// Smallest k with k/d > x, for d > 0.
i128 first_multiple_after(const Frac& x, std::int64_t d) { return floor_div128(x.num * d, x.den) + 1; }

constexpr std::int64_t kElementCap = std::int64_t{1} << 40;
constexpr std::int64_t kWindowCap = std::int64_t{1} << 20;

bool window_is_small(const LambdaWindow& w) {
  for (const Rational* r : {&w.lo(), &w.hi()}) {
    if (!fits_int64(r->get_num()) || !fits_int64(r->get_den())) return false;
    if (abs(r->get_num()) >= kWindowCap || r->get_den() >= kWindowCap) return false;
  }
  return true;
}

bool point_is_small(const Point& z) {
  return fits_int64(z.first) && fits_int64(z.second) && abs(z.first) < kElementCap && abs(z.second) < kElementCap;
}

// Adds m({λ in Λ : ⌊λb⌋ - ⌊λb2⌋ = t}) for b != b2 into acc; returns whether
// the set has positive measure.
bool walk_window(std::int64_t t, std::int64_t b, std::int64_t b2, const Frac& lo, const Frac& hi,
                 DenAccumulator& acc) {
  const std::int64_t db = b - b2;
  Frac o1{t - 1, db}, o2{t + 1, db};
  if (db < 0) o1 = {-(t - 1), -db}, o2 = {-(t + 1), -db};
  if (less(o2, o1)) std::swap(o1, o2);
  const Frac left = less(lo, o1) ? o1 : lo;
  const Frac right = less(o2, hi) ? o2 : hi;
  if (!less(left, right)) return false;

  const std::int64_t d1 = b < 0 ? -b : b;
  const std::int64_t d2 = b2 < 0 ? -b2 : b2;
  i128 k1 = d1 ? first_multiple_after(left, d1) : 0;
  i128 k2 = d2 ? first_multiple_after(left, d2) : 0;
  const int s1 = b > 0 ? 1 : -1;
  const int s2 = b2 > 0 ? 1 : -1;
  i128 h = floor_right_of(b, left) - floor_right_of(b2, left);

  Frac x = left;
  bool any = false;
  while (true) {
    const bool has1 = d1 && less(Frac{k1, d1}, right);
    const bool has2 = d2 && less(Frac{k2, d2}, right);
    Frac y = right;
    if (has1) y = Frac{k1, d1};
    if (has2 && (!has1 || less(Frac{k2, d2}, y))) y = Frac{k2, d2};
    if (h == t) {
      acc.add(y.num, static_cast<std::int64_t>(y.den));
      acc.add(-x.num, static_cast<std::int64_t>(x.den));
      any = true;
    }
    if (!has1 && !has2) break;
    // cross every breakpoint located at y
    if (has1 && !less(y, Frac{k1, d1})) h += s1, ++k1;
    if (has2 && !less(y, Frac{k2, d2})) h -= s2, ++k2;
    x = y;
  }
  return any;
}

}  // namespace

// ---------------------------------------------------------------- windows

LambdaWindow::LambdaWindow(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  lo_.canonicalize();
  hi_.canonicalize();
  if (lo_ <= 0) throw std::invalid_argument("lambda window must be positive (negative lambda reduces to F -> -F)");
  if (!(lo_ < hi_)) throw std::invalid_argument("degenerate lambda window: need lo < hi");
}

Rational PairWindow::measure() const {
  Rational m = 0;
  for (const auto& p : exact) m += p.hi - p.lo;
  return m;
}

bool PairWindow::in_exact(const Rational& x) const {
  return std::any_of(exact.begin(), exact.end(), [&](const RationalPiece& p) { return p.contains(x); });
}

PairWindow pair_window(const Point& z, const Point& z2, const LambdaWindow& window) {
  PairWindow w{z, z2, std::nullopt, {}, false};
  const auto& [a, b] = z;
  const auto& [a2, b2] = z2;
  if (b == b2) {
    w.same_b = true;
    if (a == a2) w.exact.push_back({window.lo(), window.hi(), true, true});
    return w;
  }
  const Integer db = b - b2;
  Rational e1(a2 - a - 1, db), e2(a2 - a + 1, db);
  e1.canonicalize();
  e2.canonicalize();
  if (e2 < e1) std::swap(e1, e2);
  w.outer = std::make_pair(e1, e2);

  const Rational left = std::max(window.lo(), e1);
  const Rational right = std::min(window.hi(), e2);
  if (left > right) return w;

  std::vector<Rational> points{left, right};
  for (const Integer* m : {&b, &b2}) {
    const Integer d = abs(*m);
    if (d == 0) continue;
    for (Integer k = ceil(left * d); k <= floor(right * d); ++k) {
      Rational p(k, d);
      p.canonicalize();
      points.push_back(p);
    }
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  auto holds = [&](const Rational& x) { return a + floor(x * b) == a2 + floor(x * b2); };
  // Interleave point and gap tests: P0 G0 P1 G1 ... Pm.
  struct Slot {
    bool ok;
    bool is_point;
    std::size_t index;
  };
  std::vector<Slot> slots;
  for (std::size_t i = 0; i < points.size(); ++i) {
    slots.push_back({holds(points[i]), true, i});
    if (i + 1 < points.size()) slots.push_back({holds((points[i] + points[i + 1]) / 2), false, i});
  }
  for (std::size_t s = 0; s < slots.size();) {
    if (!slots[s].ok) {
      ++s;
      continue;
    }
    std::size_t e = s;
    while (e + 1 < slots.size() && slots[e + 1].ok) ++e;
    RationalPiece piece;
    piece.lo = points[slots[s].index];
    piece.lo_closed = slots[s].is_point;
    if (slots[e].is_point) {
      piece.hi = points[slots[e].index];
      piece.hi_closed = true;
    } else {
      piece.hi = points[slots[e].index + 1];
      piece.hi_closed = false;
    }
    w.exact.push_back(std::move(piece));
    s = e + 1;
  }
  return w;
}

bool difference_bound_admits(const Point& z, const Point& z2, const LambdaWindow& window) {
  const Integer da = abs(z.first - z2.first);
  const Integer db = abs(z.second - z2.second);
  return window.lo() * db - 1 < da && da < window.hi() * db + 1;
}

Rational window_measure(const Point& z, const Point& z2, const LambdaWindow& window) {
  if (z.second == z2.second) return z.first == z2.first ? window.measure() : Rational(0);
  if (!point_is_small(z) || !point_is_small(z2) || !window_is_small(window))
    return pair_window(z, z2, window).measure();
  DenAccumulator acc;
  walk_window(z2.first.get_si() - z.first.get_si(), z.second.get_si(), z2.second.get_si(), frac_of(window.lo()),
              frac_of(window.hi()), acc);
  return acc.total();
}

// ------------------------------------------------------------- collisions

CollisionReport collision_stats(const IntegerSet& e_in, const IntegerSet& f_in, const Rational& lambda,
                                const CollisionOptions& options) {
  if (e_in.empty() || f_in.empty()) throw std::invalid_argument("collision_stats needs nonempty restrictions");
  if (lambda <= 0) throw std::invalid_argument("lambda must be positive");
  const std::uint64_t pairs = static_cast<std::uint64_t>(e_in.size()) * f_in.size();
  if (pairs > options.max_pairs)
    throw SizeGuardError("collision histogram too large, restrict windows (" + std::to_string(pairs) + " pairs)");

  CollisionReport rep;
  rep.lambda = lambda;
  rep.total = pairs;
  unsigned __int128 energy = 0;
  auto record = [&](const Integer& m, std::uint64_t s) {
    ++rep.distinct;
    energy += static_cast<unsigned __int128>(s) * s;
    if (options.keep_histogram) rep.histogram.emplace_back(m, s);
  };

  bool done = false;
  if (e_in.is_small() && f_in.is_small() && fits_int64(lambda.get_num()) && fits_int64(lambda.get_den())) {
    std::vector<std::int64_t> scaled;
    try {
      scaled = kernels::floor_scale_small(f_in.small(), lambda.get_num().get_si(), lambda.get_den().get_si());
    } catch (const std::overflow_error&) {
      scaled.clear();
    }
    if (!scaled.empty()) {
      auto xs = e_in.small();
      const std::int64_t base = xs.front() + scaled.front();
      const auto range = static_cast<std::uint64_t>(xs.back() + scaled.back() - base) + 1;
      if (range <= std::max<std::uint64_t>(4 * pairs, std::uint64_t{1} << 24) && range <= (std::uint64_t{1} << 31)) {
        std::vector<std::uint32_t> counts(range, 0);
        for (std::int64_t a : xs)
          for (std::int64_t v : scaled) ++counts[static_cast<std::size_t>(a + v - base)];
        for (std::size_t m = 0; m < counts.size(); ++m)
          if (counts[m]) record(Integer(static_cast<long>(base + static_cast<std::int64_t>(m))), counts[m]);
      } else {
        const auto sums = kernels::pair_sums_sorted(xs, std::span<const std::int64_t>(scaled));
        for (const auto& [m, s] : kernels::run_lengths<std::int64_t>(sums)) record(Integer(static_cast<long>(m)), s);
      }
      done = true;
    }
  }
  if (!done) {
    const std::vector<Integer> xs = e_in.elements();
    const std::vector<Integer> ys = f_in.elements();
    const std::vector<Integer> scaled = kernels::floor_scale_big(ys, lambda);
    const auto sums = kernels::pair_sums_sorted(xs, scaled);
    for (const auto& [m, s] : kernels::run_lengths<Integer>(sums)) record(m, s);
  }
  rep.energy = from_i128(static_cast<i128>(energy));
  rep.pair_count = rep.energy;
  rep.cs_bound = Rational(Integer(static_cast<unsigned long>(pairs)) * Integer(static_cast<unsigned long>(pairs)),
                          rep.energy);
  rep.cs_bound.canonicalize();
  return rep;
}

// ------------------------------------------------------------------ delta

DeltaReport delta_exact(const IntegerSet& e_in, const IntegerSet& f_in, const LambdaWindow& window,
                        const DeltaOptions& options) {
  if (e_in.empty() || f_in.empty()) throw std::invalid_argument("delta_exact needs nonempty restrictions");
  const std::uint64_t pairs = static_cast<std::uint64_t>(e_in.size()) * f_in.size();
  if (pairs > 0xffffffffULL || pairs * pairs > options.max_pair_pairs)
    throw SizeGuardError("delta_exact: (|E|·|F|)² = " + std::to_string(pairs) + "² exceeds the guard");
  if (!window_is_small(window)) throw std::invalid_argument("delta_exact: lambda window terms must stay below 2^20");
  auto small_values = [](const IntegerSet& s) {
    if (!s.is_small()) return false;
    return s.small().front() > -kElementCap && s.small().back() < kElementCap;
  };
  if (!small_values(e_in) || !small_values(f_in))
    throw std::invalid_argument("delta_exact: elements must stay below 2^40 in magnitude");

  const auto es = e_in.small();
  const auto fs = f_in.small();
  const Frac lo = frac_of(window.lo());
  const Frac hi = frac_of(window.hi());
  DeltaReport rep;

  // Side 1: Σ over ordered pairs (z, z') of m(Λ_{z,z'} ∩ Λ).
  std::vector<std::pair<std::int64_t, std::int64_t>> zs;
  for (auto a : es)
    for (auto b : fs) zs.emplace_back(a, b);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(zs.size());
  DenAccumulator total;
  std::uint64_t terms = 0;
#pragma omp parallel
  {
    DenAccumulator local;
    std::uint64_t local_terms = 0;
#pragma omp for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto [a, b] = zs[static_cast<std::size_t>(i)];
      for (std::ptrdiff_t j = i + 1; j < n; ++j) {
        const auto [a2, b2] = zs[static_cast<std::size_t>(j)];
        if (b == b2) continue;  // a != a' here: never equal
        const i128 da = a > a2 ? a - a2 : a2 - a;
        const i128 db = b > b2 ? b - b2 : b2 - b;
        // prune by minΛ|b-b'| - 1 < |a-a'| < maxΛ|b-b'| + 1
        if (!(lo.num * db - lo.den < da * lo.den) || !(da * hi.den < hi.num * db + hi.den)) continue;
        DenAccumulator pair_acc;
        if (walk_window(a2 - a, b, b2, lo, hi, pair_acc)) {
          local.merge(pair_acc);
          local_terms += 2;
        }
      }
    }
#pragma omp critical
    {
      total.merge(local);
      terms += local_terms;
    }
  }
  // Λ_{z,z'} is symmetric in (z, z'); the diagonal contributes m(Λ) each.
  rep.exact_value = 2 * total.total() + Rational(Integer(static_cast<unsigned long>(pairs))) * window.measure();
  rep.per_pair_terms = terms + pairs;

  // Side 2: ∫_Λ N(λ) dλ, N constant between consecutive breakpoints k/|b|.
  struct Event {
    i128 k;
    std::int64_t d;
  };
  std::vector<std::int64_t> dens;
  for (auto b : fs)
    if (b != 0) dens.push_back(b < 0 ? -b : b);
  std::sort(dens.begin(), dens.end());
  dens.erase(std::unique(dens.begin(), dens.end()), dens.end());
  std::vector<Event> events;
  for (auto d : dens) {
    for (i128 k = first_multiple_after(lo, d); less(Frac{k, d}, hi); ++k) {
      events.push_back({k, d});
      if (events.size() > 50'000'000) throw SizeGuardError("delta_exact: too many breakpoints");
    }
  }
  std::sort(events.begin(), events.end(), [](const Event& x, const Event& y) {
    return less(Frac{x.k, x.d}, Frac{y.k, y.d});
  });

  std::vector<std::int64_t> shift(fs.size());
  std::int64_t vmin = 0, vmax = 0;
  for (std::size_t j = 0; j < fs.size(); ++j) {
    shift[j] = static_cast<std::int64_t>(floor_right_of(fs[j], lo));
    const auto at_hi = static_cast<std::int64_t>(floor_div128(hi.num * fs[j], hi.den));
    const std::int64_t low = std::min(shift[j], at_hi) - 1, high = std::max(shift[j], at_hi) + 1;
    vmin = j ? std::min(vmin, low) : low;
    vmax = j ? std::max(vmax, high) : high;
  }
  const std::int64_t mmin = es.front() + vmin;
  const auto range = static_cast<std::uint64_t>(es.back() + vmax - mmin) + 1;
  if (range > (std::uint64_t{1} << 28)) throw SizeGuardError("delta_exact: sum range too wide for quadrature");
  std::vector<std::uint32_t> counts(range, 0);
  i128 energy = 0;
  for (auto a : es)
    for (std::size_t j = 0; j < fs.size(); ++j) {
      auto& c = counts[static_cast<std::size_t>(a + shift[j] - mmin)];
      energy += 2 * static_cast<i128>(c) + 1;
      ++c;
    }

  std::unordered_map<std::int64_t, std::vector<std::size_t>> by_abs;
  for (std::size_t j = 0; j < fs.size(); ++j)
    if (fs[j] != 0) by_abs[fs[j] < 0 ? -fs[j] : fs[j]].push_back(j);

  DenAccumulator quad;
  quad.add(-energy * lo.num, static_cast<std::int64_t>(lo.den));
  for (std::size_t e = 0; e < events.size();) {
    std::size_t g = e;
    const Frac at{events[e].k, events[e].d};
    const i128 before = energy;
    while (g < events.size() && !less(at, Frac{events[g].k, events[g].d})) {
      for (std::size_t j : by_abs[events[g].d]) {
        const std::int64_t step = fs[j] > 0 ? 1 : -1;
        for (auto a : es) {
          auto& from = counts[static_cast<std::size_t>(a + shift[j] - mmin)];
          energy -= 2 * static_cast<i128>(from) - 1;
          --from;
          auto& to = counts[static_cast<std::size_t>(a + shift[j] + step - mmin)];
          energy += 2 * static_cast<i128>(to) + 1;
          ++to;
        }
        shift[j] += step;
      }
      ++g;
    }
    quad.add(at.num * (before - energy), static_cast<std::int64_t>(at.den));
    ++rep.breakpoint_count;
    e = g;
  }
  quad.add(energy * hi.num, static_cast<std::int64_t>(hi.den));
  rep.quadrature_value = quad.total();
  rep.quadrature_high = to_high(rep.quadrature_value);
  return rep;
}

// ------------------------------------------------------------------ sweeps

std::vector<Rational> draw_lambdas(const LambdaWindow& window, std::size_t samples, std::uint64_t seed) {
  const Integer scale = 1'000'000;
  const Integer u_lo = ceil(window.lo() * scale);
  const Integer u_hi = floor(window.hi() * scale);
  if (u_lo > u_hi || !fits_int64(u_hi)) throw std::invalid_argument("lambda window holds no grid point u/10^6");
  const std::uint64_t base = u_lo.get_ui();
  const std::uint64_t span = static_cast<std::uint64_t>(u_hi.get_si() - u_lo.get_si()) + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::mt19937_64 gen(seed);
  std::vector<Rational> out;
  out.reserve(samples);
  while (out.size() < samples) {
    const std::uint64_t r = gen();
    if (r >= limit) continue;
    Rational q(Integer(static_cast<unsigned long>(base + r % span)), scale);
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

namespace {

// |I + ⌊λJ⌋| for I = (a0, a1], J = (c0, c1].
Integer sum_interval_length(const Interval& i, const Interval& j, const Rational& lambda) {
  return i.hi() - i.lo() + floor(lambda * j.hi()) - floor(lambda * (j.lo() + 1));
}

HighFloat median_of(std::vector<HighFloat> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n == 0) return 0;
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

}  // namespace

SweepRecord sweep_one(const IntegerSet& e, const IntegerSet& f, const MatchedPair& pair, const Rational& lambda,
                      const SweepOptions& options) {
  const IntegerSet e_in = e.restrict_to(pair.i);
  const IntegerSet f_in = f.restrict_to(pair.j);
  if (e_in.empty() || f_in.empty()) throw std::invalid_argument("matched interval holds no element");
  const IntegerSet s = sum_scaled(e_in, f_in, lambda, SumsetOptions{options.max_pairs});
  SweepRecord rec{lambda, 0, 0, s.hull(), s.size(), sum_interval_length(pair.i, pair.j, lambda), {}, {}, false};
  if (s.size() >= 2) {
    const DimensionEstimate d = dimension_estimate(s, options.schedule);
    rec.dimension = d.alpha_hat;
    rec.witness = d.witness;
  }
  if (options.collisions) {
    const CollisionReport c = collision_stats(e_in, f_in, lambda, CollisionOptions{options.max_pairs, false});
    rec.energy = c.energy;
    rec.cs_bound = c.cs_bound;
  }
  rec.above = rec.dimension >= options.threshold;
  return rec;
}

SweepSummary summarize(const std::vector<SweepRecord>& records, const HighFloat& threshold) {
  SweepSummary s;
  std::vector<HighFloat> dims;
  for (const auto& r : records) {
    dims.push_back(r.dimension);
    s.above += r.dimension >= threshold;
  }
  s.count = records.size();
  s.fraction_above = s.count ? static_cast<double>(s.above) / static_cast<double>(s.count) : 0.0;
  if (!dims.empty()) {
    s.min = *std::min_element(dims.begin(), dims.end());
    s.max = *std::max_element(dims.begin(), dims.end());
    s.median = median_of(dims);
  }
  return s;
}

SweepReport sweep(const IntegerSet& e, const IntegerSet& f, const LambdaWindow& window,
                  const std::vector<MatchedPair>& pairs, const SweepOptions& options) {
  if (pairs.empty()) throw std::invalid_argument("no matched intervals; obtain (I_n, J_n) from compatibility_check");
  if (options.samples < 1) throw std::invalid_argument("samples must be at least 1");
  SweepReport rep{window.lo(), window.hi(), options.threshold, options.seed, {}, {}};
  const auto lambdas = draw_lambdas(window, options.samples, options.seed);
  for (std::size_t s = 0; s < lambdas.size(); ++s) {
    SweepRecord r = sweep_one(e, f, pairs[s % pairs.size()], lambdas[s], options);
    r.pair_index = s % pairs.size();
    rep.records.push_back(std::move(r));
  }
  rep.summary = summarize(rep.records, options.threshold);
  return rep;
}

MultiSweepReport multi_sweep(const std::vector<IntegerSet>& sets, const std::vector<Interval>& windows,
                             const LambdaWindow& window, const SweepOptions& options) {
  if (sets.size() < 2 || sets.size() > 4) throw std::invalid_argument("multi_sweep takes 2 to 4 sets");
  if (windows.size() != sets.size()) throw std::invalid_argument("one window per set");
  const std::size_t k = sets.size() - 1;
  std::vector<IntegerSet> parts;
  HighFloat dim_sum = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    parts.push_back(sets[i].restrict_to(windows[i]));
    if (parts.back().size() < 2) throw std::invalid_argument("window " + std::to_string(i) + " holds < 2 elements");
    dim_sum += dimension_estimate(parts.back()).alpha_hat;
  }
  MultiSweepReport rep;
  rep.target = std::min(HighFloat(1), dim_sum);
  rep.threshold = options.threshold;
  const auto lambdas = draw_lambdas(window, options.samples * k, options.seed);
  std::vector<SweepRecord> flat;
  for (std::size_t s = 0; s < options.samples; ++s) {
    MultiSweepRecord rec;
    IntegerSet acc = parts[0];
    Integer lo = windows[0].lo(), hi = windows[0].hi();
    for (std::size_t i = 1; i <= k; ++i) {
      const Rational& lam = lambdas[s * k + i - 1];
      rec.lambdas.push_back(lam);
      acc = sum_scaled(acc, parts[i], lam, SumsetOptions{options.max_pairs});
      lo += floor(lam * (windows[i].lo() + 1)) - 1;
      hi += floor(lam * windows[i].hi());
      lo += 1;
    }
    rec.distinct = acc.size();
    rec.target_length = hi - lo;
    rec.dimension = acc.size() >= 2 ? dimension_estimate(acc, options.schedule).alpha_hat : HighFloat(0);
    rec.above = rec.dimension >= options.threshold;
    flat.push_back({lambdas[s * k], s, rec.dimension, acc.hull(), rec.distinct, rec.target_length, {}, {}, rec.above});
    rep.records.push_back(std::move(rec));
  }
  rep.summary = summarize(flat, options.threshold);
  return rep;
}

}  // namespace zdim
