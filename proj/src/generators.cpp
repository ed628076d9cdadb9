#include "zdim/generators.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "zdim/zset_io.hpp"

namespace zdim {

namespace {

Integer pow_ui(const Integer& base, unsigned long e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

Integer ceil_root(const Integer& n, unsigned long k) {
  Integer r = iroot(n, k);
  if (pow_ui(r, k) < n) r += 1;
  return r;
}

unsigned long to_ulong(const Integer& z, const char* what) {
  if (!z.fits_ulong_p()) throw std::invalid_argument(std::string(what) + " out of range");
  return z.get_ui();
}

void require_unit_alpha(const Rational& alpha) {
  if (alpha <= 0 || alpha > 1) throw std::invalid_argument("alpha must lie in (0,1], got " + to_string(alpha));
}

}  // namespace

// ---------------------------------------------------------------- power sets

Integer floor_inverse_power(const Integer& n, const Rational& alpha) {
  require_unit_alpha(alpha);
  const unsigned long p = to_ulong(alpha.get_num(), "alpha numerator");
  const unsigned long q = to_ulong(alpha.get_den(), "alpha denominator");
  return iroot(pow_ui(n, q), p);
}

IntegerSet power_values(const Rational& alpha, const Integer& m_lo, const Integer& m_hi) {
  require_unit_alpha(alpha);
  std::vector<Integer> out;
  for (Integer m = m_lo; m <= m_hi; ++m) out.push_back(floor_inverse_power(m, alpha));
  return IntegerSet::from_unsorted(std::move(out));
}

IntegerSet power_set(const Rational& alpha, std::uint64_t n_max) {
  IntegerSet s = power_values(alpha, Integer(1), Integer(static_cast<unsigned long>(n_max)));
  s.set_provenance("power alpha=" + to_string(alpha) + " nmax=" + std::to_string(n_max));
  return s;
}

IntegerSet polynomial_set(const std::vector<Integer>& coeffs, const Integer& n_lo, const Integer& n_hi) {
  if (coeffs.size() < 2) throw std::invalid_argument("degenerate polynomial: degree must be at least 1");
  if (coeffs.front() == 0) throw std::invalid_argument("degenerate polynomial: leading coefficient is zero");
  if (n_lo > n_hi) throw std::invalid_argument("empty evaluation range");
  std::vector<Integer> out;
  for (Integer n = n_lo; n <= n_hi; ++n) {
    Integer v = 0;
    for (const auto& c : coeffs) v = v * n + c;
    out.push_back(std::move(v));
  }
  std::string prov = "polynomial coeffs=";
  for (std::size_t i = 0; i < coeffs.size(); ++i) prov += (i ? "," : "") + coeffs[i].get_str();
  prov += " n=[" + n_lo.get_str() + "," + n_hi.get_str() + "]";
  return IntegerSet::from_unsorted(std::move(out), prov);
}

// ------------------------------------------------------- transition matrices

TransitionMatrix::TransitionMatrix(std::vector<std::vector<std::uint8_t>> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw std::invalid_argument("transition matrix must be nonempty");
  for (const auto& r : rows_) {
    if (r.size() != rows_.size()) throw std::invalid_argument("transition matrix must be square");
    for (auto v : r)
      if (v > 1) throw std::invalid_argument("transition matrix entries must be 0 or 1");
  }
}

TransitionMatrix TransitionMatrix::full(std::size_t size) {
  return TransitionMatrix(std::vector<std::vector<std::uint8_t>>(size, std::vector<std::uint8_t>(size, 1)));
}

TransitionMatrix TransitionMatrix::block(std::size_t size, const std::vector<std::size_t>& indices) {
  std::vector<std::vector<std::uint8_t>> rows(size, std::vector<std::uint8_t>(size, 0));
  for (auto i : indices)
    for (auto j : indices) {
      if (i >= size || j >= size) throw std::invalid_argument("block index out of range");
      rows[i][j] = 1;
    }
  return TransitionMatrix(std::move(rows));
}

bool TransitionMatrix::is_zero() const {
  for (const auto& r : rows_)
    for (auto v : r)
      if (v) return false;
  return true;
}

bool TransitionMatrix::irreducible() const {
  const std::size_t n = size();
  auto reach = rows_;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = 1;
  for (const auto& r : reach)
    for (auto v : r)
      if (!v) return false;
  return true;
}

TransitionMatrix read_matrix(std::istream& in) {
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line)) throw ParseError("empty matrix file", 1);
  std::size_t size = 0;
  {
    std::istringstream ls(line);
    if (!(ls >> size) || size == 0) throw ParseError("expected matrix size", lineno);
  }
  std::vector<std::vector<std::uint8_t>> rows;
  while (rows.size() < size && std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::uint8_t> row;
    for (std::string tok; ls >> tok;) {
      if (tok != "0" && tok != "1") throw ParseError("entry must be 0 or 1, got '" + tok + "'", lineno);
      row.push_back(tok == "1");
    }
    if (row.size() != size)
      throw ParseError("expected " + std::to_string(size) + " entries, got " + std::to_string(row.size()), lineno);
    rows.push_back(std::move(row));
  }
  if (rows.size() != size) throw ParseError("expected " + std::to_string(size) + " rows", lineno);
  return TransitionMatrix(std::move(rows));
}

void write_matrix(std::ostream& out, const TransitionMatrix& m) {
  out << m.size() << '\n';
  for (const auto& r : m.rows()) {
    for (std::size_t j = 0; j < r.size(); ++j) out << (j ? " " : "") << int(r[j]);
    out << '\n';
  }
}

TransitionMatrix load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_matrix(in);
}

// ------------------------------------------------------------- Cantor sets

namespace {

template <class T>
std::vector<T> enumerate_words(const CantorSpec& s, const std::vector<std::uint32_t>& alphabet, std::uint64_t& words,
                               bool& extended) {
  const std::size_t k = s.matrix.size();
  std::vector<std::vector<T>> by_last(k);
  std::vector<T> all;
  // A one-digit word needs an index touching some transition; the all-zero
  // matrix keeps every index.
  const bool zero = s.matrix.is_zero();
  words = 0;
  for (std::size_t j = 0; j < k; ++j) {
    bool live = zero;
    for (std::size_t i = 0; i < k && !live; ++i) live = s.matrix(i, j) || s.matrix(j, i);
    if (!live) continue;
    by_last[j].push_back(T(alphabet[j]));
    all.push_back(T(alphabet[j]));
    ++words;
  }
  extended = false;
  T power = 1;
  for (std::size_t pos = 1; pos <= s.depth; ++pos) {
    power *= s.base;
    std::vector<std::vector<T>> next(k);
    for (std::size_t j = 0; j < k; ++j) {
      const T add = T(alphabet[j]) * power;
      for (std::size_t i = 0; i < k; ++i) {
        if (!s.matrix(i, j)) continue;
        for (const auto& v : by_last[i]) next[j].push_back(v + add);
      }
    }
    std::uint64_t level = 0;
    for (const auto& v : next) {
      level += v.size();
      all.insert(all.end(), v.begin(), v.end());
    }
    if (level == 0) break;
    extended = true;
    words += level;
    by_last = std::move(next);
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

}  // namespace

CantorSet cantor_set(const CantorSpec& spec) {
  const std::size_t k = spec.matrix.size();
  std::vector<std::uint32_t> alphabet = spec.alphabet;
  if (alphabet.empty())
    for (std::size_t i = 0; i < k; ++i) alphabet.push_back(static_cast<std::uint32_t>(i));
  if (alphabet.size() != k) throw std::invalid_argument("alphabet size must match the matrix size");
  if (spec.base < 2) throw std::invalid_argument("base must be at least 2");
  {
    auto sorted = alphabet;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("alphabet must be injective");
    if (sorted.back() >= spec.base) throw std::invalid_argument("digit outside 0..base-1");
  }

  CantorSet out;
  bool extended = false;
  const Integer bound = pow_ui(Integer(spec.base), spec.depth + 1);
  if (bound <= kSmallLimit) {
    out.set = IntegerSet::from_sorted_small(enumerate_words<std::int64_t>(spec, alphabet, out.words, extended));
  } else {
    out.set = IntegerSet::from_sorted(enumerate_words<Integer>(spec, alphabet, out.words, extended));
  }
  out.nilpotent = !extended && spec.depth > 0;

  std::string prov = "cantor base=" + std::to_string(spec.base) + " depth=" + std::to_string(spec.depth) + " digits=";
  for (std::size_t i = 0; i < k; ++i) prov += (i ? "," : "") + std::to_string(alphabet[i]);
  prov += " matrix=";
  for (const auto& r : spec.matrix.rows()) {
    for (auto v : r) prov += char('0' + v);
    prov += '/';
  }
  prov.pop_back();
  if (out.nilpotent) prov += " nilpotent";
  out.set.set_provenance(prov);
  return out;
}

// -------------------------------------------------------------- Perron data

PerronReport perron(const TransitionMatrix& a, std::size_t n_terms) {
  if (n_terms < 2) throw std::invalid_argument("perron needs n_terms >= 2");
  const std::size_t k = a.size();
  PerronReport rep;

  std::vector<Integer> v(k, 1);
  for (std::size_t t = 1; t <= n_terms; ++t) {
    std::vector<Integer> w(k, 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (a(i, j)) w[j] += v[i];
    Integer total = 0;
    for (const auto& x : w) total += x;
    rep.word_counts.push_back(total);
    v = std::move(w);
  }

  // Power iteration on A + I: same Perron vector, and the shifted root is
  // strictly dominant in modulus even when A is imprimitive.
  std::vector<long double> x(k, 1.0L / static_cast<long double>(k)), y(k);
  long double mu = 0;
  bool converged = false;
  constexpr std::size_t kMaxSteps = 100000;
  for (std::size_t step = 1; step <= kMaxSteps; ++step) {
    long double sum = 0;
    for (std::size_t j = 0; j < k; ++j) {
      long double acc = x[j];
      for (std::size_t i = 0; i < k; ++i)
        if (a(i, j)) acc += x[i];
      y[j] = acc;
      sum += acc;
    }
    long double drift = 0;
    for (std::size_t j = 0; j < k; ++j) {
      y[j] /= sum;
      drift = std::max(drift, std::fabs(y[j] - x[j]));
    }
    const bool settled = step > 1 && std::fabs(sum - mu) <= 1e-12L * sum && drift <= 1e-13L;
    mu = sum;
    x.swap(y);
    rep.iterations = step;
    if (settled) {
      converged = true;
      break;
    }
  }

  if (converged) {
    rep.eigenvalue = HighFloat(mu - 1.0L);
    if (rep.eigenvalue < 0) rep.eigenvalue = 0;
  } else {
    rep.ratio_estimated = true;
    HighFloat acc = 0;
    std::size_t used = 0;
    for (std::size_t t = rep.word_counts.size() - 1; t >= 1 && used < 5; --t, ++used)
      if (rep.word_counts[t - 1] != 0) acc += to_high(rep.word_counts[t]) / to_high(rep.word_counts[t - 1]);
    rep.eigenvalue = used ? acc / used : HighFloat(0);
  }

  rep.ratio_min = rep.ratio_max = 0;
  if (rep.eigenvalue > 0) {
    bool first = true;
    HighFloat power = 1;
    for (const auto& count : rep.word_counts) {
      power *= rep.eigenvalue;
      if (count == 0) continue;
      const HighFloat r = to_high(count) / power;
      if (first || r < rep.ratio_min) rep.ratio_min = r;
      if (first || r > rep.ratio_max) rep.ratio_max = r;
      first = false;
    }
  }
  return rep;
}

// ------------------------------------------------------------------ IP-sets

std::optional<std::size_t> first_gap_violation(const IPParameters& params) {
  if (params.k.size() != params.d.size()) throw std::invalid_argument("k and d must have equal length");
  Integer partial = 0;
  for (std::size_t n = 0; n < params.k.size(); ++n) {
    if (params.k[n] < 1 || params.d[n] < 1) return n + 1;
    if (params.d[n] <= partial) return n + 1;
    partial += params.k[n] * params.d[n];
  }
  return std::nullopt;
}

IntegerSet ip_set(const IPParameters& params) {
  if (auto bad = first_gap_violation(params))
    throw std::invalid_argument("gap condition d_n > sum_{i<n} k_i d_i fails at n = " + std::to_string(*bad));
  Integer expected = 1;
  for (const auto& k : params.k) expected *= k;
  if (expected > 100'000'000) throw std::invalid_argument("IP-set would exceed 10^8 elements");

  std::vector<Integer> cur{Integer(0)};
  for (std::size_t n = 0; n < params.depth(); ++n) {
    const unsigned long kn = params.k[n].get_ui();
    std::vector<Integer> next;
    next.reserve(cur.size() * kn);
    for (unsigned long x = 0; x < kn; ++x) {
      const Integer shift = params.d[n] * x;
      for (const auto& v : cur) next.push_back(v + shift);
    }
    cur = std::move(next);
  }
  std::string prov = "ip k=";
  for (std::size_t n = 0; n < params.depth(); ++n) prov += (n ? "," : "") + params.k[n].get_str();
  prov += " d=";
  for (std::size_t n = 0; n < params.depth(); ++n) prov += (n ? "," : "") + params.d[n].get_str();
  IntegerSet s = IntegerSet::from_sorted(std::move(cur), prov);  // throws on any repeated sum
  if (Integer(static_cast<unsigned long>(s.size())) != expected) throw std::logic_error("IP-set digit map not injective");
  return s;
}

IPParameters resonant_parameters(const Rational& alpha, std::size_t depth, const Integer& c) {
  if (alpha <= Rational(1, 2) || alpha >= 1) throw std::invalid_argument("alpha must lie in (1/2,1)");
  const unsigned long p = to_ulong(alpha.get_num(), "alpha numerator");
  const unsigned long q = to_ulong(alpha.get_den(), "alpha denominator");
  IPParameters params;
  for (std::size_t n = 1; n <= depth; ++n) {
    params.k.push_back(c * pow_ui(Integer(2), n));
    // 2^(n²/(2α)) = (2^(n² q))^(1/(2p))
    params.d.push_back(iroot(pow_ui(Integer(2), n * n * q), 2 * p));
  }
  return params;
}

IntegerSet integer_resonant_set(const Rational& alpha, std::size_t depth) {
  if (depth < 1 || depth > 6) throw std::invalid_argument("depth must lie in 1..6");
  IntegerSet s = ip_set(resonant_parameters(alpha, depth));
  s.set_provenance("resonant alpha=" + to_string(alpha) + " depth=" + std::to_string(depth));
  return s;
}

// ------------------------------------------------------------ random walks

IntegerSet random_walk_zeros(std::uint64_t seed, std::uint64_t n_steps) {
  if (n_steps < 1) throw std::invalid_argument("n_steps must be at least 1");
  std::mt19937_64 gen(seed);
  std::vector<std::int64_t> zeros;
  std::int64_t position = 0;
  std::uint64_t bits = 0;
  int left = 0;
  for (std::uint64_t n = 1; n <= n_steps; ++n) {
    if (left == 0) {
      bits = gen();
      left = 64;
    }
    position += (bits & 1) ? 1 : -1;
    bits >>= 1;
    --left;
    if (position == 0) zeros.push_back(static_cast<std::int64_t>(n));
  }
  return IntegerSet::from_sorted_small(std::move(zeros),
                                       "walk seed=" + std::to_string(seed) + " steps=" + std::to_string(n_steps));
}

// ---------------------------------------------- zero density, full dimension

IntegerSet zero_density_full_dim(std::size_t depth) {
  if (depth < 2) throw std::invalid_argument("depth must be at least 2");
  std::vector<Integer> out;
  for (unsigned long n = 2; n <= depth; ++n) {
    const Rational alpha(static_cast<long>(n - 1), static_cast<long>(n));
    const Integer lo = pow_ui(Integer(n), n);
    const Integer hi = pow_ui(Integer(n + 1), n);
    // ⌊m^(n/(n-1))⌋ lands in [n^n, (n+1)^n] exactly for n^(n-1) <= m <= (n+1)^(n-1).
    const IntegerSet block = power_values(alpha, pow_ui(Integer(n), n - 1), pow_ui(Integer(n + 1), n - 1));
    for (const auto& x : block.elements())
      if (x >= lo && x <= hi) out.push_back(x);
  }
  return IntegerSet::from_unsorted(std::move(out), "example2 depth=" + std::to_string(depth));
}

// ------------------------------------------------------ non-compatible pair

namespace {

struct PowerTerm {
  // x = (i^a · L^b)^(1/deg), all exponents integral
  unsigned long a, b, deg;
};

// Exponents for i^(c/(1-γ)) · L^(2δ/(1-γ)) with γ = g1/g2, δ = d1/d2.
PowerTerm power_term(unsigned long c, const Rational& gamma, const Rational& delta) {
  const unsigned long g1 = gamma.get_num().get_ui(), g2 = gamma.get_den().get_ui();
  const unsigned long d1 = delta.get_num().get_ui(), d2 = delta.get_den().get_ui();
  // 1/(1-γ) = g2/(g2-g1); raise everything to the power (g2-g1)·d2.
  return {c * g2 * d2, 2 * d1 * g2, (g2 - g1) * d2};
}

Integer next_scale(unsigned long i, const Integer& length, const Integer& prev_hi, const PowerTerm& term,
                   const Integer& g, std::size_t max_bits, const char* name) {
  if (mpz_sizeinbase(length.get_mpz_t(), 2) * term.b > (std::size_t{1} << 24))
    throw std::invalid_argument(std::string(name) + " exceeds the magnitude cap");
  const Integer n = pow_ui(Integer(i), term.a) * pow_ui(length, term.b);
  const Integer x = ceil_root(n, term.deg);
  Integer v = g * std::max(Integer(length * length), x);
  v = std::max(v, Integer(g * prev_hi + 1));
  if (mpz_sizeinbase(v.get_mpz_t(), 2) > max_bits)
    throw std::invalid_argument(std::string(name) + "_" + std::to_string(i + 1) + " = " + v.get_str() +
                                " exceeds 2^" + std::to_string(max_bits) + "; lower the depth");
  // Exact check of the strict inequality it is meant to satisfy.
  if (!(v > length * length) || !(pow_ui(v, term.deg) > n)) throw std::logic_error("growth condition not met");
  return v;
}

}  // namespace

NoncompatiblePair noncompatible_pair(const NoncompatibleParams& p) {
  auto in_range = [](const Rational& r) { return r >= Rational(1, 2) && r < 1; };
  if (!in_range(p.alpha) || !in_range(p.beta)) throw std::invalid_argument("alpha and beta must lie in [1/2,1)");
  if (p.depth < 1) throw std::invalid_argument("depth must be at least 1");
  if (p.growth_factor < 2) throw std::invalid_argument("growth factor must be at least 2");
  if (p.block_count < 2) throw std::invalid_argument("block count must be at least 2");

  const Integer kcount(static_cast<unsigned long>(p.block_count));
  const std::vector<Integer> e_unit = power_values(p.alpha, 1, kcount).elements();
  const std::vector<Integer> f_unit = power_values(p.beta, 1, kcount).elements();
  // ν_i > max{(B_i-A_i)², i^(4/(1-β)) (B_i-A_i)^(2α/(1-β))}
  const PowerTerm nu_term = power_term(4, p.beta, p.alpha);
  // μ_{i+1} > max{(D_i-C_i)², i^(2/(1-α)) (D_i-C_i)^(2β/(1-α))}
  const PowerTerm mu_term = power_term(2, p.alpha, p.beta);

  NoncompatiblePair out;
  std::vector<Integer> e_vals, f_vals;
  Integer mu = 1;
  for (unsigned long i = 1; i <= p.depth; ++i) {
    const Interval ib(mu - 1, mu * e_unit.back());
    for (const auto& x : e_unit) e_vals.push_back(mu * x);
    out.mu.push_back(mu);
    out.i_blocks.push_back(ib);

    const Integer nu = next_scale(i, ib.length(), ib.hi(), nu_term, p.growth_factor, p.magnitude_bits, "nu");
    const Interval jb(nu - 1, nu * f_unit.back());
    for (const auto& x : f_unit) f_vals.push_back(nu * x);
    out.nu.push_back(nu);
    out.j_blocks.push_back(jb);

    if (i < p.depth) mu = next_scale(i, jb.length(), jb.hi(), mu_term, p.growth_factor, p.magnitude_bits, "mu");
  }
  const std::string prov = "noncompatible alpha=" + to_string(p.alpha) + " beta=" + to_string(p.beta) +
                           " depth=" + std::to_string(p.depth) + " growth=" + p.growth_factor.get_str() +
                           " block=" + std::to_string(p.block_count) +
                           " (block alpha-measure condition not certified at truncation)";
  out.e = IntegerSet::from_sorted(std::move(e_vals), prov + " part=E");
  out.f = IntegerSet::from_sorted(std::move(f_vals), prov + " part=F");
  return out;
}

// -------------------------------------------------------------- resonance

ResonanceExample resonance_example(std::size_t depth) {
  std::vector<std::uint32_t> identity(12);
  for (std::uint32_t i = 0; i < 12; ++i) identity[i] = i;
  // Indices 4..7 carry digits {0,4,5,7}; {0,1,2,3} + {0,4,5,7} = {0,...,10}.
  const std::vector<std::uint32_t> shifted{1, 2, 3, 6, 0, 4, 5, 7, 8, 9, 10, 11};
  ResonanceExample ex{
      {TransitionMatrix::block(12, {0, 1, 2, 3}), 12, identity, depth},
      {TransitionMatrix::block(12, {4, 5, 6, 7}), 12, shifted, depth},
      {TransitionMatrix::block(12, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10}), 12, identity, depth},
  };
  return ex;
}

}  // namespace zdim
