#include "zdim/numeric.hpp"

#include <cmath>
#include <stdexcept>

namespace zdim {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

Integer parse_integer(std::string_view s) {
  std::string_view body = s;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  if (!all_digits(body)) throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  std::string text(s);
  if (text.front() == '+') text.erase(0, 1);
  return Integer(text, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) throw std::invalid_argument("bad denominator in '" + std::string(text) + "'");
    Integer den(std::string(den_text), 10);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !int_part.empty() && int_part.front() == '-';
    std::string_view int_digits = int_part;
    if (!int_digits.empty() && (int_digits.front() == '-' || int_digits.front() == '+')) int_digits.remove_prefix(1);
    if ((!int_digits.empty() && !all_digits(int_digits)) || !all_digits(frac) || (int_digits.empty() && frac.empty()))
      throw std::invalid_argument("not a decimal: '" + std::string(text) + "'");
    Integer whole = int_digits.empty() ? Integer(0) : Integer(std::string(int_digits), 10);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Integer num = whole * scale + Integer(std::string(frac), 10);
    if (negative) num = -num;
    Rational r(num, scale);
    r.canonicalize();
    return r;
  }
  return Rational(parse_integer(text));
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

HighFloat to_high(const Integer& z) {
  if (fits_int64(z)) return HighFloat(static_cast<std::int64_t>(z.get_si()));
  return HighFloat(z.get_str());
}

HighFloat to_high(const Rational& r) { return to_high(r.get_num()) / to_high(r.get_den()); }

double to_double(const Integer& z) { return z.get_d(); }

double log_double(const Integer& z) {
  if (sgn(z) <= 0) throw std::domain_error("log of non-positive integer");
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

Integer floor_div(const Integer& num, const Integer& den) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

Integer ceil_div(const Integer& num, const Integer& den) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

Integer floor(const Rational& r) { return floor_div(r.get_num(), r.get_den()); }
Integer ceil(const Rational& r) { return ceil_div(r.get_num(), r.get_den()); }

Integer iroot(const Integer& n, unsigned long k) {
  if (sgn(n) < 0) throw std::domain_error("iroot of negative integer");
  Integer m;
  mpz_root(m.get_mpz_t(), n.get_mpz_t(), k);
  return m;
}

std::optional<Integer> exact_rational_power(const Integer& z, const Rational& exponent) {
  if (sgn(exponent) < 0 || sgn(z) < 0) return std::nullopt;
  if (!exponent.get_num().fits_ulong_p() || !exponent.get_den().fits_ulong_p()) return std::nullopt;
  unsigned long p = exponent.get_num().get_ui();
  unsigned long q = exponent.get_den().get_ui();
  // Keep the intermediate power bounded; larger cases fall back to HighFloat.
  if (p * mpz_sizeinbase(z.get_mpz_t(), 2) > (1u << 20)) return std::nullopt;
  Integer powered;
  mpz_pow_ui(powered.get_mpz_t(), z.get_mpz_t(), p);
  Integer root;
  if (mpz_root(root.get_mpz_t(), powered.get_mpz_t(), q) == 0) return std::nullopt;
  return root;
}

}  // namespace zdim
