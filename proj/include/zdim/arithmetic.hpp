#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "zdim/integer_set.hpp"
#include "zdim/numeric.hpp"

namespace zdim {

/// A pairwise computation would exceed its configured size limit.
class SizeGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {⌊λn⌋ : n in E}. Throws for λ <= 0.
IntegerSet floor_scale(const IntegerSet& e, const Rational& lambda);

struct SumsetOptions {
  std::uint64_t max_pairs = 100'000'000;
};

/// {a + b}. Throws SizeGuardError when |E|·|F| > max_pairs.
IntegerSet sumset(const IntegerSet& e, const IntegerSet& f, const SumsetOptions& options = {});

/// E + ⌊λF⌋.
IntegerSet sum_scaled(const IntegerSet& e, const IntegerSet& f, const Rational& lambda,
                      const SumsetOptions& options = {});

struct StarProduct {
  IntegerSet set;
  std::size_t skipped = 0;  // indices of F outside 1..|E|
};

/// {x_n : n in F} with E indexed x_1 < x_2 < ... from its smallest element.
StarProduct star(const IntegerSet& e, const IntegerSet& f);

struct StarWitness {
  IntegerSet f;        // (E_alpha + i) ∩ (i, j]
  IntegerSet product;  // E * f
  Interval interval;   // the witness interval of E
  std::size_t count = 0;  // |(E * f) ∩ interval|
};

/// With E ∩ interval = {x_{i+1}, ..., x_j}, selects F = (E_alpha + i) ∩ (i, j].
StarWitness star_witness(const IntegerSet& e, const Interval& interval, const Rational& alpha);

struct AsymptoticReport {
  bool holds = true;
  std::optional<std::size_t> violation;  // first failing 1-based index n
  std::size_t first_index = 0;
  std::size_t last_index = 0;
};

/// a_{n-i} <= b_n <= a_{n+i} for every n in [n0, N] where all indices exist.
AsymptoticReport asymptotic_check(const IntegerSet& e, const IntegerSet& f, std::size_t i, std::size_t n0);

}  // namespace zdim
