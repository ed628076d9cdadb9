#pragma once

// Constructors for the set families: power sets, polynomial images, integer
// Cantor sets with their Perron data, generalized IP-sets, random-walk zeros
// and the two counterexample families.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "zdim/integer_set.hpp"
#include "zdim/numeric.hpp"

namespace zdim {

/// ⌊n^(1/alpha)⌋ exactly: the largest m with m^q <= n^p where 1/alpha = p/q.
Integer floor_inverse_power(const Integer& n, const Rational& alpha);

/// E_alpha = {⌊n^(1/alpha)⌋ : 1 <= n <= n_max}.
IntegerSet power_set(const Rational& alpha, std::uint64_t n_max);

/// {⌊m^(1/alpha)⌋ : m_lo <= m <= m_hi}.
IntegerSet power_values(const Rational& alpha, const Integer& m_lo, const Integer& m_hi);

/// p(n) for n in [n_lo, n_hi]; coefficients leading term first.
IntegerSet polynomial_set(const std::vector<Integer>& coeffs, const Integer& n_lo, const Integer& n_hi);

class TransitionMatrix {
 public:
  explicit TransitionMatrix(std::vector<std::vector<std::uint8_t>> rows);
  static TransitionMatrix full(std::size_t size);
  /// a_ij = 1 iff both i and j are in `indices` (0-based).
  static TransitionMatrix block(std::size_t size, const std::vector<std::size_t>& indices);

  std::size_t size() const { return rows_.size(); }
  bool operator()(std::size_t i, std::size_t j) const { return rows_[i][j] != 0; }
  bool is_zero() const;
  bool irreducible() const;
  const std::vector<std::vector<std::uint8_t>>& rows() const { return rows_; }

  friend bool operator==(const TransitionMatrix&, const TransitionMatrix&) = default;

 private:
  std::vector<std::vector<std::uint8_t>> rows_;
};

// Text format: first line the size a, then a lines of a space-separated 0/1.
TransitionMatrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const TransitionMatrix& m);
TransitionMatrix load_matrix(const std::filesystem::path& path);

struct CantorSpec {
  TransitionMatrix matrix;
  std::uint32_t base = 2;
  /// digit value of each matrix index; empty means index i -> digit i.
  std::vector<std::uint32_t> alphabet;
  std::size_t depth = 1;
};

struct CantorSet {
  IntegerSet set;
  std::uint64_t words = 0;  // admissible words enumerated, before dedup
  bool nilpotent = false;
};

/// {d_0 + d_1 a + ... + d_m a^m : m <= depth, admissible}; words have up to
/// depth+1 digits.
CantorSet cantor_set(const CantorSpec& spec);

struct PerronReport {
  HighFloat eigenvalue;
  std::vector<Integer> word_counts;  // |Σ_k| = 1ᵀ A^k 1 for k = 1..n_terms
  HighFloat ratio_min;               // min_k |Σ_k| / λ^k
  HighFloat ratio_max;
  std::size_t iterations = 0;
  bool ratio_estimated = false;  // power iteration did not converge
};

PerronReport perron(const TransitionMatrix& a, std::size_t n_terms);

struct IPParameters {
  std::vector<Integer> k;  // k_1..k_depth
  std::vector<Integer> d;  // d_1..d_depth
  std::size_t depth() const { return k.size(); }
};

/// 1-based index of the first n with d_n <= Σ_{i<n} k_i d_i, if any.
std::optional<std::size_t> first_gap_violation(const IPParameters& params);

/// {Σ x_i d_i : 0 <= x_i < k_i}. Throws if the gap condition fails.
IntegerSet ip_set(const IPParameters& params);

/// k_n = c·2^n, d_n = ⌊2^(n²/(2 alpha))⌋ for n = 1..depth.
IPParameters resonant_parameters(const Rational& alpha, std::size_t depth, const Integer& c = 1);
IntegerSet integer_resonant_set(const Rational& alpha, std::size_t depth);

/// Zeros n <= n_steps of a fair ±1 walk driven by mt19937_64(seed): each
/// draw supplies 64 steps, low bit first, bit 1 = up.
IntegerSet random_walk_zeros(std::uint64_t seed, std::uint64_t n_steps);

/// ⋃_{2<=n<=depth} [n^n, (n+1)^n] ∩ E_{1-1/n}.
IntegerSet zero_density_full_dim(std::size_t depth);

struct NoncompatibleParams {
  Rational alpha{1, 2};
  Rational beta{1, 2};
  std::size_t depth = 2;
  Integer growth_factor = 16;
  std::size_t block_count = 8;  // elements of E_alpha (E_beta) per block
  std::size_t magnitude_bits = 4096;
};

struct NoncompatiblePair {
  IntegerSet e;
  IntegerSet f;
  std::vector<Integer> mu, nu;
  std::vector<Interval> i_blocks;  // I_i = (A_i, B_i]
  std::vector<Interval> j_blocks;  // J_i = (C_i, D_i]
};

NoncompatiblePair noncompatible_pair(const NoncompatibleParams& params);

/// Two depth-n Cantor sets in base 12 whose digit sets add up to 0..10
/// without carries, and the target set with digits 0..10.
struct ResonanceExample {
  CantorSpec a, b, c;
};
ResonanceExample resonance_example(std::size_t depth);

}  // namespace zdim
