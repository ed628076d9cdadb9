#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "zdim/integer_set.hpp"

namespace zdim::test {

inline std::int64_t uniform(std::mt19937_64& gen, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(gen() % static_cast<std::uint64_t>(hi - lo + 1));
}

/// n draws from [lo, hi], deduplicated.
inline IntegerSet random_set(std::mt19937_64& gen, std::size_t n, std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> xs;
  for (std::size_t i = 0; i < n; ++i) xs.push_back(uniform(gen, lo, hi));
  return IntegerSet::from_unsorted_small(std::move(xs));
}

inline std::vector<Integer> big(std::initializer_list<long> xs) {
  std::vector<Integer> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

inline IntegerSet set_of(std::initializer_list<long> xs) { return IntegerSet::from_unsorted(big(xs)); }

}  // namespace zdim::test
