#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "zdim/numeric.hpp"

namespace zdim {

/// Half-open integer interval (lo, hi] = {lo+1, ..., hi}.
class Interval {
 public:
  Interval(Integer lo, Integer hi);

  const Integer& lo() const { return lo_; }
  const Integer& hi() const { return hi_; }
  Integer length() const { return hi_ - lo_; }
  bool contains(const Integer& x) const { return x > lo_ && x <= hi_; }
  bool contains(const Interval& other) const { return other.lo_ >= lo_ && other.hi_ <= hi_; }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  Integer lo_;
  Integer hi_;
};

std::string to_string(const Interval& interval);

/// Elements whose magnitude stays below this bound are stored as int64, so
/// that any difference or pairwise sum still fits.
inline constexpr std::int64_t kSmallLimit = (std::int64_t{1} << 62) - 1;

/// Strictly increasing finite set of integers. Immutable once built.
///
/// Storage is int64 when every element satisfies |x| <= kSmallLimit and
/// arbitrary precision otherwise; the choice is invisible to callers except
/// through small()/big() for kernels that specialise on it.
class IntegerSet {
 public:
  IntegerSet() = default;

  /// Sorts and removes duplicates.
  static IntegerSet from_unsorted(std::vector<Integer> values, std::string provenance = {});
  static IntegerSet from_unsorted_small(std::vector<std::int64_t> values, std::string provenance = {});
  /// Throws std::invalid_argument unless values are strictly increasing.
  static IntegerSet from_sorted(std::vector<Integer> values, std::string provenance = {});
  static IntegerSet from_sorted_small(std::vector<std::int64_t> values, std::string provenance = {});

  std::size_t size() const;
  bool empty() const { return size() == 0; }
  Integer operator[](std::size_t i) const;
  Integer front() const { return (*this)[0]; }
  Integer back() const { return (*this)[size() - 1]; }

  bool is_small() const { return std::holds_alternative<std::vector<std::int64_t>>(store_); }
  std::span<const std::int64_t> small() const { return std::get<std::vector<std::int64_t>>(store_); }
  std::span<const Integer> big() const { return std::get<std::vector<Integer>>(store_); }

  /// Calls f with a span over the stored elements (int64 or Integer).
  template <class F>
  decltype(auto) visit(F&& f) const {
    return std::visit([&](const auto& v) -> decltype(auto) { return f(std::span(v)); }, store_);
  }

  std::vector<Integer> elements() const;

  /// Index of the first element > x.
  std::size_t upper_bound(const Integer& x) const;
  /// |E ∩ (lo, hi]| by binary search.
  std::size_t count_in(const Interval& interval) const;
  IntegerSet restrict_to(const Interval& interval) const;
  bool contains(const Integer& x) const;
  bool is_subset_of(const IntegerSet& other) const;

  /// (min - 1, max]; requires a nonempty set.
  Interval hull() const;

  const std::string& provenance() const { return provenance_; }
  void set_provenance(std::string p) { provenance_ = std::move(p); }

  friend bool operator==(const IntegerSet& a, const IntegerSet& b);

 private:
  static IntegerSet normalized(std::vector<Integer> sorted, std::string provenance);

  std::variant<std::vector<std::int64_t>, std::vector<Integer>> store_{std::vector<std::int64_t>{}};
  std::string provenance_;
};

/// Elements are compared by value; provenance is metadata.
bool operator==(const IntegerSet& a, const IntegerSet& b);

IntegerSet translate(const IntegerSet& e, const Integer& c);
IntegerSet negate(const IntegerSet& e);
IntegerSet set_union(const IntegerSet& a, const IntegerSet& b);

}  // namespace zdim
