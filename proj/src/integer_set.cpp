#include "zdim/integer_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace zdim {

Interval::Interval(Integer lo, Integer hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (!(lo_ < hi_)) throw std::invalid_argument("interval needs lo < hi, got (" + lo_.get_str() + "," + hi_.get_str() + "]");
}

std::string to_string(const Interval& interval) {
  return "(" + interval.lo().get_str() + "," + interval.hi().get_str() + "]";
}

namespace {

bool is_small_value(const Integer& z) { return fits_int64(z) && z.get_si() <= kSmallLimit && z.get_si() >= -kSmallLimit; }

bool small_value(std::int64_t v) { return v <= kSmallLimit && v >= -kSmallLimit; }

template <class T>
void require_strictly_increasing(const std::vector<T>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i - 1] < v[i]))
      throw std::invalid_argument("elements not strictly increasing at position " + std::to_string(i));
}

}  // namespace

IntegerSet IntegerSet::normalized(std::vector<Integer> sorted, std::string provenance) {
  IntegerSet s;
  s.provenance_ = std::move(provenance);
  if (std::all_of(sorted.begin(), sorted.end(), is_small_value)) {
    std::vector<std::int64_t> small;
    small.reserve(sorted.size());
    for (const auto& z : sorted) small.push_back(z.get_si());
    s.store_ = std::move(small);
  } else {
    s.store_ = std::move(sorted);
  }
  return s;
}

IntegerSet IntegerSet::from_unsorted(std::vector<Integer> values, std::string provenance) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return normalized(std::move(values), std::move(provenance));
}

IntegerSet IntegerSet::from_unsorted_small(std::vector<std::int64_t> values, std::string provenance) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return from_sorted_small(std::move(values), std::move(provenance));
}

IntegerSet IntegerSet::from_sorted(std::vector<Integer> values, std::string provenance) {
  require_strictly_increasing(values);
  return normalized(std::move(values), std::move(provenance));
}

IntegerSet IntegerSet::from_sorted_small(std::vector<std::int64_t> values, std::string provenance) {
  require_strictly_increasing(values);
  if (!std::all_of(values.begin(), values.end(), small_value)) {
    std::vector<Integer> big(values.begin(), values.end());
    return normalized(std::move(big), std::move(provenance));
  }
  IntegerSet s;
  s.provenance_ = std::move(provenance);
  s.store_ = std::move(values);
  return s;
}

std::size_t IntegerSet::size() const {
  return std::visit([](const auto& v) { return v.size(); }, store_);
}

Integer IntegerSet::operator[](std::size_t i) const {
  if (is_small()) return Integer(static_cast<long>(small()[i]));
  return big()[i];
}

std::vector<Integer> IntegerSet::elements() const {
  return visit([](auto xs) { return std::vector<Integer>(xs.begin(), xs.end()); });
}

std::size_t IntegerSet::upper_bound(const Integer& x) const {
  if (is_small()) {
    auto xs = small();
    if (x > kSmallLimit) return xs.size();
    if (x < -kSmallLimit) return 0;
    return static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), x.get_si()) - xs.begin());
  }
  auto xs = big();
  return static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin());
}

std::size_t IntegerSet::count_in(const Interval& interval) const {
  return upper_bound(interval.hi()) - upper_bound(interval.lo());
}

IntegerSet IntegerSet::restrict_to(const Interval& interval) const {
  std::size_t first = upper_bound(interval.lo());
  std::size_t last = upper_bound(interval.hi());
  std::string prov = provenance_.empty() ? std::string{} : provenance_ + " restricted to " + to_string(interval);
  return visit([&](auto xs) {
    using T = std::remove_cv_t<typename decltype(xs)::element_type>;
    std::vector<T> out(xs.begin() + first, xs.begin() + last);
    if constexpr (std::is_same_v<T, std::int64_t>) {
      return from_sorted_small(std::move(out), prov);
    } else {
      return normalized(std::move(out), prov);
    }
  });
}

bool IntegerSet::contains(const Integer& x) const {
  std::size_t i = upper_bound(x);
  return i > 0 && (*this)[i - 1] == x;
}

bool IntegerSet::is_subset_of(const IntegerSet& other) const {
  std::size_t j = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    Integer x = (*this)[i];
    j = other.upper_bound(x - 1);
    if (j >= other.size() || other[j] != x) return false;
  }
  return true;
}

Interval IntegerSet::hull() const {
  if (empty()) throw std::invalid_argument("hull of empty set");
  return Interval(front() - 1, back());
}

bool operator==(const IntegerSet& a, const IntegerSet& b) {
  if (a.size() != b.size()) return false;
  if (a.is_small() && b.is_small()) return std::ranges::equal(a.small(), b.small());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

IntegerSet translate(const IntegerSet& e, const Integer& c) {
  std::vector<Integer> out;
  out.reserve(e.size());
  e.visit([&](auto xs) {
    for (const auto& x : xs) out.push_back(Integer(x) + c);
  });
  return IntegerSet::from_sorted(std::move(out), e.provenance());
}

IntegerSet negate(const IntegerSet& e) {
  std::vector<Integer> out;
  out.reserve(e.size());
  e.visit([&](auto xs) {
    for (auto it = xs.rbegin(); it != xs.rend(); ++it) out.push_back(-Integer(*it));
  });
  return IntegerSet::from_sorted(std::move(out), e.provenance());
}

IntegerSet set_union(const IntegerSet& a, const IntegerSet& b) {
  auto xs = a.elements();
  auto ys = b.elements();
  std::vector<Integer> out;
  out.reserve(xs.size() + ys.size());
  std::set_union(xs.begin(), xs.end(), ys.begin(), ys.end(), std::back_inserter(out));
  return IntegerSet::from_sorted(std::move(out));
}

}  // namespace zdim
