#pragma once

#include <complex>
#include <concepts>
#include <span>
#include <vector>

namespace resurgent {

// Complex value with an error *estimate* (not a bound).
template <std::floating_point Real>
struct BasicNumericValue {
  std::complex<Real> value{};
  Real err = 0;
};

using NumericValue = BasicNumericValue<double>;

namespace numeric {

// Pairwise summation in index order: the reduction tree depends only on the
// length, so results do not depend on how the terms were produced.
template <typename T>
T pairwise_sum(std::span<const T> xs) {
  if (xs.empty()) return T{};
  if (xs.size() <= 8) {
    T s{};
    for (const auto& x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

template <typename T>
T pairwise_sum(const std::vector<T>& xs) {
  return pairwise_sum(std::span<const T>(xs));
}

}  // namespace numeric
}  // namespace resurgent
