#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <vector>

namespace resurgent {

using Exponent = std::uint32_t;
using ExponentVector = std::vector<Exponent>;

// Exponent triple of t^k q^alpha p^beta (or xi^k q^alpha p^beta).
struct MultiIndex {
  Exponent k = 0;
  ExponentVector alpha;
  ExponentVector beta;

  MultiIndex() = default;
  MultiIndex(Exponent k_, ExponentVector alpha_, ExponentVector beta_)
      : k(k_), alpha(std::move(alpha_)), beta(std::move(beta_)) {}

  std::size_t ndof() const noexcept { return alpha.size(); }
  bool well_formed() const noexcept { return !alpha.empty() && alpha.size() == beta.size(); }

  std::uint64_t deg_qp() const noexcept {
    return std::accumulate(alpha.begin(), alpha.end(), std::uint64_t{0}) +
           std::accumulate(beta.begin(), beta.end(), std::uint64_t{0});
  }

  bool qp_free() const noexcept { return deg_qp() == 0; }

  // Canonical order: (k, deg_qp, alpha lexicographic, beta lexicographic).
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
    if (auto c = a.k <=> b.k; c != 0) return c;
    if (auto c = a.deg_qp() <=> b.deg_qp(); c != 0) return c;
    if (auto c = a.alpha <=> b.alpha; c != 0) return c;
    return a.beta <=> b.beta;
  }
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

// The index of the constant monomial for n degrees of freedom.
inline MultiIndex unit_index(std::size_t ndof) {
  return MultiIndex{0, ExponentVector(ndof, 0), ExponentVector(ndof, 0)};
}

}  // namespace resurgent
