#pragma once

// Exact comparisons of the product kernels against the closed forms in oracles.hpp.

#include <cmath>
#include <vector>

#include "resurgent/borel.hpp"
#include "resurgent/oracles.hpp"

namespace resurgent {

struct IdentityReport {
  bool equal = false;
  double max_deviation = 0;               // max |lhs - rhs| over coefficients, as double
  std::vector<MultiIndex> mismatches;     // first few differing indices
  std::size_t mismatch_count = 0;
};

inline IdentityReport compare_series(const TruncatedSeries& lhs, const TruncatedSeries& rhs,
                                     std::size_t keep = 8) {
  IdentityReport r;
  const auto diff = sub(lhs, rhs);
  for (const auto& [idx, c] : diff.terms()) {
    r.max_deviation = std::max(r.max_deviation, std::abs(to_double(c)));
    if (r.mismatches.size() < keep) r.mismatches.push_back(idx);
    ++r.mismatch_count;
  }
  r.equal = lhs.kind() == rhs.kind() && lhs.caps() == rhs.caps() && diff.is_zero();
  return r;
}

// (1+p)^a * (1+q)^b against (1+p)^a (1+q)^b F(-a, -b, 1; xi/((1+p)(1+q))) on caps (K_t, K_qp).
inline IdentityReport hypergeometric_identity_check(const BigRational& a, const BigRational& b, int K_t, int K_qp) {
  const Caps caps{K_t, K_qp};
  const int in_qp = K_qp + 2 * K_t;
  const auto f = oracles::binomial_power_series(a, p_var(), in_qp, SeriesKind::Xi, K_t);
  const auto g = oracles::binomial_power_series(b, q_var(), in_qp, SeriesKind::Xi, K_t);
  const auto lhs = dual_star(f, g);

  auto factor = [&](const BigRational& e, Variable v) {
    return oracles::binomial_power_series(e, v, K_qp, SeriesKind::Xi, K_t);
  };
  const auto prefactor = mul(factor(a, p_var()), factor(b, q_var()));
  const auto w = mul(factor(-1, p_var()), factor(-1, q_var()));  // 1/((1+p)(1+q))
  TruncatedSeries hyper = zero_series(SeriesKind::Xi, 1, caps);
  TruncatedSeries w_pow = constant_series(1, SeriesKind::Xi, 1, caps);
  for (int k = 0; k <= K_t; ++k) {
    const BigRational h = generalized_binomial(a, static_cast<unsigned long>(k)) *
                          generalized_binomial(b, static_cast<unsigned long>(k));
    hyper = add(hyper, shift_dual(scale(w_pow, h), static_cast<Exponent>(k)));
    w_pow = mul(w_pow, w);
  }
  const auto rhs = mul(prefactor, hyper);
  return compare_series(lhs, truncate(rhs, lhs.caps()));
}

}  // namespace resurgent
