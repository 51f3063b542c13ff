#pragma once

// Closed-form series used as ground truth. Everything here is built from
// coefficient formulas and the commutative product only; no star kernels.

#include <vector>

#include "resurgent/series.hpp"

namespace resurgent::oracles {

// E(t) = sum_{n <= K} n! t^n.
inline TruncatedSeries euler_series(int K, int qp_cap = 0, std::size_t ndof = 1) {
  std::vector<Term> terms;
  for (int n = 0; n <= K; ++n) {
    MultiIndex idx = unit_index(ndof);
    idx.k = static_cast<Exponent>(n);
    terms.emplace_back(std::move(idx), BigRational(factorial(static_cast<unsigned long>(n))));
  }
  return make_series(terms, SeriesKind::T, ndof, Caps{K, qp_cap});
}

// 1/((1-p)(1-q) - xi) = sum_k xi^k (1-q)^{-k-1} (1-p)^{-k-1}; the
// coefficient of xi^k q^a p^b is C(a+k, k) C(b+k, k).
inline TruncatedSeries dual_pole_series(int K_t, int K_qp) {
  std::vector<Term> terms;
  for (int k = 0; k <= K_t; ++k)
    for (int a = 0; a <= K_qp; ++a)
      for (int b = 0; a + b <= K_qp; ++b)
        terms.emplace_back(MultiIndex{static_cast<Exponent>(k), {static_cast<Exponent>(a)}, {static_cast<Exponent>(b)}},
                           BigRational(binomial(a + k, k) * binomial(b + k, k)));
  return make_series(terms, SeriesKind::Xi, 1, Caps{K_t, K_qp});
}

// sum_{i <= qp_cap} C(i+k, k) u^i = (1-u)^{-k-1} for a linear form u in (q, p).
inline TruncatedSeries inverse_power_of_linear(const TruncatedSeries& u, unsigned k) {
  TruncatedSeries acc = zero_series(u.kind(), u.ndof(), u.caps());
  TruncatedSeries power = constant_series(1, u.kind(), u.ndof(), u.caps());
  for (int i = 0; i <= u.qp_cap(); ++i) {
    acc = add(acc, scale(power, BigRational(binomial(i + k, k))));
    power = mul(power, u);
  }
  return acc;
}

// (1/Delta) E(alpha delta t / Delta) with Delta = (1 - (alpha p + beta q))(1 - (gamma p + delta q)):
// sum_k k! (alpha delta)^k t^k (1-u)^{-k-1} (1-v)^{-k-1}.
inline TruncatedSeries general_pole_star_oracle(const BigRational& alpha, const BigRational& beta,
                                                const BigRational& gamma, const BigRational& delta, int K_t,
                                                int K_qp) {
  const Caps caps{K_t, K_qp};
  auto linear = [&](const BigRational& cp, const BigRational& cq) {
    return make_series({{MultiIndex{0, {0}, {1}}, cp}, {MultiIndex{0, {1}, {0}}, cq}}, SeriesKind::T, 1, caps);
  };
  const auto u = linear(alpha, beta);
  const auto v = linear(gamma, delta);
  TruncatedSeries acc = zero_series(SeriesKind::T, 1, caps);
  BigRational ad_pow = 1;
  for (int k = 0; k <= K_t; ++k) {
    const auto term = mul(inverse_power_of_linear(u, static_cast<unsigned>(k)),
                          inverse_power_of_linear(v, static_cast<unsigned>(k)));
    acc = add(acc, shift_dual(scale(term, ad_pow * BigRational(factorial(static_cast<unsigned long>(k)))),
                              static_cast<Exponent>(k)));
    ad_pow *= alpha * delta;
  }
  return acc;
}

// F(-a, -b, 1; xi) = sum_k binom(a, k) binom(b, k) xi^k, as a one-variable xi-series.
inline TruncatedSeries hypergeometric_series(const BigRational& a, const BigRational& b, int K) {
  std::vector<Term> terms;
  for (int k = 0; k <= K; ++k)
    terms.emplace_back(MultiIndex{static_cast<Exponent>(k), {0}, {0}},
                       generalized_binomial(a, static_cast<unsigned long>(k)) *
                           generalized_binomial(b, static_cast<unsigned long>(k)));
  return make_series(terms, SeriesKind::Xi, 1, Caps{K, 0});
}

// (1 + var)^a = sum_k binom(a, k) var^k up to the qp cap.
inline TruncatedSeries binomial_power_series(const BigRational& a, Variable var, int K_qp,
                                             SeriesKind kind = SeriesKind::Xi, int t_cap = 0, std::size_t ndof = 1) {
  if (var.index >= ndof) fail(ErrorKind::UnknownVariable, "variable index exceeds ndof");
  std::vector<Term> terms;
  for (int k = 0; k <= K_qp; ++k) {
    MultiIndex idx = unit_index(ndof);
    (var.axis == Axis::Q ? idx.alpha : idx.beta)[var.index] = static_cast<Exponent>(k);
    terms.emplace_back(std::move(idx), generalized_binomial(a, static_cast<unsigned long>(k)));
  }
  return make_series(terms, kind, ndof, Caps{t_cap, K_qp});
}

// (2/pi) K(sqrt(xi)) = sum_n ((2n-1)!!/(2n)!!)^2 xi^n.
inline TruncatedSeries elliptic_k_series(int K) {
  std::vector<Term> terms;
  for (int n = 0; n <= K; ++n) {
    const auto un = static_cast<unsigned long>(n);
    BigRational c(binomial(2 * un, un), BigInteger(1) << (2 * un));
    c.canonicalize();
    terms.emplace_back(MultiIndex{static_cast<Exponent>(n), {0}, {0}}, c * c);
  }
  return make_series(terms, SeriesKind::Xi, 1, Caps{K, 0});
}

}  // namespace resurgent::oracles
