#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <vector>

#include "resurgent/heisenberg.hpp"
#include "resurgent/series.hpp"

namespace resurgent {

namespace detail {

inline TruncatedSeries rescale_dual(const TruncatedSeries& f, SeriesKind to, bool divide) {
  const FactorialTable fact(static_cast<std::size_t>(f.t_cap()));
  TermMap acc = f.terms();
  for (auto& [idx, c] : acc) {
    if (divide)
      c /= fact[idx.k];
    else
      c *= fact[idx.k];
  }
  return build_series(to, f.ndof(), f.caps(), std::move(acc));
}

inline void require_qp_free(const TruncatedSeries& f, const char* op) {
  for (const auto& [idx, c] : f.terms())
    if (!idx.qp_free())
      fail(ErrorKind::KindMismatch, std::string(op) + " is defined for one-variable xi-series only");
}

}  // namespace detail

// Formal Borel transform: t^k -> xi^k / k!.
inline TruncatedSeries borel_transform(const TruncatedSeries& f) {
  detail::require_kind(f, SeriesKind::T, "borel_transform");
  return detail::rescale_dual(f, SeriesKind::Xi, true);
}

inline TruncatedSeries inverse_borel(const TruncatedSeries& g) {
  detail::require_kind(g, SeriesKind::Xi, "inverse_borel");
  return detail::rescale_dual(g, SeriesKind::T, false);
}

// Dual product straight from the coefficient law
//   gamma_l = sum_{n+m+|kappa|=l} n! m! / (n+m+|kappa|)! (1/kappa!) d_p^kappa phi_n d_q^kappa psi_m,
// assembled from slices, formal derivatives and the commutative product.
// Deliberately shares no code with star_product.
inline TruncatedSeries dual_star_direct(const TruncatedSeries& f, const TruncatedSeries& g) {
  detail::require_kind(f, SeriesKind::Xi, "dual_star_direct");
  detail::require_kind(g, SeriesKind::Xi, "dual_star_direct");
  detail::require_same_space(f, g);
  const Caps out = detail::star_output_caps(f, g);
  const std::size_t ndof = f.ndof();
  const FactorialTable fact(static_cast<std::size_t>(3 * out.t_cap + 1));

  // All kappa with |kappa| <= t_cap, in a fixed order.
  std::vector<ExponentVector> kappas;
  detail::for_each_kappa(ExponentVector(ndof, static_cast<Exponent>(out.t_cap)), 0,
                         static_cast<std::uint64_t>(out.t_cap),
                         [&](const ExponentVector& kp, std::uint64_t) { kappas.push_back(kp); });

  auto derivatives = [&](const TruncatedSeries& slice, Axis axis, int max_order) {
    // derivs[i] = d^kappas[i] slice, truncated to the output caps.
    std::map<ExponentVector, TruncatedSeries> derivs;
    for (const auto& kp : kappas) {
      std::uint64_t order = 0;
      for (auto e : kp) order += e;
      if (order > static_cast<std::uint64_t>(max_order)) continue;
      TruncatedSeries d = slice;
      for (std::size_t j = 0; j < ndof; ++j)
        for (Exponent e = 0; e < kp[j]; ++e) d = partial_derivative(d, Variable{axis, j});
      derivs.emplace(kp, truncate(d, out));
    }
    return derivs;
  };

  TermMap acc;
  for (int n = 0; n <= out.t_cap; ++n) {
    const auto phi = dual_slice(f, static_cast<Exponent>(n));
    if (phi.is_zero()) continue;
    const auto dphi = derivatives(phi, Axis::P, out.t_cap - n);
    for (int m = 0; n + m <= out.t_cap; ++m) {
      const auto psi = dual_slice(g, static_cast<Exponent>(m));
      if (psi.is_zero()) continue;
      const auto dpsi = derivatives(psi, Axis::Q, out.t_cap - n - m);
      for (const auto& [kp, dp] : dpsi) {
        std::uint64_t k = 0;
        BigInteger kappa_fact = 1;
        for (auto e : kp) {
          k += e;
          kappa_fact *= fact[e];
        }
        if (static_cast<int>(n + m + k) > out.t_cap) continue;
        const BigRational weight =
            BigRational(fact[n] * fact[m]) / BigRational(fact[n + m + k] * kappa_fact);
        const auto prod = mul(dphi.at(kp), dp);
        for (const auto& [idx, c] : prod.terms())
          acc[MultiIndex{static_cast<Exponent>(n + m + k), idx.alpha, idx.beta}] += weight * c;
      }
    }
  }
  return detail::build_series(SeriesKind::Xi, ndof, out, std::move(acc));
}

// f * g := beta(beta^{-1} f star beta^{-1} g).
inline TruncatedSeries dual_star_conjugated(const TruncatedSeries& f, const TruncatedSeries& g) {
  detail::require_kind(f, SeriesKind::Xi, "dual_star_conjugated");
  detail::require_kind(g, SeriesKind::Xi, "dual_star_conjugated");
  return borel_transform(star_product(inverse_borel(f), inverse_borel(g)));
}

inline TruncatedSeries dual_star(const TruncatedSeries& f, const TruncatedSeries& g) {
  return dual_star_direct(f, g);
}

// Commutative in (q, p), Hurwitz-weighted in xi: xi^n . xi^m = n! m!/(n+m)! xi^(n+m).
inline TruncatedSeries bullet_product(const TruncatedSeries& f, const TruncatedSeries& g) {
  detail::require_same_space(f, g);
  const Caps caps = min_caps(f.caps(), g.caps());
  const FactorialTable fact(static_cast<std::size_t>(caps.t_cap));
  TermMap acc;
  for (const auto& [fi, fc] : f.terms()) {
    for (const auto& [gi, gc] : g.terms()) {
      if (fi.k + gi.k > static_cast<Exponent>(caps.t_cap)) continue;
      if (fi.deg_qp() + gi.deg_qp() > static_cast<std::uint64_t>(caps.qp_cap)) continue;
      const BigRational w = BigRational(fact[fi.k] * fact[gi.k]) / BigRational(fact[fi.k + gi.k]);
      acc[detail::product_index(fi, gi)] += w * fc * gc;
    }
  }
  return detail::build_series(f.kind(), f.ndof(), caps, std::move(acc));
}

// Additive convolution int_0^xi f(s) g(xi - s) ds on coefficients:
//   c_k = sum_{n+m+1=k} n! m!/(n+m+1)! a_n b_m; qp coefficients multiply commutatively.
inline TruncatedSeries hurwitz_convolution(const TruncatedSeries& f, const TruncatedSeries& g) {
  detail::require_kind(f, SeriesKind::Xi, "hurwitz_convolution");
  detail::require_kind(g, SeriesKind::Xi, "hurwitz_convolution");
  detail::require_same_space(f, g);
  const Caps in = min_caps(f.caps(), g.caps());
  const Caps caps{in.t_cap + 1, in.qp_cap};
  const FactorialTable fact(static_cast<std::size_t>(caps.t_cap));
  TermMap acc;
  for (const auto& [fi, fc] : f.terms()) {
    for (const auto& [gi, gc] : g.terms()) {
      if (fi.k + gi.k > static_cast<Exponent>(in.t_cap)) continue;
      if (fi.deg_qp() + gi.deg_qp() > static_cast<std::uint64_t>(caps.qp_cap)) continue;
      auto idx = detail::product_index(fi, gi);
      idx.k += 1;
      const BigRational w = BigRational(fact[fi.k] * fact[gi.k]) / BigRational(fact[idx.k]);
      acc[std::move(idx)] += w * fc * gc;
    }
  }
  return detail::build_series(SeriesKind::Xi, f.ndof(), caps, std::move(acc));
}

// Coefficientwise product sum a_n b_n xi^n of one-variable series.
inline TruncatedSeries hadamard_product(const TruncatedSeries& f, const TruncatedSeries& g) {
  detail::require_same_space(f, g);
  detail::require_qp_free(f, "hadamard_product");
  detail::require_qp_free(g, "hadamard_product");
  TermMap acc;
  for (const auto& [idx, c] : f.terms()) {
    auto it = g.terms().find(idx);
    if (it != g.terms().end()) acc.emplace(idx, c * it->second);
  }
  return detail::build_series(f.kind(), f.ndof(), min_caps(f.caps(), g.caps()), std::move(acc));
}

// d/d(dual variable); the top order is lost, so t_cap drops by one.
inline TruncatedSeries dual_derivative(const TruncatedSeries& f) {
  if (f.t_cap() == 0) fail(ErrorKind::CapsExhausted, "derivative of a t_cap-0 series is unknown");
  TermMap acc;
  for (const auto& [idx, c] : f.terms())
    if (idx.k > 0) acc.emplace(MultiIndex{idx.k - 1, idx.alpha, idx.beta}, c * static_cast<unsigned long>(idx.k));
  return detail::build_series(f.kind(), f.ndof(), Caps{f.t_cap() - 1, f.qp_cap()}, std::move(acc));
}

// Radius of convergence in xi of beta(f) at a numeric (q, p), by Domb-Sykes
// extrapolation: |c_k / c_{k+1}| fitted linearly against 1/(k+1) over the
// upper half of the available ratios. Returns +infinity when the ratios grow
// without bound (entire Borel transform).
inline double gevrey_radius_estimate(const TruncatedSeries& f, const std::vector<std::complex<double>>& q,
                                     const std::vector<std::complex<double>>& p) {
  detail::require_kind(f, SeriesKind::T, "gevrey_radius_estimate");
  const auto coeffs = dual_coefficients_at(borel_transform(f), q, p);
  std::size_t nonzero = 0;
  for (const auto& c : coeffs)
    if (std::abs(c) > 0) ++nonzero;
  if (nonzero < 8)
    fail(ErrorKind::InsufficientData,
         "need at least 8 nonzero Borel coefficients, have " + std::to_string(nonzero));

  std::vector<double> xs, rs;
  for (std::size_t k = 0; k + 1 < coeffs.size(); ++k) {
    if (std::abs(coeffs[k]) == 0 || std::abs(coeffs[k + 1]) == 0) continue;
    xs.push_back(1.0 / static_cast<double>(k + 1));
    rs.push_back(std::abs(coeffs[k]) / std::abs(coeffs[k + 1]));
  }
  if (rs.size() < 4) fail(ErrorKind::InsufficientData, "too few consecutive nonzero coefficients");
  const std::size_t start = rs.size() / 2;
  const std::size_t n = rs.size() - start;

  bool increasing = true;
  for (std::size_t i = start + 1; i < rs.size(); ++i) increasing = increasing && rs[i] > rs[i - 1];
  if (increasing && rs.back() > 1.5 * rs[start]) return std::numeric_limits<double>::infinity();

  double sx = 0, sr = 0, sxx = 0, sxr = 0;
  for (std::size_t i = start; i < rs.size(); ++i) {
    sx += xs[i];
    sr += rs[i];
    sxx += xs[i] * xs[i];
    sxr += xs[i] * rs[i];
  }
  const double denom = static_cast<double>(n) * sxx - sx * sx;
  if (std::abs(denom) < 1e-300) return rs.back();
  const double slope = (static_cast<double>(n) * sxr - sx * sr) / denom;
  const double intercept = (sr - slope * sx) / static_cast<double>(n);
  return intercept > 0 ? intercept : rs.back();
}

inline double gevrey_radius_estimate(const TruncatedSeries& f, std::complex<double> q, std::complex<double> p) {
  return gevrey_radius_estimate(f, std::vector{q}, std::vector{p});
}

}  // namespace resurgent
