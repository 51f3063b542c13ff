#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <concepts>
#include <limits>
#include <numbers>
#include <vector>

#include "resurgent/error.hpp"
#include "resurgent/numeric/value.hpp"

namespace resurgent::numeric {

inline constexpr int kGaussOrder = 32;

template <std::floating_point Real>
struct GaussLegendreRule {
  std::array<Real, kGaussOrder> nodes{};    // on [-1, 1], ascending
  std::array<Real, kGaussOrder> weights{};
};

// Nodes are roots of P_32, found by Newton iteration from the Chebyshev guess.
template <std::floating_point Real>
const GaussLegendreRule<Real>& gauss_legendre() {
  static const GaussLegendreRule<Real> rule = [] {
    GaussLegendreRule<Real> r;
    constexpr int n = kGaussOrder;
    const Real pi = std::numbers::pi_v<Real>;
    for (int i = 0; i < n / 2; ++i) {
      Real x = std::cos(pi * (static_cast<Real>(i) + Real(0.75)) / (static_cast<Real>(n) + Real(0.5)));
      Real dp = 0;
      for (int iter = 0; iter < 100; ++iter) {
        Real p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const Real pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = pk;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        const Real dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) <= 4 * std::numeric_limits<Real>::epsilon()) break;
      }
      {
        Real p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const Real pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = pk;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
      }
      const Real w = 2 / ((1 - x * x) * dp * dp);
      r.nodes[n - 1 - i] = x;
      r.nodes[i] = -x;
      r.weights[n - 1 - i] = w;
      r.weights[i] = w;
    }
    return r;
  }();
  return rule;
}

struct QuadratureOptions {
  double rel_tol = 1e-12;
  int max_panels = 4096;
};

namespace detail {

template <std::floating_point Real, typename F>
std::complex<Real> gauss_panel(const F& f, Real lo, Real hi) {
  const auto& rule = gauss_legendre<Real>();
  const Real half = (hi - lo) / 2, mid = (hi + lo) / 2;
  std::array<std::complex<Real>, kGaussOrder> terms;
  for (int i = 0; i < kGaussOrder; ++i)
    terms[i] = rule.weights[i] * std::complex<Real>(f(mid + half * rule.nodes[i]));
  return half * pairwise_sum(std::span<const std::complex<Real>>(terms));
}

}  // namespace detail

// Adaptive composite Gauss-Legendre on [lo, hi] for a real- or complex-valued
// integrand. A panel is accepted once its two halves change the panel sum by
// less than rel_tol times the running scale, prorated by panel length.
// err is the sum of the last refinement deltas.
template <std::floating_point Real, typename F>
BasicNumericValue<Real> integrate(const F& f, Real lo, Real hi, QuadratureOptions opts = {}) {
  struct Panel {
    Real lo, hi;
    std::complex<Real> value;
  };
  constexpr int kInitial = 4;
  const Real width = hi - lo;
  if (width == 0) return {};
  std::vector<Panel> stack;
  std::complex<Real> coarse_total = 0;
  Real abs_scale = 0;
  for (int i = kInitial; i-- > 0;) {
    const Real a = lo + width * i / kInitial, b = lo + width * (i + 1) / kInitial;
    const auto v = detail::gauss_panel<Real>(f, a, b);
    coarse_total += v;
    abs_scale += std::abs(v);
    stack.push_back({a, b, v});
  }
  const Real scale = std::max(std::abs(coarse_total), abs_scale * Real(1e-3));
  int panels = kInitial;
  std::vector<std::complex<Real>> accepted;
  Real err = 0;
  while (!stack.empty()) {
    const Panel p = stack.back();
    stack.pop_back();
    const Real mid = (p.lo + p.hi) / 2;
    const auto left = detail::gauss_panel<Real>(f, p.lo, mid);
    const auto right = detail::gauss_panel<Real>(f, mid, p.hi);
    const auto fine = left + right;
    const Real delta = std::abs(fine - p.value);
    const Real share = std::abs((p.hi - p.lo) / width);
    const Real tol = static_cast<Real>(opts.rel_tol) * scale * share;
    if (delta <= tol || delta <= std::numeric_limits<Real>::min() ||
        std::abs(p.hi - p.lo) <= std::abs(width) * std::numeric_limits<Real>::epsilon() * 64) {
      accepted.push_back(fine);
      err += delta;
      continue;
    }
    ++panels;
    if (panels > opts.max_panels)
      fail(ErrorKind::BudgetExceeded, "adaptive quadrature exceeded " + std::to_string(opts.max_panels) + " panels");
    stack.push_back({mid, p.hi, right});
    stack.push_back({p.lo, mid, left});
  }
  return {pairwise_sum(accepted), err};
}

// Straight segment a -> b in the complex plane: int f(z) dz.
template <std::floating_point Real, typename F>
BasicNumericValue<Real> integrate_segment(const F& f, std::complex<Real> a, std::complex<Real> b,
                                          QuadratureOptions opts = {}) {
  const std::complex<Real> d = b - a;
  auto g = [&](Real s) { return f(a + d * s) * d; };
  return integrate<Real>(g, Real(0), Real(1), opts);
}

// Ray a + dir * s, s >= 0, for an integrand decaying like exp(-decay * s).
// Segments of length 8/decay are added until one contributes less than
// stop_rel of the accumulated magnitude.
template <std::floating_point Real, typename F>
BasicNumericValue<Real> integrate_ray(const F& f, std::complex<Real> a, std::complex<Real> dir, Real decay,
                                      QuadratureOptions opts = {}, Real stop_rel = Real(1e-18),
                                      std::complex<Real> scale_hint = 0) {
  if (!(decay > 0)) fail(ErrorKind::NonconvergentTail, "integrand does not decay along the ray");
  const Real len = 8 / decay;
  BasicNumericValue<Real> acc;
  constexpr int kMaxSegments = 512;
  int quiet = 0;
  for (int seg = 0; seg < kMaxSegments; ++seg) {
    const auto z0 = a + dir * (len * seg);
    const auto z1 = a + dir * (len * (seg + 1));
    const auto part = integrate_segment<Real>(f, z0, z1, opts);
    acc.value += part.value;
    acc.err += part.err;
    const Real ref = std::max(std::abs(acc.value), std::abs(scale_hint));
    if (std::abs(part.value) <= stop_rel * ref) {
      // Two quiet segments in a row guard against a zero crossing.
      if (++quiet == 2) return acc;
    } else {
      quiet = 0;
    }
  }
  fail(ErrorKind::BudgetExceeded, "tail integral did not settle within " + std::to_string(kMaxSegments) +
                                      " segments");
}

}  // namespace resurgent::numeric
