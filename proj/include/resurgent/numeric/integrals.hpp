#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "resurgent/error.hpp"
#include "resurgent/numeric/quadrature.hpp"
#include "resurgent/numeric/value.hpp"

namespace resurgent::numeric {

// 2 pi int_0^inf r^(2k+1) exp(-r^2/t) dr, the polar form of the Gaussian
// moment of |z|^(2k), divided by its closed form pi k! t^(k+1).
inline NumericValue gaussian_moment_check(int k, double t, QuadratureOptions opts = {}) {
  if (k < 0) fail(ErrorKind::InvalidArgument, "moment order must be non-negative");
  if (!(t > 0)) fail(ErrorKind::InvalidArgument, "t must be positive");
  auto f = [&](double r) { return 2 * std::numbers::pi * std::pow(r, 2 * k + 1) * std::exp(-r * r / t); };
  // Integrate out to well past the peak at r = sqrt(k t), then along a ray.
  const double head_end = std::sqrt(t) * (std::sqrt(static_cast<double>(k) + 1) + 8);
  const auto head = integrate<double>(f, 0.0, head_end, opts);
  auto fz = [&](std::complex<double> z) { return std::complex<double>(f(z.real())); };
  const auto tail = integrate_ray<double>(fz, head_end, 1.0, head_end / t, opts, 1e-18, head.value);
  const double closed = std::numbers::pi * std::tgamma(k + 1.0) * std::pow(t, k + 1);
  return {(head.value + tail.value) / closed, (head.err + tail.err) / closed};
}

// int over the simplex s_1 + ... + s_n = 1, s_j >= 0, of s^alpha, in the flat
// measure ds_2 ... ds_n (s_1 eliminated). Iterated 1-D adaptive quadrature.
inline NumericValue dirichlet_integral(const std::vector<unsigned>& alpha, QuadratureOptions opts = {}) {
  const std::size_t n = alpha.size();
  if (n < 2) fail(ErrorKind::InvalidArgument, "simplex integral needs n >= 2");
  double err = 0;
  // level j integrates s_j over [0, rem]; level 1 closes with s_1 = rem.
  std::function<double(std::size_t, double)> level = [&](std::size_t j, double rem) -> double {
    if (j == 0) return std::pow(rem, alpha[0]);
    auto g = [&](double s) { return std::pow(s, alpha[j]) * level(j - 1, rem - s); };
    const auto v = integrate<double>(g, 0.0, rem, opts);
    if (j == n - 1) err += v.err;
    return v.value.real();
  };
  return {level(n - 1, 1.0), err};
}

// prod alpha_j! / (|alpha| + n - 1)!: the flat-measure value of the simplex
// moment. Dividing by the alpha = 0 value 1/(n-1)! gives the moment against
// the normalized measure.
inline double dirichlet_closed_form(const std::vector<unsigned>& alpha) {
  double log_num = 0;
  unsigned total = 0;
  for (unsigned a : alpha) {
    log_num += std::lgamma(a + 1.0);
    total += a;
  }
  return std::exp(log_num - std::lgamma(static_cast<double>(total + alpha.size())));
}

// Quadrature value over closed form.
inline NumericValue dirichlet_integral_check(const std::vector<unsigned>& alpha, QuadratureOptions opts = {}) {
  const auto v = dirichlet_integral(alpha, opts);
  const double closed = dirichlet_closed_form(alpha);
  return {v.value / closed, v.err / closed};
}

}  // namespace resurgent::numeric
