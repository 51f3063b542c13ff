#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "resurgent/borel.hpp"
#include "resurgent/error.hpp"
#include "resurgent/numeric/quadrature.hpp"
#include "resurgent/numeric/value.hpp"
#include "resurgent/series.hpp"

namespace resurgent::numeric {

// Polyline in the xi-plane, optionally continued by a ray to infinity.
struct ContourPath {
  std::vector<std::complex<double>> nodes;
  std::optional<std::complex<double>> tail;  // unit direction

  void validate() const {
    if (nodes.size() < 2 && !(nodes.size() == 1 && tail))
      fail(ErrorKind::InvalidArgument, "contour needs at least two nodes, or one node and a tail");
    for (std::size_t i = 1; i < nodes.size(); ++i)
      if (nodes[i] == nodes[i - 1]) fail(ErrorKind::InvalidArgument, "consecutive contour nodes coincide");
    if (tail && std::abs(std::abs(*tail) - 1.0) > 1e-12)
      fail(ErrorKind::InvalidArgument, "tail direction must be a unit complex number");
  }
};

inline ContourPath segment_path(std::complex<double> a, std::complex<double> b) { return {{a, b}, std::nullopt}; }

inline ContourPath ray_path(std::complex<double> start = 0.0, std::complex<double> dir = 1.0) {
  return {{start}, dir};
}

// (1/t) * int_path g(xi) exp(-xi/t) dxi.
// The tail needs Re(dir/t) > 0 so that exp(-xi/t) decays along it.
template <std::floating_point Real = double, typename G>
BasicNumericValue<Real> laplace_sum(const G& g, const ContourPath& path, std::complex<Real> t,
                                    QuadratureOptions opts = {}) {
  path.validate();
  if (t == std::complex<Real>(0)) fail(ErrorKind::InvalidArgument, "t must be nonzero");
  const std::complex<Real> inv_t = Real(1) / t;
  auto integrand = [&](std::complex<Real> xi) { return std::complex<Real>(g(xi)) * std::exp(-xi * inv_t); };

  BasicNumericValue<Real> acc;
  for (std::size_t i = 1; i < path.nodes.size(); ++i) {
    const auto part = integrate_segment<Real>(integrand, std::complex<Real>(path.nodes[i - 1]),
                                              std::complex<Real>(path.nodes[i]), opts);
    acc.value += part.value;
    acc.err += part.err;
  }
  if (path.tail) {
    const std::complex<Real> dir(*path.tail);
    const Real decay = std::real(dir * inv_t);
    if (!(decay > 0))
      fail(ErrorKind::NonconvergentTail, "tail direction does not satisfy Re(dir/t) > 0");
    const auto part =
        integrate_ray<Real>(integrand, std::complex<Real>(path.nodes.back()), dir, decay, opts, Real(1e-18), acc.value);
    acc.value += part.value;
    acc.err += part.err;
  }
  acc.value *= inv_t;
  acc.err *= std::abs(inv_t);
  return acc;
}

// Laplace sum of a one-variable xi-series, or of a slice at numeric (q, p).
inline NumericValue laplace_sum_series(const TruncatedSeries& g, const ContourPath& path, std::complex<double> t,
                                       std::vector<std::complex<double>> q = {},
                                       std::vector<std::complex<double>> p = {}, QuadratureOptions opts = {}) {
  resurgent::detail::require_kind(g, SeriesKind::Xi, "laplace_sum");
  if (q.empty() && p.empty()) {
    q.assign(g.ndof(), 0.0);
    p.assign(g.ndof(), 0.0);
  }
  const auto c = dual_coefficients_at(g, q, p);
  auto eval = [&](std::complex<double> xi) {
    std::complex<double> acc = 0;
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * xi + c[k];
    return acc;
  };
  return laplace_sum<double>(eval, path, t, opts);
}

// Detour contours for the Euler functions. Both run along the real axis to
// 1 - 2 delta, pass the pole at xi = 1 through 1 -+ i delta, rejoin the axis at
// 1 + 2 delta, continue to R and then along the positive real ray.
// gamma_minus passes above the pole and gamma_plus below, which makes the
// difference E_- - E_+ equal to +2 pi i exp(-1/t) / t.
inline ContourPath euler_contour(bool minus, double delta = 0.1, double R = 4.0) {
  if (!(delta > 0 && delta < 0.5)) fail(ErrorKind::InvalidArgument, "detour height must lie in (0, 1/2)");
  if (!(R > 2)) fail(ErrorKind::InvalidArgument, "R must exceed 2");
  const std::complex<double> bump(1.0, minus ? delta : -delta);
  return {{0.0, 1.0 - 2 * delta, bump, 1.0 + 2 * delta, R}, std::complex<double>(1.0)};
}

template <std::floating_point Real = double>
std::complex<Real> euler_borel_germ(std::complex<Real> xi) {
  return Real(1) / (Real(1) - xi);
}

template <std::floating_point Real = double>
std::pair<BasicNumericValue<Real>, BasicNumericValue<Real>> euler_plus_minus(std::complex<Real> t, double delta = 0.1,
                                                                             double R = 4.0,
                                                                             QuadratureOptions opts = {}) {
  if (!(std::real(t) > 0)) fail(ErrorKind::InvalidArgument, "Euler functions need Re t > 0");
  auto g = [](std::complex<Real> xi) { return euler_borel_germ<Real>(xi); };
  const auto plus = laplace_sum<Real>(g, euler_contour(false, delta, R), t, opts);
  const auto minus = laplace_sum<Real>(g, euler_contour(true, delta, R), t, opts);
  return {plus, minus};
}

template <std::floating_point Real = double>
struct BasicStokesReport {
  BasicNumericValue<Real> difference;  // E_- - E_+
  std::complex<Real> closed_form;      // 2 pi i exp(-1/t) / t
  Real relative_deviation = 0;
};

using StokesReport = BasicStokesReport<double>;

template <std::floating_point Real = double>
std::complex<Real> stokes_closed_form(std::complex<Real> t) {
  const std::complex<Real> two_pi_i(0, 2 * std::numbers::pi_v<Real>);
  return two_pi_i * std::exp(-Real(1) / t) / t;
}

template <std::floating_point Real = double>
BasicStokesReport<Real> stokes_difference(std::complex<Real> t, double delta = 0.1, double R = 4.0,
                                          QuadratureOptions opts = {}) {
  const auto [plus, minus] = euler_plus_minus<Real>(t, delta, R, opts);
  BasicStokesReport<Real> r;
  r.difference.value = minus.value - plus.value;
  r.difference.err = minus.err + plus.err;
  r.closed_form = stokes_closed_form<Real>(t);
  r.relative_deviation = std::abs(r.difference.value / r.closed_form - Real(1));
  return r;
}

// RESURGENT_PRECISION=extended runs the Euler-function quadratures in long
// double where that type is wider than double; results are reported as double.
inline bool extended_precision_requested() {
  const char* env = std::getenv("RESURGENT_PRECISION");
  return env && std::string_view(env) == "extended" &&
         std::numeric_limits<long double>::digits > std::numeric_limits<double>::digits;
}

inline std::pair<NumericValue, NumericValue> euler_functions(std::complex<double> t, double delta = 0.1, double R = 4.0,
                                                             QuadratureOptions opts = {}) {
  if (!extended_precision_requested()) return euler_plus_minus<double>(t, delta, R, opts);
  const auto [plus, minus] = euler_plus_minus<long double>(std::complex<long double>(t), delta, R, opts);
  auto narrow = [](const BasicNumericValue<long double>& v) {
    return NumericValue{std::complex<double>(v.value), static_cast<double>(v.err)};
  };
  return {narrow(plus), narrow(minus)};
}

inline StokesReport stokes_report(std::complex<double> t, double delta = 0.1, double R = 4.0,
                                  QuadratureOptions opts = {}) {
  if (!extended_precision_requested()) return stokes_difference<double>(t, delta, R, opts);
  const auto r = stokes_difference<long double>(std::complex<long double>(t), delta, R, opts);
  return {{std::complex<double>(r.difference.value), static_cast<double>(r.difference.err)},
          std::complex<double>(r.closed_form),
          static_cast<double>(r.relative_deviation)};
}

}  // namespace resurgent::numeric
