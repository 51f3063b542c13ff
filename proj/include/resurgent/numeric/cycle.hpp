#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "resurgent/error.hpp"
#include "resurgent/numeric/quadrature.hpp"
#include "resurgent/numeric/value.hpp"
#include "resurgent/series.hpp"

namespace resurgent::numeric {

namespace detail {

// Evaluates every dual slice of a series at (q, p) in one pass.
class SliceEvaluator {
 public:
  explicit SliceEvaluator(const TruncatedSeries& f) : ndof_(f.ndof()), slices_(static_cast<std::size_t>(f.t_cap()) + 1) {
    for (const auto& [idx, c] : f.terms()) {
      Flat t{to_double(c), {}};
      t.exps.insert(t.exps.end(), idx.alpha.begin(), idx.alpha.end());
      t.exps.insert(t.exps.end(), idx.beta.begin(), idx.beta.end());
      for (auto e : t.exps) max_exp_ = std::max<std::size_t>(max_exp_, e);
      slices_[idx.k].push_back(std::move(t));
    }
  }

  std::size_t slice_count() const { return slices_.size(); }

  // out[k] = slice_k(q, p); vars holds q_1..q_n, p_1..p_n.
  void operator()(const std::vector<std::complex<double>>& vars, std::vector<std::complex<double>>& out) const {
    powers_.assign(vars.size() * (max_exp_ + 1), 1.0);
    for (std::size_t v = 0; v < vars.size(); ++v)
      for (std::size_t e = 1; e <= max_exp_; ++e)
        powers_[v * (max_exp_ + 1) + e] = powers_[v * (max_exp_ + 1) + e - 1] * vars[v];
    out.assign(slices_.size(), 0.0);
    for (std::size_t k = 0; k < slices_.size(); ++k) {
      std::complex<double> acc = 0;
      for (const auto& t : slices_[k]) {
        std::complex<double> m = t.coeff;
        for (std::size_t v = 0; v < t.exps.size(); ++v)
          if (t.exps[v]) m *= powers_[v * (max_exp_ + 1) + t.exps[v]];
        acc += m;
      }
      out[k] = acc;
    }
  }

  std::size_t ndof() const { return ndof_; }

 private:
  struct Flat {
    double coeff;
    std::vector<Exponent> exps;
  };
  std::size_t ndof_;
  std::size_t max_exp_ = 0;
  std::vector<std::vector<Flat>> slices_;
  mutable std::vector<std::complex<double>> powers_;
};

// Gauss-Legendre nodes for the normalized flat measure on the simplex
// s_1 + ... + s_n = 1; s_1 is eliminated.
inline void simplex_nodes(std::size_t n, std::vector<std::vector<double>>& pts, std::vector<double>& wts) {
  pts.clear();
  wts.clear();
  const auto& rule = gauss_legendre<double>();
  std::vector<double> s(n, 0.0);
  double norm = 1;
  for (std::size_t j = 2; j < n; ++j) norm *= static_cast<double>(j);  // (n-1)!
  auto rec = [&](auto&& self, std::size_t j, double rem, double w) -> void {
    if (j == 0) {
      s[0] = rem;
      pts.push_back(s);
      wts.push_back(w * norm);
      return;
    }
    for (int i = 0; i < kGaussOrder; ++i) {
      const double x = rem * (rule.nodes[i] + 1) / 2;
      s[j] = x;
      self(self, j - 1, rem - x, w * rule.weights[i] * rem / 2);
    }
  };
  rec(rec, n - 1, 1.0, 1.0);
}

inline bool radius_exceeded(double radial, const std::vector<std::complex<double>>& q,
                            const std::vector<std::complex<double>>& p, double hint) {
  double m = 0;
  for (const auto& z : q) m = std::max(m, std::abs(z));
  for (const auto& z : p) m = std::max(m, std::abs(z));
  return radial + m >= hint;
}

}  // namespace detail

struct CycleOptions {
  int theta_nodes = 256;     // per degree of freedom
  double radius_hint = 1.0;  // flag evaluations reaching this modulus
};

struct CycleResult {
  NumericValue value;
  bool radius_warning = false;
};

// (f * g)(xi, q, p) as the average of the bullet product over the vanishing
// cycle centred at (q, p) with radius sqrt(xi).
//
// The cycle average of phi_n(q, y) psi_m(x, p) is evaluated as a torus
// average (angles theta_j, radii sqrt(lambda xi s_j)) over the normalized
// simplex in s. Its lambda-Taylor coefficients D_k, read off by a discrete
// Fourier sum over lambda on the unit circle, carry the xi^k part; the
// bullet weights then give
//   (f * g) = sum_{n,m} n! m! xi^(n+m) sum_k D_k C(k+N-1, N-1) k! / (n+m+k)!.
// err is a round-off estimate: the quadratures are exact on polynomials.
inline CycleResult vanishing_cycle_product(const TruncatedSeries& f, const TruncatedSeries& g, double xi,
                                           const std::vector<std::complex<double>>& q,
                                           const std::vector<std::complex<double>>& p, CycleOptions opts = {}) {
  resurgent::detail::require_kind(f, SeriesKind::Xi, "vanishing_cycle_product");
  resurgent::detail::require_kind(g, SeriesKind::Xi, "vanishing_cycle_product");
  resurgent::detail::require_same_space(f, g);
  const std::size_t N = f.ndof();
  if (q.size() != N || p.size() != N) fail(ErrorKind::DimensionMismatch, "evaluation point does not match ndof");
  if (!(xi > 0)) fail(ErrorKind::InvalidArgument, "xi must be positive");
  if (opts.theta_nodes < 1) fail(ErrorKind::InvalidArgument, "theta_nodes must be positive");

  const detail::SliceEvaluator ef(f), eg(g);
  const std::size_t nf = ef.slice_count(), ng = eg.slice_count();
  const int qp = std::min(f.qp_cap(), g.qp_cap());
  const std::size_t P = std::max<std::size_t>(8, std::bit_ceil(static_cast<std::size_t>(qp) + 1));
  const int M = opts.theta_nodes;

  std::vector<std::vector<double>> spts;
  std::vector<double> swts;
  if (N == 1) {
    spts = {{1.0}};
    swts = {1.0};
  } else {
    detail::simplex_nodes(N, spts, swts);
  }
  std::vector<std::complex<double>> rot(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) rot[j] = std::polar(1.0, 2 * std::numbers::pi * j / M);
  std::size_t torus_points = 1;
  for (std::size_t j = 0; j < N; ++j) torus_points *= static_cast<std::size_t>(M);

  // Phi[l][n][m]: simplex-torus average at lambda_l.
  std::vector<std::complex<double>> phi(P * nf * ng, 0.0);
  std::vector<std::complex<double>> vf(2 * N), vg(2 * N), outf, outg;
  std::vector<std::complex<double>> r(N);
  std::vector<std::complex<double>> cell(nf * ng);
  for (std::size_t l = 0; l < P; ++l) {
    const auto lambda = std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(l) / static_cast<double>(P));
    for (std::size_t si = 0; si < spts.size(); ++si) {
      for (std::size_t j = 0; j < N; ++j) r[j] = std::sqrt(lambda * xi * spts[si][j]);
      std::fill(cell.begin(), cell.end(), 0.0);
      for (std::size_t tp = 0; tp < torus_points; ++tp) {
        std::size_t code = tp;
        for (std::size_t j = 0; j < N; ++j) {
          const auto e = rot[code % static_cast<std::size_t>(M)];
          code /= static_cast<std::size_t>(M);
          // f at (q, p + r e^{-i theta}), g at (q + r e^{i theta}, p).
          vf[j] = q[j];
          vf[N + j] = p[j] + r[j] * std::conj(e);
          vg[j] = q[j] + r[j] * e;
          vg[N + j] = p[j];
        }
        ef(vf, outf);
        eg(vg, outg);
        for (std::size_t n = 0; n < nf; ++n)
          for (std::size_t m = 0; m < ng; ++m) cell[n * ng + m] += outf[n] * outg[m];
      }
      const double w = swts[si] / static_cast<double>(torus_points);
      for (std::size_t i = 0; i < nf * ng; ++i) phi[l * nf * ng + i] += w * cell[i];
    }
  }

  std::vector<std::complex<double>> contributions;
  double magnitude = 0;
  for (std::size_t n = 0; n < nf; ++n) {
    for (std::size_t m = 0; m < ng; ++m) {
      for (std::size_t k = 0; k < P; ++k) {
        std::complex<double> d = 0;
        for (std::size_t l = 0; l < P; ++l) {
          const auto inv = std::polar(1.0, -2 * std::numbers::pi * static_cast<double>(l * k % P) / static_cast<double>(P));
          d += phi[l * nf * ng + n * ng + m] * inv;
        }
        d /= static_cast<double>(P);
        const double dn = static_cast<double>(n), dm = static_cast<double>(m), kk = static_cast<double>(k),
                     dN = static_cast<double>(N);
        const double log_w = std::lgamma(dn + 1) + std::lgamma(dm + 1) + (dn + dm) * std::log(xi) +
                             std::lgamma(kk + dN) - std::lgamma(dN) - std::lgamma(dn + dm + kk + 1);
        const auto c = d * std::exp(log_w);
        contributions.push_back(c);
        magnitude += std::abs(c);
      }
    }
  }
  CycleResult res;
  res.value.value = pairwise_sum(contributions);
  res.value.err = 64 * std::numeric_limits<double>::epsilon() * magnitude;
  res.radius_warning = detail::radius_exceeded(std::sqrt(xi), q, p, opts.radius_hint);
  return res;
}

// 1-dof contour form for xi-independent f, g:
//   (1/2 pi i) oint f(q, p + xi/x) g(q + x, p) dx/x over |x| = rho,
// as an M-point trapezoid sum. rho <= 0 selects sqrt|xi|.
inline CycleResult hadamard_contour_product(const TruncatedSeries& f, const TruncatedSeries& g,
                                            std::complex<double> xi, std::complex<double> q, std::complex<double> p,
                                            int M = 256, double rho = 0, double radius_hint = 1.0) {
  resurgent::detail::require_same_space(f, g);
  if (f.ndof() != 1) fail(ErrorKind::DimensionMismatch, "contour form is implemented for one degree of freedom");
  for (const auto* s : {&f, &g})
    for (const auto& [idx, c] : s->terms())
      if (idx.k != 0) fail(ErrorKind::InvalidArgument, "contour form needs xi-independent inputs");
  if (M < 1) fail(ErrorKind::InvalidArgument, "M must be positive");
  if (rho <= 0) rho = std::sqrt(std::abs(xi));
  if (!(rho > 0)) fail(ErrorKind::InvalidArgument, "contour radius must be positive");

  const detail::SliceEvaluator ef(f), eg(g);
  std::vector<std::complex<double>> terms(static_cast<std::size_t>(M));
  std::vector<std::complex<double>> outf, outg;
  for (int j = 0; j < M; ++j) {
    const auto x = std::polar(rho, 2 * std::numbers::pi * j / M);
    ef({q, p + xi / x}, outf);
    eg({q + x, p}, outg);
    terms[j] = outf[0] * outg[0];
  }
  CycleResult res;
  double magnitude = 0;
  for (const auto& t : terms) magnitude += std::abs(t);
  res.value.value = pairwise_sum(terms) / static_cast<double>(M);
  res.value.err = 64 * std::numeric_limits<double>::epsilon() * magnitude / M;
  const double reach = std::max(std::abs(p) + std::abs(xi) / rho, std::abs(q) + rho);
  res.radius_warning = reach >= radius_hint;
  return res;
}

}  // namespace resurgent::numeric
