#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "resurgent/borel.hpp"
#include "resurgent/error.hpp"
#include "resurgent/series.hpp"

namespace resurgent::numeric {

struct PadePole {
  std::complex<double> location;
  std::complex<double> residue;
};

// [L/M] approximant P/Q in the original variable, den[0] = 1.
struct PadeApproximant {
  int L = 0, M = 0;
  std::vector<std::complex<double>> num, den;
  std::vector<PadePole> poles;                  // roots of Q, sorted by modulus
  std::vector<std::complex<double>> zeros;      // roots of P
  double condition = 1;                         // 2-norm condition of the Toeplitz block
  double scale = 1;                             // variable rescaling used in the solve
};

namespace detail {

inline constexpr double kRankTolerance = 1e-10;

inline std::complex<double> horner(std::span<const std::complex<double>> c, std::complex<double> x) {
  std::complex<double> acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

// Roots via eigenvalues of the companion matrix; trailing coefficients below
// 1e-14 of the largest are treated as zero.
inline std::vector<std::complex<double>> polynomial_roots(std::vector<std::complex<double>> c) {
  double big = 0;
  for (const auto& x : c) big = std::max(big, std::abs(x));
  while (!c.empty() && std::abs(c.back()) <= 1e-14 * big) c.pop_back();
  if (c.size() <= 1) return {};
  const int d = static_cast<int>(c.size()) - 1;
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -c[static_cast<std::size_t>(i)] / c.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  std::vector<std::complex<double>> roots(es.eigenvalues().data(), es.eigenvalues().data() + d);
  std::sort(roots.begin(), roots.end(), [](auto a, auto b) { return std::abs(a) < std::abs(b); });
  return roots;
}

}  // namespace detail

// Denominator from the Toeplitz system sum_{j=0..M} b_j c_{L+i-j} = 0,
// i = 1..M, b_0 = 1, after rescaling the variable so that the coefficients
// are of comparable size; numerator by forward multiplication.
inline PadeApproximant pade_approximant(std::span<const std::complex<double>> coeffs, int L, int M) {
  if (L < 0 || M < 0) fail(ErrorKind::InvalidArgument, "Pade degrees must be non-negative");
  if (coeffs.size() < static_cast<std::size_t>(L + M + 1))
    fail(ErrorKind::InsufficientData, "Pade [" + std::to_string(L) + "/" + std::to_string(M) + "] needs " +
                                          std::to_string(L + M + 1) + " coefficients, have " +
                                          std::to_string(coeffs.size()));
  PadeApproximant out;
  out.L = L;
  out.M = M;
  const int top = L + M;
  double s = 1;
  if (top > 0 && std::abs(coeffs[0]) > 0 && std::abs(coeffs[top]) > 0)
    s = std::pow(std::abs(coeffs[0]) / std::abs(coeffs[top]), 1.0 / top);
  out.scale = s;
  std::vector<std::complex<double>> c(static_cast<std::size_t>(top + 1));
  for (int k = 0; k <= top; ++k) c[k] = coeffs[k] * std::pow(s, k);
  auto at = [&](int k) { return k < 0 ? std::complex<double>(0) : c[k]; };

  std::vector<std::complex<double>> b(static_cast<std::size_t>(M + 1), 0.0);
  b[0] = 1;
  if (M > 0) {
    Eigen::MatrixXcd A(M, M);
    Eigen::VectorXcd rhs(M);
    for (int i = 1; i <= M; ++i) {
      for (int j = 1; j <= M; ++j) A(i - 1, j - 1) = at(L + i - j);
      rhs(i - 1) = -at(L + i);
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
    const auto& sv = svd.singularValues();
    const double smax = sv(0), smin = sv(M - 1);
    int rank = 0;
    for (int i = 0; i < M; ++i)
      if (sv(i) > detail::kRankTolerance * smax) ++rank;
    if (smax == 0) rank = 0;
    if (rank < M)
      throw SingularSystemError(M - rank, "Toeplitz block has numerical rank " + std::to_string(rank) + " < M = " +
                                              std::to_string(M));
    out.condition = smax / smin;
    const Eigen::VectorXcd sol = A.partialPivLu().solve(rhs);
    for (int j = 1; j <= M; ++j) b[j] = sol(j - 1);
  }
  std::vector<std::complex<double>> a(static_cast<std::size_t>(L + 1), 0.0);
  for (int i = 0; i <= L; ++i)
    for (int j = 0; j <= std::min(i, M); ++j) a[i] += b[j] * c[i - j];

  // Poles and residues in the rescaled variable u = xi / s.
  std::vector<std::complex<double>> db(b.size() > 1 ? b.size() - 1 : 0);
  for (std::size_t j = 1; j < b.size(); ++j) db[j - 1] = static_cast<double>(j) * b[j];
  for (const auto& u : detail::polynomial_roots(b)) {
    const auto res_u = detail::horner(a, u) / detail::horner(db, u);
    out.poles.push_back({u * s, res_u * s});
  }
  for (const auto& u : detail::polynomial_roots(a)) out.zeros.push_back(u * s);

  out.num.resize(a.size());
  out.den.resize(b.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.num[i] = a[i] / std::pow(s, static_cast<int>(i));
  for (std::size_t j = 0; j < b.size(); ++j) out.den[j] = b[j] / std::pow(s, static_cast<int>(j));
  return out;
}

inline PadeApproximant pade_approximant(const std::vector<std::complex<double>>& coeffs, int L, int M) {
  return pade_approximant(std::span<const std::complex<double>>(coeffs), L, M);
}

struct DetectedPole {
  std::complex<double> location;
  std::complex<double> residue;
  double confidence = 1;  // in (0, 1]
};

struct SingularityReport {
  std::vector<std::complex<double>> q, p;
  std::vector<DetectedPole> poles;  // sorted by modulus
  int L = 0, M = 0;                 // degrees actually used
  int requested_M = 0;
  double condition = 1;
  double scale = 1;
  std::string method = "pade-toeplitz-companion";
};

inline constexpr double kFroissartDistance = 1e-6;

// Pade on a coefficient list. A rank-deficient block is retried with M
// lowered to the numerical rank. Poles sitting within 1e-6 of a numerator
// zero are dropped as Froissart doublets. Confidence measures agreement
// with the [L-1/M] approximant: 1 / (1 + d / (1e-6 max(1, |pole|))).
inline SingularityReport singularities_from_coefficients(const std::vector<std::complex<double>>& coeffs, int L,
                                                         int M) {
  SingularityReport rep;
  rep.requested_M = M;
  PadeApproximant pa;
  int m = M;
  for (;;) {
    try {
      pa = pade_approximant(coeffs, L, m);
      break;
    } catch (const SingularSystemError& e) {
      const int next = m - e.deficiency();
      if (next < 1 || next >= m) throw;
      m = next;
    }
  }
  rep.L = L;
  rep.M = m;
  rep.condition = pa.condition;
  rep.scale = pa.scale;

  std::vector<std::complex<double>> reference;
  bool have_reference = false;
  if (L >= 1) {
    try {
      reference.clear();
      for (const auto& pl : pade_approximant(coeffs, L - 1, m).poles) reference.push_back(pl.location);
      have_reference = true;
    } catch (const SingularSystemError&) {
    }
  }
  for (const auto& pl : pa.poles) {
    bool doublet = false;
    for (const auto& z : pa.zeros)
      if (std::abs(z - pl.location) < kFroissartDistance * std::max(1.0, std::abs(pl.location))) doublet = true;
    if (doublet) continue;
    DetectedPole d{pl.location, pl.residue, 0.5};
    if (have_reference && !reference.empty()) {
      double dist = std::numeric_limits<double>::infinity();
      for (const auto& r : reference) dist = std::min(dist, std::abs(r - pl.location));
      d.confidence = 1.0 / (1.0 + dist / (1e-6 * std::max(1.0, std::abs(pl.location))));
    }
    if (!(d.confidence > 0)) d.confidence = std::numeric_limits<double>::min();
    rep.poles.push_back(d);
  }
  std::sort(rep.poles.begin(), rep.poles.end(),
            [](const auto& a, const auto& b) { return std::abs(a.location) < std::abs(b.location); });
  return rep;
}

// Borel-plane singularities of a t-series (Borel transform taken first) or
// of a xi-series (used as is) at the slice (q, p).
inline SingularityReport borel_plane_singularities(const TruncatedSeries& f, const std::vector<std::complex<double>>& q,
                                                   const std::vector<std::complex<double>>& p, int L, int M) {
  const auto xi_series = f.kind() == SeriesKind::T ? borel_transform(f) : f;
  if (xi_series.t_cap() < L + M)
    fail(ErrorKind::InsufficientData, "series has t_cap " + std::to_string(xi_series.t_cap()) + ", Pade [" +
                                          std::to_string(L) + "/" + std::to_string(M) + "] needs " +
                                          std::to_string(L + M));
  auto rep = singularities_from_coefficients(dual_coefficients_at(xi_series, q, p), L, M);
  rep.q = q;
  rep.p = p;
  return rep;
}

inline SingularityReport borel_plane_singularities(const TruncatedSeries& f, std::complex<double> q,
                                                   std::complex<double> p, int L, int M) {
  return borel_plane_singularities(f, std::vector{q}, std::vector{p}, L, M);
}

}  // namespace resurgent::numeric
