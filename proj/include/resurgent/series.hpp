#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "resurgent/error.hpp"
#include "resurgent/multi_index.hpp"
#include "resurgent/numeric/value.hpp"
#include "resurgent/rational.hpp"

namespace resurgent {

// Which variable the k-exponent refers to: t (Heisenberg side) or xi (Borel side).
enum class SeriesKind { T, Xi };

constexpr std::string_view to_string(SeriesKind k) noexcept { return k == SeriesKind::T ? "t" : "xi"; }

struct Caps {
  int t_cap = 0;
  int qp_cap = 0;
  friend bool operator==(const Caps&, const Caps&) = default;
};

inline Caps min_caps(Caps a, Caps b) { return {std::min(a.t_cap, b.t_cap), std::min(a.qp_cap, b.qp_cap)}; }

enum class Axis { Q, P };

// A phase-space coordinate q_i or p_i (0-based index).
struct Variable {
  Axis axis;
  std::size_t index = 0;
};

inline Variable q_var(std::size_t i = 0) { return {Axis::Q, i}; }
inline Variable p_var(std::size_t i = 0) { return {Axis::P, i}; }

using TermMap = std::map<MultiIndex, BigRational>;
using Term = std::pair<MultiIndex, BigRational>;

class TruncatedSeries;

namespace detail {
TruncatedSeries build_series(SeriesKind kind, std::size_t ndof, Caps caps, TermMap terms);
}

// Exact truncated power series in (t or xi, q_1..q_n, p_1..p_n) over Q.
// Immutable; every stored index lies within the caps and no stored
// coefficient is zero.
class TruncatedSeries {
 public:
  SeriesKind kind() const noexcept { return kind_; }
  std::size_t ndof() const noexcept { return ndof_; }
  Caps caps() const noexcept { return caps_; }
  int t_cap() const noexcept { return caps_.t_cap; }
  int qp_cap() const noexcept { return caps_.qp_cap; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  bool within_caps(const MultiIndex& idx) const noexcept {
    return idx.k <= static_cast<Exponent>(caps_.t_cap) &&
           idx.deg_qp() <= static_cast<std::uint64_t>(caps_.qp_cap);
  }

  // Stored coefficient or zero; asking beyond the caps is an error so that
  // truncation loss is never mistaken for a vanishing coefficient.
  BigRational coefficient(const MultiIndex& idx) const {
    if (idx.ndof() != ndof_ || !idx.well_formed())
      fail(ErrorKind::IndexDimensionMismatch, "index dimension does not match ndof");
    if (!within_caps(idx)) fail(ErrorKind::IndexOutOfCaps, "coefficient queried beyond caps");
    auto it = terms_.find(idx);
    return it == terms_.end() ? BigRational(0) : it->second;
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.kind_ == b.kind_ && a.ndof_ == b.ndof_ && a.caps_ == b.caps_ && a.terms_ == b.terms_;
  }

 private:
  friend TruncatedSeries detail::build_series(SeriesKind, std::size_t, Caps, TermMap);
  TruncatedSeries(SeriesKind kind, std::size_t ndof, Caps caps, TermMap terms)
      : kind_(kind), ndof_(ndof), caps_(caps), terms_(std::move(terms)) {}

  SeriesKind kind_;
  std::size_t ndof_;
  Caps caps_;
  TermMap terms_;
};

namespace detail {

inline void check_caps(Caps caps) {
  if (caps.t_cap < 0 || caps.qp_cap < 0) fail(ErrorKind::CapsExhausted, "negative cap");
}

// Drops zeros and everything outside the caps. Only for kernels whose
// out-of-cap terms are truncation by construction.
inline TruncatedSeries build_series(SeriesKind kind, std::size_t ndof, Caps caps, TermMap terms) {
  check_caps(caps);
  if (ndof == 0) fail(ErrorKind::IndexDimensionMismatch, "ndof must be at least 1");
  std::erase_if(terms, [&](const auto& kv) {
    return kv.second == 0 || kv.first.k > static_cast<Exponent>(caps.t_cap) ||
           kv.first.deg_qp() > static_cast<std::uint64_t>(caps.qp_cap);
  });
  return TruncatedSeries(kind, ndof, caps, std::move(terms));
}

inline void require_same_space(const TruncatedSeries& f, const TruncatedSeries& g) {
  if (f.kind() != g.kind()) fail(ErrorKind::KindMismatch, "operands have different kinds");
  if (f.ndof() != g.ndof()) fail(ErrorKind::DimensionMismatch, "operands have different ndof");
}

inline void require_kind(const TruncatedSeries& f, SeriesKind kind, const char* op) {
  if (f.kind() != kind)
    fail(ErrorKind::KindMismatch, std::string(op) + " expects a " + std::string(to_string(kind)) + "-series");
}

inline MultiIndex product_index(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex r{a.k + b.k, a.alpha, a.beta};
  for (std::size_t j = 0; j < r.alpha.size(); ++j) {
    r.alpha[j] += b.alpha[j];
    r.beta[j] += b.beta[j];
  }
  return r;
}

}  // namespace detail

// Normalizing constructor: merges duplicate indices, drops zeros and
// rejects indices that do not fit the dimension or the caps.
inline TruncatedSeries make_series(const std::vector<Term>& terms, SeriesKind kind, std::size_t ndof,
                                   Caps caps) {
  detail::check_caps(caps);
  if (ndof == 0) fail(ErrorKind::IndexDimensionMismatch, "ndof must be at least 1");
  TermMap map;
  for (const auto& [idx, c] : terms) {
    if (!idx.well_formed() || idx.ndof() != ndof)
      fail(ErrorKind::IndexDimensionMismatch, "term index does not have ndof entries in alpha and beta");
    if (idx.k > static_cast<Exponent>(caps.t_cap) || idx.deg_qp() > static_cast<std::uint64_t>(caps.qp_cap))
      fail(ErrorKind::TermExceedsCaps, "term lies outside the caps");
    map[idx] += c;
  }
  return detail::build_series(kind, ndof, caps, std::move(map));
}

inline TruncatedSeries zero_series(SeriesKind kind, std::size_t ndof, Caps caps) {
  return detail::build_series(kind, ndof, caps, {});
}

inline TruncatedSeries constant_series(const BigRational& c, SeriesKind kind, std::size_t ndof, Caps caps) {
  return make_series({{unit_index(ndof), c}}, kind, ndof, caps);
}

// c * xi^k q^alpha p^beta (or t^k ...).
inline TruncatedSeries monomial(const BigRational& c, MultiIndex idx, SeriesKind kind, Caps caps) {
  const std::size_t n = idx.ndof();
  return make_series({{std::move(idx), c}}, kind, n, caps);
}

// 1-dof shorthand: c * dual^k q^a p^b.
inline TruncatedSeries monomial1(const BigRational& c, Exponent k, Exponent a, Exponent b, SeriesKind kind,
                                 Caps caps) {
  return monomial(c, MultiIndex{k, {a}, {b}}, kind, caps);
}

// 1/(1 - v) expanded to the qp cap.
inline TruncatedSeries geometric_series(Variable v, SeriesKind kind, std::size_t ndof, Caps caps) {
  if (v.index >= ndof) fail(ErrorKind::UnknownVariable, "variable index exceeds ndof");
  std::vector<Term> terms;
  for (int j = 0; j <= caps.qp_cap; ++j) {
    MultiIndex idx = unit_index(ndof);
    (v.axis == Axis::Q ? idx.alpha : idx.beta)[v.index] = static_cast<Exponent>(j);
    terms.emplace_back(std::move(idx), BigRational(1));
  }
  return make_series(terms, kind, ndof, caps);
}

inline TruncatedSeries truncate(const TruncatedSeries& f, Caps caps) {
  const Caps c = min_caps(caps, f.caps());
  return detail::build_series(f.kind(), f.ndof(), c, f.terms());
}

inline TruncatedSeries with_kind(const TruncatedSeries& f, SeriesKind kind) {
  return detail::build_series(kind, f.ndof(), f.caps(), f.terms());
}

inline TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g) {
  detail::require_same_space(f, g);
  TermMap acc = f.terms();
  for (const auto& [idx, c] : g.terms()) acc[idx] += c;
  return detail::build_series(f.kind(), f.ndof(), min_caps(f.caps(), g.caps()), std::move(acc));
}

inline TruncatedSeries scale(const TruncatedSeries& f, const BigRational& s) {
  TermMap acc = f.terms();
  for (auto& [idx, c] : acc) c *= s;
  return detail::build_series(f.kind(), f.ndof(), f.caps(), std::move(acc));
}

inline TruncatedSeries negate(const TruncatedSeries& f) { return scale(f, BigRational(-1)); }

inline TruncatedSeries sub(const TruncatedSeries& f, const TruncatedSeries& g) { return add(f, negate(g)); }

// Commutative (Cauchy) product, truncated to the smaller caps.
inline TruncatedSeries mul(const TruncatedSeries& f, const TruncatedSeries& g) {
  detail::require_same_space(f, g);
  const Caps caps = min_caps(f.caps(), g.caps());
  TermMap acc;
  for (const auto& [fi, fc] : f.terms()) {
    if (fi.k > static_cast<Exponent>(caps.t_cap) || fi.deg_qp() > static_cast<std::uint64_t>(caps.qp_cap))
      continue;
    for (const auto& [gi, gc] : g.terms()) {
      if (fi.k + gi.k > static_cast<Exponent>(caps.t_cap)) continue;
      if (fi.deg_qp() + gi.deg_qp() > static_cast<std::uint64_t>(caps.qp_cap)) continue;
      acc[detail::product_index(fi, gi)] += fc * gc;
    }
  }
  return detail::build_series(f.kind(), f.ndof(), caps, std::move(acc));
}

inline TruncatedSeries partial_derivative(const TruncatedSeries& f, Variable var) {
  if (var.index >= f.ndof()) fail(ErrorKind::UnknownVariable, "variable index exceeds ndof");
  TermMap acc;
  for (const auto& [idx, c] : f.terms()) {
    const Exponent e = var.axis == Axis::Q ? idx.alpha[var.index] : idx.beta[var.index];
    if (e == 0) continue;
    MultiIndex d = idx;
    (var.axis == Axis::Q ? d.alpha : d.beta)[var.index] -= 1;
    acc[std::move(d)] += c * static_cast<unsigned long>(e);
  }
  return detail::build_series(f.kind(), f.ndof(), f.caps(), std::move(acc));
}

// The coefficient of dual^k as a series in (q, p) (k-exponent 0), caps kept.
inline TruncatedSeries dual_slice(const TruncatedSeries& f, Exponent k) {
  TermMap acc;
  for (const auto& [idx, c] : f.terms())
    if (idx.k == k) acc.emplace(MultiIndex{0, idx.alpha, idx.beta}, c);
  return detail::build_series(f.kind(), f.ndof(), f.caps(), std::move(acc));
}

// Multiplies by dual^s, dropping what no longer fits.
inline TruncatedSeries shift_dual(const TruncatedSeries& f, Exponent s) {
  TermMap acc;
  for (const auto& [idx, c] : f.terms()) acc.emplace(MultiIndex{idx.k + s, idx.alpha, idx.beta}, c);
  return detail::build_series(f.kind(), f.ndof(), f.caps(), std::move(acc));
}

struct EvalPoint {
  std::complex<double> dual;  // t or xi
  std::vector<std::complex<double>> q;
  std::vector<std::complex<double>> p;
};

inline EvalPoint eval_point(std::complex<double> dual, std::complex<double> q, std::complex<double> p) {
  return {dual, {q}, {p}};
}

namespace detail {

inline std::complex<double> ipow(std::complex<double> x, std::uint64_t e) {
  std::complex<double> r = 1.0;
  while (e) {
    if (e & 1u) r *= x;
    x *= x;
    e >>= 1u;
  }
  return r;
}

struct FlatTerm {
  std::vector<Exponent> exps;  // dual, q_1..q_n, p_1..p_n
  std::complex<double> coeff;
};

// Nested Horner over variables in the fixed order of `exps`.
inline std::complex<double> horner(std::span<const FlatTerm> terms, std::size_t level,
                                   std::span<const std::complex<double>> vars) {
  if (terms.empty()) return 0.0;
  if (level == vars.size()) {
    std::complex<double> s = 0.0;
    for (const auto& t : terms) s += t.coeff;
    return s;
  }
  // Groups sorted ascending by exponent at this level; evaluate from the top.
  std::vector<std::pair<Exponent, std::complex<double>>> groups;
  std::size_t start = 0;
  while (start < terms.size()) {
    std::size_t end = start;
    while (end < terms.size() && terms[end].exps[level] == terms[start].exps[level]) ++end;
    groups.emplace_back(terms[start].exps[level], horner(terms.subspan(start, end - start), level + 1, vars));
    start = end;
  }
  const auto x = vars[level];
  std::complex<double> acc = groups.back().second;
  for (std::size_t g = groups.size() - 1; g-- > 0;) {
    acc = acc * ipow(x, groups[g + 1].first - groups[g].first) + groups[g].second;
  }
  return acc * ipow(x, groups.front().first);
}

}  // namespace detail

// Partial-sum evaluation. Variables are nested dual outermost, then
// q_1..q_n, then p_1..p_n. The error estimate is the magnitude of the
// top retained orders (terms sitting on a nonzero cap); 0 for polynomials
// that stay strictly inside their caps.
inline NumericValue evaluate_numeric(const TruncatedSeries& f, const EvalPoint& pt) {
  const std::size_t n = f.ndof();
  if (pt.q.size() != n || pt.p.size() != n)
    fail(ErrorKind::DimensionMismatch, "evaluation point does not match ndof");
  std::vector<std::complex<double>> vars;
  vars.reserve(2 * n + 1);
  vars.push_back(pt.dual);
  vars.insert(vars.end(), pt.q.begin(), pt.q.end());
  vars.insert(vars.end(), pt.p.begin(), pt.p.end());

  std::vector<detail::FlatTerm> flat;
  flat.reserve(f.size());
  std::complex<double> top_t = 0.0, top_qp = 0.0;
  for (const auto& [idx, c] : f.terms()) {
    detail::FlatTerm ft;
    ft.exps.reserve(2 * n + 1);
    ft.exps.push_back(idx.k);
    ft.exps.insert(ft.exps.end(), idx.alpha.begin(), idx.alpha.end());
    ft.exps.insert(ft.exps.end(), idx.beta.begin(), idx.beta.end());
    ft.coeff = to_double(c);
    const bool on_t = f.t_cap() > 0 && idx.k == static_cast<Exponent>(f.t_cap());
    const bool on_qp = f.qp_cap() > 0 && idx.deg_qp() == static_cast<std::uint64_t>(f.qp_cap());
    if (on_t || on_qp) {
      std::complex<double> m = ft.coeff;
      for (std::size_t v = 0; v < vars.size(); ++v) m *= detail::ipow(vars[v], ft.exps[v]);
      if (on_t) top_t += m;
      if (on_qp) top_qp += m;
    }
    flat.push_back(std::move(ft));
  }
  std::sort(flat.begin(), flat.end(), [](const auto& a, const auto& b) { return a.exps < b.exps; });
  NumericValue out;
  out.value = detail::horner(flat, 0, vars);
  out.err = std::max(std::abs(top_t), std::abs(top_qp));
  return out;
}

// Coefficients of the dual variable at a numeric (q, p): c_k = sum over
// the k-slice of coeff * q^alpha p^beta, for k = 0..t_cap.
inline std::vector<std::complex<double>> dual_coefficients_at(const TruncatedSeries& f,
                                                              const std::vector<std::complex<double>>& q,
                                                              const std::vector<std::complex<double>>& p) {
  std::vector<std::complex<double>> out(static_cast<std::size_t>(f.t_cap()) + 1, 0.0);
  for (Exponent k = 0; k <= static_cast<Exponent>(f.t_cap()); ++k) {
    out[k] = evaluate_numeric(dual_slice(f, k), EvalPoint{0.0, q, p}).value;
  }
  return out;
}

}  // namespace resurgent
