#pragma once

#include <functional>
#include <thread>
#include <vector>

#include "resurgent/parallel.hpp"
#include "resurgent/series.hpp"

namespace resurgent {

namespace detail {

// Guaranteed-complete output caps of a product that applies up to t_cap
// derivative pairs: each pair lowers qp-degree by two.
inline Caps star_output_caps(const TruncatedSeries& f, const TruncatedSeries& g) {
  const Caps in = min_caps(f.caps(), g.caps());
  const Caps out{in.t_cap, in.qp_cap - 2 * in.t_cap};
  if (out.qp_cap < 0)
    fail(ErrorKind::CapsExhausted, "qp_cap " + std::to_string(in.qp_cap) + " cannot support t_cap " +
                                       std::to_string(in.t_cap) + " (needs qp_cap >= 2 * t_cap)");
  return out;
}

// Calls visit(kappa, |kappa|) for every multi-index kappa <= bound with
// lo <= |kappa| <= hi.
inline void for_each_kappa(const ExponentVector& bound, std::uint64_t lo, std::uint64_t hi,
                           const std::function<void(const ExponentVector&, std::uint64_t)>& visit) {
  ExponentVector kappa(bound.size(), 0);
  std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t j, std::uint64_t total) {
    if (j == bound.size()) {
      if (total >= lo) visit(kappa, total);
      return;
    }
    for (Exponent e = 0; e <= bound[j] && total + e <= hi; ++e) {
      kappa[j] = e;
      rec(j + 1, total + e);
    }
    kappa[j] = 0;
  };
  rec(0, 0);
}

// Moyal pairing of f-term q^a p^b t^n with g-term q^a' p^b' t^m:
//   sum_kappa (1/kappa!) d_p^kappa (q^a p^b) d_q^kappa (q^a' p^b') t^(n+m+|kappa|)
// whose scalar weight is prod_j kappa_j! C(b_j, kappa_j) C(a'_j, kappa_j).
inline void star_pair(const MultiIndex& fi, const BigRational& fc, const MultiIndex& gi, const BigRational& gc,
                      Caps out, TermMap& acc) {
  const std::uint64_t base_k = std::uint64_t{fi.k} + gi.k;
  if (base_k > static_cast<std::uint64_t>(out.t_cap)) return;
  const std::uint64_t deg = fi.deg_qp() + gi.deg_qp();
  const std::uint64_t hi = static_cast<std::uint64_t>(out.t_cap) - base_k;
  const std::uint64_t lo =
      deg > static_cast<std::uint64_t>(out.qp_cap) ? (deg - out.qp_cap + 1) / 2 : 0;
  if (lo > hi) return;
  ExponentVector bound(fi.beta.size());
  for (std::size_t j = 0; j < bound.size(); ++j) bound[j] = std::min(fi.beta[j], gi.alpha[j]);
  const BigRational c = fc * gc;
  for_each_kappa(bound, lo, hi, [&](const ExponentVector& kappa, std::uint64_t total) {
    BigInteger w = 1;
    MultiIndex r{static_cast<Exponent>(base_k + total), fi.alpha, fi.beta};
    for (std::size_t j = 0; j < kappa.size(); ++j) {
      const Exponent kj = kappa[j];
      if (kj) w *= factorial(kj) * binomial(fi.beta[j], kj) * binomial(gi.alpha[j], kj);
      r.alpha[j] += gi.alpha[j] - kj;
      r.beta[j] += gi.beta[j] - kj;
    }
    acc[std::move(r)] += c * w;
  });
}

}  // namespace detail

// Normal-ordered (Moyal) star product of t-series:
//   h_l = sum_{n+m+|kappa|=l} (1/kappa!) d_p^kappa f_n d_q^kappa g_m.
// Output caps: t_cap = min t_cap, qp_cap = min qp_cap - 2 t_cap.
inline TruncatedSeries star_product(const TruncatedSeries& f, const TruncatedSeries& g) {
  detail::require_kind(f, SeriesKind::T, "star_product");
  detail::require_kind(g, SeriesKind::T, "star_product");
  detail::require_same_space(f, g);
  const Caps out = detail::star_output_caps(f, g);

  std::vector<const TermMap::value_type*> fterms;
  fterms.reserve(f.size());
  for (const auto& kv : f.terms()) fterms.push_back(&kv);

  const unsigned workers =
      f.size() * g.size() < 4096 ? 1u : std::min<unsigned>(worker_count(), static_cast<unsigned>(fterms.size()));
  std::vector<TermMap> partial(workers);
  auto run = [&](unsigned w) {
    for (std::size_t i = w; i < fterms.size(); i += workers) {
      const auto& [fi, fc] = *fterms[i];
      for (const auto& [gi, gc] : g.terms()) detail::star_pair(fi, fc, gi, gc, out, partial[w]);
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  TermMap acc = std::move(partial[0]);
  for (unsigned w = 1; w < workers; ++w)
    for (auto& [idx, c] : partial[w]) acc[idx] += c;
  return detail::build_series(SeriesKind::T, f.ndof(), out, std::move(acc));
}

inline TruncatedSeries star_commutator(const TruncatedSeries& f, const TruncatedSeries& g) {
  return sub(star_product(f, g), star_product(g, f));
}

// t^k coefficients (k <= K) of (1/(1-p)) star (1/(1-q)) at q = p = 0.
inline std::vector<BigRational> euler_divergence_check(int K) {
  if (K < 0) fail(ErrorKind::InvalidArgument, "K must be non-negative");
  const Caps in{K, 3 * K};
  const auto f = geometric_series(p_var(), SeriesKind::T, 1, in);
  const auto g = geometric_series(q_var(), SeriesKind::T, 1, in);
  const auto h = star_product(f, g);
  std::vector<BigRational> out;
  for (int k = 0; k <= K; ++k) out.push_back(h.coefficient(MultiIndex{static_cast<Exponent>(k), {0}, {0}}));
  return out;
}

}  // namespace resurgent
