#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>
#include "resurgent/borel.hpp"
#include "resurgent/error.hpp"
#include "resurgent/heisenberg.hpp"
#include "resurgent/identities.hpp"
#include "resurgent/numeric/cycle.hpp"
#include "resurgent/numeric/integrals.hpp"
#include "resurgent/numeric/laplace.hpp"
#include "resurgent/numeric/pade.hpp"
#include "resurgent/oracles.hpp"
#include "resurgent/random.hpp"
#include "resurgent/series.hpp"

namespace resurgent::verify {

enum class Relation { AtMost, Above };  // measured <= threshold, measured > threshold

struct CheckRecord {
  std::string name;
  bool passed = false;
  double measured = std::numeric_limits<double>::quiet_NaN();
  double threshold = 0;
  Relation relation = Relation::AtMost;
  std::string detail;
};

struct Report {
  std::string suite;
  std::vector<CheckRecord> checks;
  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

// Fixed regression pairs for the vanishing-cycle comparisons: xi-series on
// caps (8, 40), the first three xi-independent.
inline std::vector<std::pair<TruncatedSeries, TruncatedSeries>> cycle_regression_pairs() {
  const Caps c{8, 40};
  const auto Xi = SeriesKind::Xi;
  auto poly = [&](std::vector<std::tuple<Exponent, Exponent, Exponent, long>> ts) {
    std::vector<Term> terms;
    for (auto [k, a, b, v] : ts) terms.emplace_back(MultiIndex{k, {a}, {b}}, BigRational(v));
    return make_series(terms, Xi, 1, c);
  };
  std::vector<std::pair<TruncatedSeries, TruncatedSeries>> v;
  v.emplace_back(poly({{0, 0, 1, 1}}), poly({{0, 1, 0, 1}}));
  v.emplace_back(geometric_series(p_var(), Xi, 1, c), geometric_series(q_var(), Xi, 1, c));
  v.emplace_back(oracles::binomial_power_series(BigRational(-1, 2), p_var(), 40, Xi, 8),
                 oracles::binomial_power_series(BigRational(-1, 2), q_var(), 40, Xi, 8));
  v.emplace_back(poly({{1, 0, 2, 3}, {0, 1, 1, -1}, {2, 0, 0, 1}}), poly({{0, 3, 0, 1}, {1, 1, 0, 2}}));
  RandomSeries gen(4242);
  for (int i = 0; i < 6; ++i) v.emplace_back(gen.poly(Xi, 1, c, 8, 4, 6), gen.poly(Xi, 1, c, 8, 4, 6));
  return v;
}

namespace detail {

// Number of differing coefficients, or 1 when only kind or caps differ.
inline double exact_gap(const TruncatedSeries& lhs, const TruncatedSeries& rhs) {
  const auto r = compare_series(lhs, rhs);
  if (r.equal) return 0;
  return r.mismatch_count ? static_cast<double>(r.mismatch_count) : 1.0;
}

class Runner {
 public:
  explicit Runner(Report& report) : report_(report) {}

  void check(std::string name, double threshold, Relation rel, const std::function<double()>& measure) {
    CheckRecord rec{std::move(name), false, std::numeric_limits<double>::quiet_NaN(), threshold, rel, {}};
    try {
      rec.measured = measure();
      rec.passed = rel == Relation::AtMost ? rec.measured <= threshold : rec.measured > threshold;
    } catch (const std::exception& e) {
      rec.detail = e.what();
    }
    report_.checks.push_back(std::move(rec));
  }

  void exact(std::string name, const std::function<double()>& gap) { check(std::move(name), 0, Relation::AtMost, gap); }

 private:
  Report& report_;
};

inline TruncatedSeries xi_power(Exponent n, Caps c) { return monomial1(1, n, 0, 0, SeriesKind::Xi, c); }

}  // namespace detail

inline void run_algebra(Report& report) {
  using detail::exact_gap;
  detail::Runner run(report);
  const auto T = SeriesKind::T;
  const Caps c{2, 6};
  const auto p = monomial1(1, 0, 0, 1, T, c), q = monomial1(1, 0, 1, 0, T, c);
  const Caps out{2, 2};
  const auto qp = monomial1(1, 0, 1, 1, T, out), t = monomial1(1, 1, 0, 0, T, out);

  run.exact("star.p_star_q", [&] { return exact_gap(star_product(p, q), add(qp, t)); });
  run.exact("star.q_star_p", [&] { return exact_gap(star_product(q, p), qp); });
  run.exact("star.commutator_p_q", [&] { return exact_gap(star_commutator(p, q), t); });
  run.exact("star.euler_divergence_k_le_12", [&] {
    const auto got = euler_divergence_check(12);
    double gap = 0;
    for (std::size_t k = 0; k < got.size(); ++k)
      if (got[k] != BigRational(factorial(k))) ++gap;
    return gap + (got.size() == 13 ? 0 : 1);
  });

  RandomSeries gen(20240601);
  run.exact("star.associativity_fuzz", [&] {
    double gap = 0;
    const Caps in{3, 14};
    for (int i = 0; i < 12; ++i) {
      const auto a = gen.poly(T, 1, in, 4, 2, 3), b = gen.poly(T, 1, in, 4, 2, 3), d = gen.poly(T, 1, in, 4, 2, 3);
      gap += exact_gap(star_product(star_product(a, b), d), star_product(a, star_product(b, d)));
    }
    return gap;
  });
  run.exact("star.unit", [&] {
    double gap = 0;
    const Caps in{3, 10};
    const auto one = constant_series(1, T, 1, in);
    for (int i = 0; i < 8; ++i) {
      const auto f = gen.poly(T, 1, in, 6, 3, 4);
      const auto expected = truncate(f, Caps{3, 4});
      gap += exact_gap(star_product(one, f), expected) + exact_gap(star_product(f, one), expected);
    }
    return gap;
  });
  run.exact("star.commutator_antisymmetry", [&] {
    double gap = 0;
    const Caps in{3, 12};
    for (int i = 0; i < 8; ++i) {
      const auto f = gen.poly(T, 2, in, 5, 2, 4), g = gen.poly(T, 2, in, 5, 2, 4);
      gap += exact_gap(star_commutator(f, g), negate(star_commutator(g, f)));
    }
    return gap;
  });
  run.exact("star.disjoint_dof_factorize", [&] {
    double gap = 0;
    const Caps in{2, 10};
    for (int i = 0; i < 6; ++i) {
      // f in (q1, p1), g in (q2, p2): no cross derivatives.
      std::vector<Term> ft, gt;
      const auto f1 = gen.poly(T, 1, in, 4, 1, 4), g1 = gen.poly(T, 1, in, 4, 1, 4);
      for (const auto& [idx, cf] : f1.terms())
        ft.emplace_back(MultiIndex{idx.k, {idx.alpha[0], 0}, {idx.beta[0], 0}}, cf);
      for (const auto& [idx, cf] : g1.terms())
        gt.emplace_back(MultiIndex{idx.k, {0, idx.alpha[0]}, {0, idx.beta[0]}}, cf);
      const auto f = make_series(ft, T, 2, in), g = make_series(gt, T, 2, in);
      const auto h = star_product(f, g);
      gap += exact_gap(h, truncate(mul(f, g), h.caps()));
    }
    return gap;
  });
  run.exact("star.geometric_factors_t_coefficients", [&] {
    const int K = 12;
    const Caps in{K, 3 * K};
    const auto h = star_product(geometric_series(p_var(), T, 1, in), geometric_series(q_var(), T, 1, in));
    double gap = 0;
    for (int k = 0; k <= K; ++k)
      if (h.coefficient(MultiIndex{static_cast<Exponent>(k), {0}, {0}}) != BigRational(factorial(k))) ++gap;
    return gap;
  });
}

inline void run_borel(Report& report) {
  using detail::exact_gap;
  using detail::xi_power;
  detail::Runner run(report);
  const auto T = SeriesKind::T, Xi = SeriesKind::Xi;

  run.exact("borel.euler_is_geometric", [&] {
    std::vector<Term> geo;
    for (Exponent k = 0; k <= 20; ++k) geo.emplace_back(MultiIndex{k, {0}, {0}}, BigRational(1));
    return exact_gap(borel_transform(oracles::euler_series(20)), make_series(geo, Xi, 1, Caps{20, 0}));
  });
  RandomSeries gen(77001);
  run.exact("borel.round_trip", [&] {
    double gap = 0;
    for (int i = 0; i < 10; ++i) {
      const auto f = gen.poly(T, 2, Caps{6, 8}, 8, 6, 8);
      gap += exact_gap(inverse_borel(borel_transform(f)), f);
    }
    return gap;
  });
  run.exact("dual.p_star_q", [&] {
    const Caps c{2, 6}, out{2, 2};
    return exact_gap(dual_star(monomial1(1, 0, 0, 1, Xi, c), monomial1(1, 0, 1, 0, Xi, c)),
                     add(monomial1(1, 0, 1, 1, Xi, out), monomial1(1, 1, 0, 0, Xi, out)));
  });
  run.exact("dual.xi_powers_n_m_le_12", [&] {
    const Caps c{24, 48};
    double gap = 0;
    for (Exponent n = 0; n <= 12; ++n)
      for (Exponent m = 0; m <= 12; ++m) {
        const BigRational w = BigRational(factorial(n) * factorial(m)) / BigRational(factorial(n + m));
        gap += exact_gap(dual_star(xi_power(n, c), xi_power(m, c)), monomial1(w, n + m, 0, 0, Xi, Caps{24, 0}));
      }
    return gap;
  });
  run.exact("dual.route_equivalence", [&] {
    double gap = 0;
    for (int i = 0; i < 10; ++i) {
      const std::size_t n = i % 2 ? 2 : 1;
      const Caps c{4, 12};
      const auto f = gen.poly(Xi, n, c, 6, 3, 5), g = gen.poly(Xi, n, c, 6, 3, 5);
      gap += exact_gap(dual_star_direct(f, g), dual_star_conjugated(f, g));
    }
    return gap;
  });
  run.exact("dual.borel_interchange", [&] {
    double gap = 0;
    for (int i = 0; i < 6; ++i) {
      const Caps c{4, 12};
      const auto f = gen.poly(T, 1, c, 6, 3, 5), g = gen.poly(T, 1, c, 6, 3, 5);
      gap += exact_gap(borel_transform(star_product(f, g)), dual_star(borel_transform(f), borel_transform(g)));
    }
    return gap;
  });
  run.exact("dual.geometric_factors_give_dual_pole", [&] {
    const Caps in{8, 40};
    return exact_gap(dual_star(geometric_series(p_var(), Xi, 1, in), geometric_series(q_var(), Xi, 1, in)),
                     oracles::dual_pole_series(8, 24));
  });
  run.exact("bullet.commutative_associative", [&] {
    double gap = 0;
    for (int i = 0; i < 6; ++i) {
      const Caps c{4, 6};
      const auto f = gen.poly(Xi, 1, c, 5, 3, 3), g = gen.poly(Xi, 1, c, 5, 3, 3), h = gen.poly(Xi, 1, c, 5, 3, 3);
      gap += exact_gap(bullet_product(f, g), bullet_product(g, f));
      gap += exact_gap(bullet_product(bullet_product(f, g), h), bullet_product(f, bullet_product(g, h)));
    }
    return gap;
  });
  run.exact("hurwitz.weights", [&] {
    double gap = 0;
    const Caps c{11, 0};
    for (Exponent n = 0; n <= 5; ++n)
      for (Exponent m = 0; n + m + 1 <= 12; ++m) {
        const BigRational w = BigRational(factorial(n) * factorial(m)) / BigRational(factorial(n + m + 1));
        gap += exact_gap(hurwitz_convolution(xi_power(n, c), xi_power(m, c)), monomial1(w, n + m + 1, 0, 0, Xi, Caps{12, 0}));
      }
    return gap;
  });
  run.exact("hadamard.geometric_unit", [&] {
    double gap = 0;
    std::vector<Term> geo;
    for (Exponent k = 0; k <= 10; ++k) geo.emplace_back(MultiIndex{k, {0}, {0}}, BigRational(1));
    const auto unit = make_series(geo, Xi, 1, Caps{10, 0});
    for (int i = 0; i < 6; ++i) {
      const auto f = gen.poly(Xi, 1, Caps{10, 0}, 6, 10, 0);
      gap += exact_gap(hadamard_product(unit, f), f);
    }
    return gap;
  });
  run.exact("identity.hypergeometric", [&] {
    const BigRational values[] = {BigRational(-1, 2), BigRational(1, 3), BigRational(2), BigRational(-1)};
    double gap = 0;
    for (const auto& a : values)
      for (const auto& b : values) {
        const auto r = hypergeometric_identity_check(a, b, 4, 10);
        gap += r.equal ? 0 : std::max<double>(1, static_cast<double>(r.mismatch_count));
      }
    return gap;
  });
  run.exact("identity.elliptic_at_origin", [&] {
    const int K = 6;
    const auto f = oracles::binomial_power_series(BigRational(-1, 2), p_var(), 2 * K, Xi, K);
    const auto g = oracles::binomial_power_series(BigRational(-1, 2), q_var(), 2 * K, Xi, K);
    const auto h = dual_star(f, g);
    const auto k = oracles::elliptic_k_series(K);
    double gap = 0;
    for (Exponent n = 0; n <= static_cast<Exponent>(K); ++n)
      if (h.coefficient(MultiIndex{n, {0}, {0}}) != k.coefficient(MultiIndex{n, {0}, {0}})) ++gap;
    return gap;
  });
  run.check("gevrey.euler_radius", 0.05, Relation::AtMost,
            [] { return std::abs(gevrey_radius_estimate(oracles::euler_series(30), 0.0, 0.0) - 1.0); });
  run.check("gevrey.star_products_stay_gevrey", 0.0, Relation::Above, [] {
    const int K = 14;
    const Caps in{K, 3 * K};
    const auto e = oracles::euler_series(K, 3 * K);
    const auto gp = geometric_series(p_var(), T, 1, in), gq = geometric_series(q_var(), T, 1, in);
    double r = std::numeric_limits<double>::infinity();
    for (const auto& h : {star_product(e, e), star_product(e, gq), star_product(gp, gq)})
      r = std::min(r, gevrey_radius_estimate(h, 0.1, 0.1));
    return r;
  });
}

inline void run_numeric(Report& report) {
  using namespace numeric;
  using cd = std::complex<double>;
  detail::Runner run(report);

  run.check("laplace.moments", 1e-12, Relation::AtMost, [] {
    double dev = 0;
    for (int n = 0; n <= 5; ++n)
      for (double t : {0.5, 1.0}) {
        const auto v = laplace_sum<double>([n](cd xi) { return std::pow(xi, n); }, ray_path(), cd(t));
        dev = std::max(dev, std::abs(v.value / (std::tgamma(n + 1.0) * std::pow(t, n)) - 1.0));
      }
    return dev;
  });
  run.check("laplace.homotopy", 1e-10, Relation::AtMost, [] {
    auto g = [](cd xi) { return 1.0 / (2.0 - xi) + xi * xi; };
    const auto a = laplace_sum<double>(g, segment_path(0.0, 1.5), cd(0.7));
    const auto b = laplace_sum<double>(g, ContourPath{{0.0, cd(0.5, 0.4), cd(1.0, -0.3), 1.5}, std::nullopt}, cd(0.7));
    return std::abs(a.value - b.value);
  });
  for (double t : {0.2, 0.5, 1.0})
    run.check("stokes.relative_deviation_t_" + std::to_string(t).substr(0, 3), 1e-6, Relation::AtMost,
              [t] { return stokes_difference<double>(t).relative_deviation; });
  run.check("stokes.detour_invariance", 1e-10, Relation::AtMost, [] {
    const auto [p1, m1] = euler_plus_minus<double>(0.5, 0.1);
    const auto [p2, m2] = euler_plus_minus<double>(0.5, 0.2);
    return std::max(std::abs(p1.value - p2.value), std::abs(m1.value - m2.value));
  });
  run.check("integrals.gaussian_moments", 1e-9, Relation::AtMost, [] {
    double dev = 0;
    for (int k = 0; k <= 5; ++k)
      for (double t : {0.5, 1.0}) dev = std::max(dev, std::abs(gaussian_moment_check(k, t).value.real() - 1.0));
    return dev;
  });
  run.check("integrals.dirichlet", 1e-9, Relation::AtMost, [] {
    double dev = 0;
    const std::vector<std::vector<unsigned>> alphas = {{0, 0}, {1, 1}, {3, 1}, {0, 4}, {2, 2},
                                                       {0, 0, 0}, {2, 1, 0}, {1, 1, 1}, {2, 1, 1}, {0, 0, 4}};
    for (const auto& a : alphas) dev = std::max(dev, std::abs(dirichlet_integral_check(a).value.real() - 1.0));
    return dev;
  });

  const auto pairs = cycle_regression_pairs();
  run.check("cycle.matches_exact_product", 1e-7, Relation::AtMost, [&] {
    double dev = 0;
    for (const auto& [f, g] : pairs) {
      const auto exact = evaluate_numeric(dual_star(f, g), eval_point(0.05, 0.1, 0.1)).value;
      dev = std::max(dev, std::abs(vanishing_cycle_product(f, g, 0.05, {0.1}, {0.1}, {256}).value.value - exact));
    }
    return dev;
  });
  run.check("cycle.hadamard_contour_matches", 1e-9, Relation::AtMost, [&] {
    double dev = 0;
    int used = 0;
    for (const auto& [f, g] : pairs) {
      if (dual_slice(f, 0) != f || dual_slice(g, 0) != g) continue;
      const auto exact = evaluate_numeric(dual_star(f, g), eval_point(0.05, 0.1, 0.1)).value;
      dev = std::max(dev, std::abs(hadamard_contour_product(f, g, 0.05, 0.1, 0.1, 256).value.value - exact));
      ++used;
    }
    if (used == 0) fail(ErrorKind::InsufficientData, "no xi-independent regression pairs");
    return dev;
  });
  run.check("cycle.theta_doubling", 1e-12, Relation::AtMost, [&] {
    const auto& [f, g] = pairs[3];
    const auto a = vanishing_cycle_product(f, g, 0.05, {0.1}, {0.1}, {64});
    const auto b = vanishing_cycle_product(f, g, 0.05, {0.1}, {0.1}, {128});
    return std::abs(a.value.value - b.value.value);
  });
  run.check("poles.euler_borel_pole", 1e-10, Relation::AtMost, [] {
    const auto r = borel_plane_singularities(oracles::euler_series(20), 0.0, 0.0, 8, 8);
    if (r.poles.empty()) fail(ErrorKind::InsufficientData, "no pole detected");
    return std::abs(r.poles.front().location - 1.0);
  });
  run.check("poles.dual_product_grid", 1e-8, Relation::AtMost, [] {
    const int K = 16;
    const Caps in{K, 96 + 2 * K};
    const auto h = dual_star(geometric_series(p_var(), SeriesKind::Xi, 1, in),
                             geometric_series(q_var(), SeriesKind::Xi, 1, in));
    double dev = 0;
    for (double q : {0.0, 0.2, 0.4})
      for (double p : {0.0, 0.2, 0.4}) {
        const auto r = borel_plane_singularities(h, q, p, 8, 8);
        if (r.poles.empty()) fail(ErrorKind::InsufficientData, "no pole detected");
        dev = std::max(dev, std::abs(r.poles.front().location - (1 - p) * (1 - q)));
      }
    return dev;
  });
}

inline Report run_suite(const std::string& suite) {
  Report report{suite, {}};
  if (suite == "algebra" || suite == "all") run_algebra(report);
  if (suite == "borel" || suite == "all") run_borel(report);
  if (suite == "numeric" || suite == "all") run_numeric(report);
  if (suite != "algebra" && suite != "borel" && suite != "numeric" && suite != "all")
    fail(ErrorKind::InvalidArgument, "unknown suite '" + suite + "' (algebra, borel, numeric, all)");
  return report;
}

inline nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["passed"] = r.passed();
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json rec{{"name", c.name}, {"status", c.passed ? "pass" : "fail"}};
    if (std::isfinite(c.measured))
      rec["measured"] = c.measured;
    else if (std::isinf(c.measured))
      rec["measured"] = c.measured > 0 ? "inf" : "-inf";
    else
      rec["measured"] = nullptr;
    rec["threshold"] = c.threshold;
    rec["relation"] = c.relation == Relation::AtMost ? "<=" : ">";
    if (!c.detail.empty()) rec["detail"] = c.detail;
    j["checks"].push_back(std::move(rec));
  }
  return j;
}

}  // namespace resurgent::verify
