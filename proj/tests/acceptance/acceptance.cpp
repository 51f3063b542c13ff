// Acceptance gate: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "resurgent/resurgent.hpp"

namespace {

using namespace resurgent;

struct Outcome {
  bool ok = true;
  std::ostringstream note;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) note << "failed: ";
      else note << "; ";
      note << what;
      ok = false;
    }
  }
};

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<void(Outcome&)> body;
};

TruncatedSeries mono(const BigRational& c, Exponent k, Exponent a, Exponent b, SeriesKind kind, Caps caps) {
  return monomial1(c, k, a, b, kind, caps);
}

void canonical_relations(Outcome& o) {
  const auto T = SeriesKind::T, Xi = SeriesKind::Xi;
  const Caps in{2, 6}, out{2, 2};
  const auto p = mono(1, 0, 0, 1, T, in), q = mono(1, 0, 1, 0, T, in);
  const auto qp = mono(1, 0, 1, 1, T, out), t = mono(1, 1, 0, 0, T, out);
  o.require(star_product(p, q) == add(qp, t), "p*q != qp + t");
  o.require(star_product(q, p) == qp, "q*p != qp");
  o.require(star_commutator(p, q) == t, "[p,q] != t");
  const auto pd = mono(1, 0, 0, 1, Xi, in), qd = mono(1, 0, 1, 0, Xi, in);
  const auto rhs = add(mono(1, 0, 1, 1, Xi, out), mono(1, 1, 0, 0, Xi, out));
  o.require(dual_star_direct(pd, qd) == rhs && dual_star_conjugated(pd, qd) == rhs, "p*q != qp + xi (dual)");
  const Caps wide{24, 48};
  int bad = 0;
  for (Exponent n = 0; n <= 12; ++n)
    for (Exponent m = 0; m <= 12; ++m) {
      const BigRational w = BigRational(factorial(n) * factorial(m)) / BigRational(factorial(n + m));
      const auto lhs = dual_star(mono(1, n, 0, 0, Xi, wide), mono(1, m, 0, 0, Xi, wide));
      if (lhs != mono(w, n + m, 0, 0, Xi, Caps{24, 0})) ++bad;
    }
  o.require(bad == 0, std::to_string(bad) + " xi^n*xi^m weights wrong");
  o.note << (o.ok ? "5 relations, 169 xi-power products exact" : "");
}

void geometric_products(Outcome& o) {
  const int K = 12;
  const Caps in{K, 3 * K};
  const auto h = star_product(geometric_series(p_var(), SeriesKind::T, 1, in),
                              geometric_series(q_var(), SeriesKind::T, 1, in));
  int bad = 0;
  for (int k = 0; k <= K; ++k)
    if (h.coefficient(MultiIndex{static_cast<Exponent>(k), {0}, {0}}) != BigRational(factorial(k))) ++bad;
  o.require(bad == 0, std::to_string(bad) + " t-coefficients differ from k!");
  const Caps din{8, 24 + 16};
  const auto f = geometric_series(p_var(), SeriesKind::Xi, 1, din), g = geometric_series(q_var(), SeriesKind::Xi, 1, din);
  const auto oracle = oracles::dual_pole_series(8, 24);
  const auto direct = dual_star_direct(f, g), conj = dual_star_conjugated(f, g);
  o.require(direct == oracle, "direct route differs from the dual pole series");
  o.require(conj == oracle, "conjugated route differs from the dual pole series");
  if (o.ok) o.note << "k! for k<=12; " << oracle.size() << " terms equal on caps (8,24)";
}

void route_equivalence(Outcome& o) {
  RandomSeries gen(31337);
  int bad = 0;
  std::size_t terms = 0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = i < 25 ? 1 : 2;
    const Caps in{6, 24};  // guaranteed output caps (6, 12)
    const auto f = gen.poly(SeriesKind::Xi, n, in, 16, 6, n == 1 ? 10 : 6);
    const auto g = gen.poly(SeriesKind::Xi, n, in, 16, 6, n == 1 ? 10 : 6);
    const auto a = dual_star_direct(f, g), b = dual_star_conjugated(f, g);
    if (a.caps() != Caps{6, 12} || a != b) ++bad;
    terms += a.size();
  }
  o.require(bad == 0, std::to_string(bad) + " of 50 pairs differ");
  if (o.ok) o.note << "50 pairs (25 at n=1, 25 at n=2) equal, " << terms << " output terms";
}

void associativity(Outcome& o) {
  RandomSeries gen(4711);
  int bad = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = i % 4 == 3 ? 2 : 1;
    const Caps in{5, 30};  // guaranteed output caps (5, 10)
    auto draw = [&] { return gen.poly(SeriesKind::T, n, in, 8, 3, n == 1 ? 6 : 4); };
    const auto a = draw(), b = draw(), c = draw();
    const auto left = star_product(star_product(a, b), c), right = star_product(a, star_product(b, c));
    if (left.caps() != Caps{5, 10} || left != right) ++bad;
  }
  o.require(bad == 0, std::to_string(bad) + " of 100 triples not associative");
  if (o.ok) o.note << "100 triples associative on caps (5,10)";
}

void hypergeometric(Outcome& o) {
  const BigRational values[] = {BigRational(-1, 2), BigRational(1, 3), BigRational(2), BigRational(-1)};
  int bad = 0;
  for (const auto& a : values)
    for (const auto& b : values)
      if (!hypergeometric_identity_check(a, b, 4, 10).equal) ++bad;
  o.require(bad == 0, std::to_string(bad) + " of 16 (a,b) pairs fail");
  const int K = 8;
  const auto f = oracles::binomial_power_series(BigRational(-1, 2), p_var(), 2 * K, SeriesKind::Xi, K);
  const auto g = oracles::binomial_power_series(BigRational(-1, 2), q_var(), 2 * K, SeriesKind::Xi, K);
  const auto h = dual_star(f, g);
  const auto ek = oracles::elliptic_k_series(K);
  bool elliptic = oracles::hypergeometric_series(BigRational(-1, 2), BigRational(-1, 2), K) == ek;
  for (Exponent n = 0; n <= static_cast<Exponent>(K); ++n)
    elliptic = elliptic && h.coefficient(MultiIndex{n, {0}, {0}}) == ek.coefficient(MultiIndex{n, {0}, {0}});
  o.require(elliptic, "elliptic special case differs from elliptic_k_series");
  if (o.ok) o.note << "16 pairs exact at (4,10); elliptic case exact to xi^" << K;
}

void stokes(Outcome& o) {
  double worst = 0;
  for (double t : {0.2, 0.5, 1.0}) worst = std::max(worst, numeric::stokes_difference<double>(t).relative_deviation);
  o.require(worst <= 1e-6, "relative deviation too large");
  o.note << (o.ok ? "" : " ") << "max relative deviation " << worst;
}

void cycle(Outcome& o) {
  double worst = 0, worst_h = 0;
  int used = 0;
  for (const auto& [f, g] : verify::cycle_regression_pairs()) {
    const auto exact = evaluate_numeric(dual_star(f, g), eval_point(0.05, 0.1, 0.1)).value;
    worst = std::max(worst, std::abs(numeric::vanishing_cycle_product(f, g, 0.05, {0.1}, {0.1}, {256}).value.value - exact));
    if (dual_slice(f, 0) == f && dual_slice(g, 0) == g) {
      worst_h = std::max(worst_h, std::abs(numeric::hadamard_contour_product(f, g, 0.05, 0.1, 0.1, 256).value.value - exact));
      ++used;
    }
  }
  o.require(worst <= 1e-7, "cycle product off");
  o.require(used > 0 && worst_h <= 1e-9, "contour form off");
  o.note << (o.ok ? "" : " ") << "cycle max dev " << worst << "; contour max dev " << worst_h << " on " << used
         << " xi-free pairs";
}

void singularities(Outcome& o) {
  const int K = 16;
  const Caps in{K, 96 + 2 * K};
  const auto h = dual_star(geometric_series(p_var(), SeriesKind::Xi, 1, in),
                           geometric_series(q_var(), SeriesKind::Xi, 1, in));
  double worst = 0;
  for (double q : {0.0, 0.2, 0.4})
    for (double p : {0.0, 0.2, 0.4}) {
      const auto r = numeric::borel_plane_singularities(h, q, p, 8, 8);
      worst = r.poles.empty() ? std::numeric_limits<double>::infinity()
                              : std::max(worst, std::abs(r.poles.front().location - (1 - p) * (1 - q)));
    }
  const auto e = numeric::borel_plane_singularities(oracles::euler_series(20), 0.0, 0.0, 8, 8);
  const double de = e.poles.empty() ? std::numeric_limits<double>::infinity() : std::abs(e.poles.front().location - 1.0);
  o.require(worst <= 1e-8, "grid pole off");
  o.require(de <= 1e-10, "Euler pole off");
  o.note << (o.ok ? "" : " ") << "grid max dev " << worst << "; Euler pole dev " << de;
}

void gevrey(Outcome& o) {
  const double r = gevrey_radius_estimate(oracles::euler_series(30), 0.0, 0.0);
  o.require(r >= 0.95 && r <= 1.05, "Euler radius outside [0.95, 1.05]");
  const int K = 14;
  const Caps in{K, 3 * K};
  const auto e = oracles::euler_series(K, 3 * K);
  const auto gp = geometric_series(p_var(), SeriesKind::T, 1, in), gq = geometric_series(q_var(), SeriesKind::T, 1, in);
  double smallest = std::numeric_limits<double>::infinity();
  for (const auto& h : {star_product(e, e), star_product(e, gq), star_product(gp, gq)})
    for (double x : {0.0, 0.1, 0.2}) smallest = std::min(smallest, gevrey_radius_estimate(h, x, x));
  o.require(smallest > 0, "a product radius collapsed");
  o.note << (o.ok ? "" : " ") << "Euler radius " << r << "; smallest product radius " << smallest;
}

void integrals(Outcome& o) {
  double g = 0;
  for (int k = 0; k <= 5; ++k)
    for (double t : {0.5, 1.0}) g = std::max(g, std::abs(numeric::gaussian_moment_check(k, t).value.real() - 1.0));
  double d = 0;
  int count = 0;
  for (unsigned n = 2; n <= 3; ++n) {
    std::vector<unsigned> a(n, 0);
    std::function<void(unsigned, unsigned)> rec = [&](unsigned j, unsigned left) {
      if (j == n) {
        d = std::max(d, std::abs(numeric::dirichlet_integral_check(a).value.real() - 1.0));
        ++count;
        return;
      }
      for (unsigned v = 0; v <= left; ++v) {
        a[j] = v;
        rec(j + 1, left - v);
      }
    };
    rec(0, 4);
  }
  o.require(g <= 1e-9, "Gaussian moment ratio off");
  o.require(d <= 1e-9, "Dirichlet ratio off");
  o.note << (o.ok ? "" : " ") << "Gaussian max dev " << g << "; Dirichlet max dev " << d << " over " << count
         << " multi-indices";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "canonical and dual relations", 1, canonical_relations},
      {2, "geometric factors: k! and dual pole series", 30, geometric_products},
      {3, "dual product route equivalence", 60, route_equivalence},
      {4, "star associativity fuzz", 60, associativity},
      {5, "hypergeometric identity and elliptic case", 30, hypergeometric},
      {6, "Stokes difference closed form", 10, stokes},
      {7, "vanishing-cycle and contour products", 30, cycle},
      {8, "Borel-plane pole detection", 10, singularities},
      {9, "Gevrey radius estimates", 10, gevrey},
      {10, "Gaussian and simplex integrals", 10, integrals},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(secs < c.budget_s, "over time budget");
    if (!o.ok) ++failures;
    std::printf("%s criterion %2d: %s (%.2f s of %.0f s) %s\n", o.ok ? "PASS" : "FAIL", c.id, c.title, secs,
                c.budget_s, o.note.str().c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
