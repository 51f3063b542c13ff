#include <gtest/gtest.h>

#include "resurgent/heisenberg.hpp"
#include "resurgent/oracles.hpp"
#include "test_support.hpp"

using namespace resurgent;
using resurgent::testing::idx1;
using resurgent::testing::poly1;

namespace {

constexpr auto T = SeriesKind::T;

// Reference Moyal product assembled from formal derivatives and the
// commutative product: sum_kappa (1/kappa!) d_p^kappa f . d_q^kappa g . t^|kappa|.
TruncatedSeries reference_star(const TruncatedSeries& f, const TruncatedSeries& g) {
  const Caps in = min_caps(f.caps(), g.caps());
  const Caps out{in.t_cap, in.qp_cap - 2 * in.t_cap};
  const std::size_t n = f.ndof();
  TruncatedSeries acc = zero_series(T, n, out);
  detail::for_each_kappa(ExponentVector(n, static_cast<Exponent>(out.t_cap)), 0,
                         static_cast<std::uint64_t>(out.t_cap), [&](const ExponentVector& kp, std::uint64_t k) {
                           TruncatedSeries df = f, dg = g;
                           BigInteger kf = 1;
                           for (std::size_t j = 0; j < n; ++j) {
                             kf *= factorial(kp[j]);
                             for (Exponent e = 0; e < kp[j]; ++e) {
                               df = partial_derivative(df, p_var(j));
                               dg = partial_derivative(dg, q_var(j));
                             }
                           }
                           const auto term = shift_dual(scale(mul(df, dg), BigRational(1) / BigRational(kf)),
                                                        static_cast<Exponent>(k));
                           acc = add(acc, truncate(term, out));
                         });
  return acc;
}

// Copies a 1-dof series into slot j of an ndof-dof space.
TruncatedSeries embed(const TruncatedSeries& f, std::size_t slot, std::size_t ndof) {
  std::vector<Term> terms;
  for (const auto& [idx, c] : f.terms()) {
    MultiIndex r = unit_index(ndof);
    r.k = idx.k;
    r.alpha[slot] = idx.alpha[0];
    r.beta[slot] = idx.beta[0];
    terms.emplace_back(std::move(r), c);
  }
  return make_series(terms, f.kind(), ndof, f.caps());
}

TEST(StarProduct, CanonicalRelations) {
  const Caps c{2, 6};
  const auto p = poly1({{0, 0, 1, 1}}, T, c);
  const auto q = poly1({{0, 1, 0, 1}}, T, c);
  const Caps out{2, 2};
  EXPECT_EQ(star_product(p, q), poly1({{0, 1, 1, 1}, {1, 0, 0, 1}}, T, out));
  EXPECT_EQ(star_product(q, p), poly1({{0, 1, 1, 1}}, T, out));
  EXPECT_EQ(star_commutator(p, q), poly1({{1, 0, 0, 1}}, T, out));
  EXPECT_TRUE(star_commutator(q, q).is_zero());
  EXPECT_EQ(star_product(p, q).coefficient(idx1(1, 0, 0)), 1);
}

TEST(StarProduct, SquaresAndCommutator) {
  const Caps c{2, 8};
  const auto p2 = poly1({{0, 0, 2, 1}}, T, c);
  const auto q2 = poly1({{0, 2, 0, 1}}, T, c);
  const auto q = poly1({{0, 1, 0, 1}}, T, c);
  EXPECT_EQ(star_product(p2, q2), poly1({{0, 2, 2, 1}, {1, 1, 1, 4}, {2, 0, 0, 2}}, T, Caps{2, 4}));
  EXPECT_EQ(star_commutator(p2, q), poly1({{1, 0, 1, 2}}, T, Caps{2, 4}));
}

TEST(StarProduct, Errors) {
  const auto xi = zero_series(SeriesKind::Xi, 1, Caps{1, 4});
  const auto t = zero_series(T, 1, Caps{1, 4});
  try {
    star_product(xi, xi);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::KindMismatch);
  }
  try {
    star_product(t, zero_series(T, 2, Caps{1, 4}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
  try {
    star_product(zero_series(T, 1, Caps{3, 5}), zero_series(T, 1, Caps{3, 5}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CapsExhausted);
  }
}

TEST(EulerDivergence, Factorials) {
  EXPECT_EQ(euler_divergence_check(0), std::vector<BigRational>{1});
  EXPECT_EQ(euler_divergence_check(3), (std::vector<BigRational>{1, 1, 2, 6}));
  const auto v = euler_divergence_check(12);
  for (unsigned k = 0; k <= 12; ++k) EXPECT_EQ(v[k], BigRational(factorial(k))) << k;
}

TEST(StarProduct, UnitAndClassicalLimit) {
  resurgent::testing::RandomSeries gen(17);
  for (int trial = 0; trial < 10; ++trial) {
    const Caps c{3, 12};
    const auto f = gen.poly(T, 1, c, 6, 3, 6);
    const auto g = gen.poly(T, 1, c, 6, 3, 6);
    const auto one = constant_series(1, T, 1, c);
    const auto out = Caps{3, 6};
    EXPECT_EQ(star_product(one, f), truncate(f, out));
    EXPECT_EQ(star_product(f, one), truncate(f, out));
    EXPECT_EQ(dual_slice(star_product(f, g), 0), truncate(mul(dual_slice(f, 0), dual_slice(g, 0)), out));
  }
}

TEST(StarProduct, QOnlyFactorsCommute) {
  const Caps c{3, 12};
  const auto f = poly1({{0, 3, 0, 2}, {1, 1, 0, -1}, {0, 0, 0, 5}}, T, c);
  const auto g = poly1({{0, 2, 0, 1}, {2, 4, 0, 3}}, T, c);
  EXPECT_EQ(star_product(f, g), truncate(mul(f, g), Caps{3, 6}));
}

class StarFuzz : public ::testing::TestWithParam<int> {};

TEST_P(StarFuzz, MatchesReferenceKernel) {
  resurgent::testing::RandomSeries gen(500 + GetParam());
  const std::size_t ndof = GetParam() % 2 ? 2 : 1;
  const Caps c{3, 10};
  const auto f = gen.poly(T, ndof, c, 6, 3, 6);
  const auto g = gen.poly(T, ndof, c, 6, 3, 6);
  EXPECT_EQ(star_product(f, g), reference_star(f, g));
}

TEST_P(StarFuzz, Associativity) {
  resurgent::testing::RandomSeries gen(700 + GetParam());
  const std::size_t ndof = GetParam() % 2 ? 2 : 1;
  const Caps c{3, 14};
  const auto f = gen.poly(T, ndof, c, 5, 3, 5);
  const auto g = gen.poly(T, ndof, c, 5, 3, 5);
  const auto h = gen.poly(T, ndof, c, 5, 3, 5);
  EXPECT_EQ(star_product(star_product(f, g), h), star_product(f, star_product(g, h)));
}

TEST_P(StarFuzz, TwoDofFactorization) {
  resurgent::testing::RandomSeries gen(900 + GetParam());
  const Caps c{3, 12};
  const auto f1 = gen.poly(T, 1, c, 4, 1, 3), f2 = gen.poly(T, 1, c, 4, 1, 3);
  const auto g1 = gen.poly(T, 1, c, 4, 1, 3), g2 = gen.poly(T, 1, c, 4, 1, 3);
  const auto f = mul(embed(f1, 0, 2), embed(f2, 1, 2));
  const auto g = mul(embed(g1, 0, 2), embed(g2, 1, 2));
  const auto lhs = star_product(f, g);
  const auto rhs = mul(embed(star_product(f1, g1), 0, 2), embed(star_product(f2, g2), 1, 2));
  EXPECT_EQ(lhs, truncate(rhs, lhs.caps()));
}

TEST_P(StarFuzz, GeneralPoleFormula) {
  resurgent::testing::RandomSeries gen(1100 + GetParam());
  const BigRational a = gen.uniform(-2, 2), b = gen.uniform(-2, 2), cc = gen.uniform(-2, 2), d = gen.uniform(-2, 2);
  const int K_t = 4, K_qp = 6;
  const Caps in{K_t, K_qp + 2 * K_t};
  auto factor = [&](const BigRational& cp, const BigRational& cq) {
    const auto u = make_series({{idx1(0, 0, 1), cp}, {idx1(0, 1, 0), cq}}, T, 1, in);
    return oracles::inverse_power_of_linear(u, 0);
  };
  const auto lhs = star_product(factor(a, b), factor(cc, d));
  EXPECT_EQ(lhs, oracles::general_pole_star_oracle(a, b, cc, d, K_t, K_qp));
}

INSTANTIATE_TEST_SUITE_P(Fuzz, StarFuzz, ::testing::Range(0, 16));

TEST(StarProduct, ThreadCountDoesNotChangeResult) {
  // Dense 2-dof inputs: every monomial with k <= 2 and qp-degree <= 4.
  resurgent::testing::RandomSeries gen(77);
  const Caps c{2, 8};
  auto dense = [&] {
    std::vector<Term> terms;
    for (Exponent k = 0; k <= 2; ++k)
      for (Exponent a0 = 0; a0 <= 4; ++a0)
        for (Exponent a1 = 0; a0 + a1 <= 4; ++a1)
          for (Exponent b0 = 0; a0 + a1 + b0 <= 4; ++b0)
            for (Exponent b1 = 0; a0 + a1 + b0 + b1 <= 4; ++b1)
              terms.emplace_back(MultiIndex{k, {a0, a1}, {b0, b1}}, BigRational(gen.uniform(1, 9)));
    return make_series(terms, T, 2, c);
  };
  const auto f = dense();
  const auto g = dense();
  ASSERT_GE(f.size() * g.size(), 4096u);
  setenv("RESURGENT_THREADS", "1", 1);
  const auto serial = star_product(f, g);
  setenv("RESURGENT_THREADS", "4", 1);
  const auto threaded = star_product(f, g);
  unsetenv("RESURGENT_THREADS");
  EXPECT_EQ(serial, threaded);
}

}  // namespace
