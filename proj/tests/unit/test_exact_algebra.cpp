#include "nhres/boundary_model.hpp"
#include "nhres/exact_algebra.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace nhres;

namespace {
RationalComplex q(long a, long b = 1) { return RationalComplex::ratio(a, b); }
const RationalComplex I = RationalComplex::i();
}  // namespace

TEST(Dfact, Examples) {
  EXPECT_EQ(dfact(0), q(1));
  EXPECT_EQ(dfact(-1), q(1));
  EXPECT_EQ(dfact(7), q(105));
  EXPECT_EQ(dfact(-5), q(1, 3));
  EXPECT_EQ(dfact(-3), q(-1));
  EXPECT_EQ(dfact(8), q(384));
}

TEST(Dfact, RejectsNegativeEven) {
  EXPECT_THROW(dfact(-2), std::invalid_argument);
  EXPECT_THROW(dfact(-6), std::invalid_argument);
}

TEST(RationalComplexTest, FieldOps) {
  RationalComplex a(q(1, 2).re(), q(3).re()), b(q(-2).re(), q(1, 5).re());
  EXPECT_EQ((a * b) / b, a);
  EXPECT_EQ(a - a, RationalComplex{});
  EXPECT_EQ(I * I, q(-1));
  EXPECT_EQ(RationalComplex::i_pow(-1), -I);
  EXPECT_THROW(a / RationalComplex{}, std::domain_error);
}

TEST(DiffX, Examples) {
  auto e = ExpLaurent::phase(1, 0);
  EXPECT_EQ(el_diff_x(e), ExpLaurent::monomial(I, 1, 0, 1, 0));
  EXPECT_EQ(el_diff_x(ExpLaurent::monomial(1, 0, -1)), ExpLaurent::monomial(-1, 0, -2));
  // psi_10 = -i/(sqrt(2pi)(x-z))
  auto psi10 = ExpLaurent::monomial(-I, 0, -1, 0, 0, 1);
  EXPECT_EQ(el_diff_x(psi10), ExpLaurent::monomial(I, 0, -2, 0, 0, 1));
}

TEST(ApplyQ, Examples) {
  EXPECT_TRUE(el_apply_q(bm_assoc(1, 0), 1, QSign::Minus).is_zero());
  EXPECT_EQ(el_apply_q(bm_assoc(2, 1), 2, QSign::Minus), -I * bm_assoc(1, 0));
  // (i/k) q_1^+ psi_0 = psi_1, scaled by k
  auto lhs = I * el_apply_q(bm_scatter(0), 1, QSign::Plus);
  EXPECT_EQ(lhs, bm_scatter(1));
}

TEST(ApplyQ, DescentForAllChains) {
  for (int n = 1; n <= 6; ++n)
    for (int l = 1; l <= n; ++l)
      EXPECT_EQ(el_apply_q(bm_assoc(n, l), n, QSign::Minus), -I * bm_assoc(n - 1, l - 1)) << n << "," << l;
}

TEST(LimitK0, Examples) {
  auto ez = ExpLaurent::phase(0, -1);
  EXPECT_EQ(el_limit_k0_deriv(ez * bm_scatter(2), 0), bm_assoc(2, 0));
  EXPECT_TRUE(el_limit_k0_deriv(ez * bm_scatter(1), 1).is_zero());
  EXPECT_EQ(el_limit_k0_deriv(ez * bm_scatter(1), 3), ExpLaurent::monomial(q(-2), 0, 2, 0, 0, 1));
}

TEST(LimitK0, RejectsNegativeKPowers) {
  EXPECT_THROW(el_limit_k0_deriv(ExpLaurent::monomial(1, -1, 0), 0), std::invalid_argument);
  EXPECT_THROW(el_limit_k0_deriv(bm_scatter(1), 0), std::invalid_argument);  // e^{ikz} still attached
}

TEST(LimitK0, ConnectsScatteringToChains) {
  auto ez = ExpLaurent::phase(0, -1);
  for (int n = 0; n <= 6; ++n)
    for (int l = 0; l <= n; ++l) {
      RationalComplex c = q(n % 2 ? -1 : 1) / RationalComplex(mpq_class(factorial(2 * l)));
      EXPECT_EQ(c * el_limit_k0_deriv(ez * bm_scatter(n), 2 * l), bm_assoc(n, l)) << n << "," << l;
    }
}

TEST(ExpLaurentTest, AdditionRequiresMatchingPhase) {
  EXPECT_THROW(ExpLaurent::phase(1, 0) + ExpLaurent::phase(0, 0), std::invalid_argument);
  EXPECT_EQ(ExpLaurent{} + ExpLaurent::phase(1, 1), ExpLaurent::phase(1, 1));
  EXPECT_TRUE((ExpLaurent::phase(1, 1) - ExpLaurent::phase(1, 1)).is_zero());
}

TEST(ExpLaurentTest, EvalMatchesDirectFormula) {
  auto f = bm_scatter(2);
  const cplx x(0.7, 0.0), k(1.3, 0.2), z(0.0, 1.0), u = x - z, Ic(0, 1);
  cplx direct = std::exp(Ic * k * x) * (k * k + 3.0 * Ic * k / u - 3.0 / (u * u)) / std::sqrt(2 * M_PI);
  EXPECT_NEAR(std::abs(f.eval(x, k, z) - direct), 0.0, 1e-13);
}

TEST(ExpLaurentProperty, RingLaws) {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 60; ++trial) {
    auto a = oracle::random_laurent(rng, 1, 0, 1);
    auto b = oracle::random_laurent(rng, 1, 0, 1);
    auto c = oracle::random_laurent(rng, 1, 0, 1);
    auto d = oracle::random_laurent(rng, -1, 1, 0);
    auto e = oracle::random_laurent(rng, 0, 0, 0);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * d, d * a);
    EXPECT_EQ((a * d) * e, a * (d * e));
    EXPECT_EQ((a + b) * d, a * d + b * d);
  }
}

TEST(ExpLaurentProperty, DiffIsDerivation) {
  std::mt19937 rng(777);
  for (int trial = 0; trial < 60; ++trial) {
    auto f = oracle::random_laurent(rng, 1, 1, 1);
    auto g = oracle::random_laurent(rng, -1, 0, 0);
    EXPECT_EQ(el_diff_x(f * g), el_diff_x(f) * g + f * el_diff_x(g));
  }
}

TEST(ExpLaurentProperty, HMatchesHandExpansion) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    int sigma = trial % 3 - 1;
    auto f = oracle::random_laurent(rng, sigma, 1, 1, 4);
    for (int n = 0; n <= 4; ++n)
      EXPECT_EQ(el_apply_h(f, n), oracle::h_by_hand(f, RationalComplex(long(n) * (n + 1))));
  }
}

TEST(ExpLaurentProperty, Factorization) {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 40; ++trial) {
    auto f = oracle::random_laurent(rng, trial % 3 - 1, 0, 1, 4);
    for (int n = 1; n <= 6; ++n) {
      EXPECT_EQ(el_apply_q(el_apply_q(f, n, QSign::Minus), n, QSign::Plus), el_apply_h(f, n));
      EXPECT_EQ(el_apply_q(el_apply_q(f, n, QSign::Plus), n, QSign::Minus), el_apply_h(f, n - 1));
    }
  }
}

TEST(ReflectK, Involution) {
  auto f = bm_scatter(3);
  EXPECT_EQ(el_reflect_k(el_reflect_k(f)), f);
  const cplx x(0.3, 0), k(0.9, 0.1), z(0.2, -1.0);
  EXPECT_NEAR(std::abs(el_reflect_k(f).eval(x, k, z) - f.eval(x, -k, z)), 0.0, 1e-13);
}
