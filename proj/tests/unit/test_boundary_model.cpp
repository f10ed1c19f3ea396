#include "nhres/boundary_model.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace nhres;

namespace {
RationalComplex q(long a, long b = 1) { return RationalComplex::ratio(a, b); }
const RationalComplex I = RationalComplex::i();
}  // namespace

TEST(Potential, Examples) {
  EXPECT_EQ(bm_potential(BoundaryModel(0, {0, 1}), {3.0, 0}), cplx(0.0));
  EXPECT_NEAR(std::abs(bm_potential(BoundaryModel(2, {0, 1}), {1.0, 1.0}) - 6.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(bm_potential(BoundaryModel(2, {0, 1}), {0.0, 0}) + 6.0), 0.0, 1e-14);
  EXPECT_THROW(bm_potential(BoundaryModel(2, {0, 1}), {0.0, 1.0}), std::domain_error);
}

TEST(Model, Validation) {
  EXPECT_THROW(BoundaryModel(-1, {0, 1}), std::invalid_argument);
  EXPECT_THROW(BoundaryModel(2, {1, 0}), std::invalid_argument);
  EXPECT_THROW(BoundaryModel(kMaxBoundaryOrder + 1, {0, 1}), std::invalid_argument);
}

TEST(Assoc, Examples) {
  EXPECT_EQ(bm_assoc(2, 0), ExpLaurent::monomial(q(-3), 0, -2, 0, 0, 1));
  EXPECT_EQ(bm_assoc(2, 1), ExpLaurent::monomial(q(-1, 2), 0, 0, 0, 0, 1));
  EXPECT_EQ(bm_assoc(1, 0), ExpLaurent::monomial(-I, 0, -1, 0, 0, 1));
}

TEST(Assoc, ChainProperty) {
  for (int n = 0; n <= 6; ++n) {
    EXPECT_TRUE(el_apply_h(bm_assoc(n, 0), n).is_zero());
    for (int l = 1; l <= n + 2; ++l) EXPECT_EQ(el_apply_h(bm_assoc(n, l), n), bm_assoc(n, l - 1)) << n << "," << l;
  }
}

TEST(Growing, Examples) {
  EXPECT_EQ(bm_growing(0, 0), ExpLaurent::monomial(1, 0, 1));
  EXPECT_EQ(bm_growing(0, 1), ExpLaurent::monomial(q(-1, 6), 0, 3));
  EXPECT_EQ(bm_growing(1, 0), ExpLaurent::monomial(1, 0, 2));
}

TEST(Growing, ChainProperty) {
  for (int n = 0; n <= 6; ++n) {
    EXPECT_TRUE(el_apply_h(bm_growing(n, 0), n).is_zero());
    for (int l = 1; l <= 4; ++l) EXPECT_EQ(el_apply_h(bm_growing(n, l), n), bm_growing(n, l - 1));
  }
}

TEST(Scatter, Examples) {
  EXPECT_EQ(bm_scatter(0), ExpLaurent::monomial(1, 0, 0, 1, 1, 1));
  ExpLaurent::Terms t2{{{2, 0}, q(1)}, {{1, -1}, RationalComplex(0, 3)}, {{0, -2}, q(-3)}};
  EXPECT_EQ(bm_scatter(2), ExpLaurent(1, 1, 1, t2));
  ExpLaurent::Terms t1{{{1, 0}, q(1)}, {{0, -1}, I}};
  EXPECT_EQ(bm_scatter(1), ExpLaurent(1, 1, 1, t1));
}

TEST(Scatter, LadderAgreesWithExplicitSum) {
  for (int n = 0; n <= kMaxBoundaryOrder; ++n) EXPECT_EQ(bm_scatter_ladder(n), bm_scatter(n)) << n;
}

TEST(Scatter, EigenEquation) {
  const auto k2 = ExpLaurent::monomial(1, 2, 0);
  for (int n = 0; n <= kMaxBoundaryOrder; ++n) EXPECT_EQ(el_apply_h(bm_scatter(n), n), k2 * bm_scatter(n)) << n;
}

TEST(Scatter, AsymptoticNormalisation) {
  for (int n = 0; n <= kMaxBoundaryOrder; ++n) EXPECT_EQ(bm_scatter(n).coefficient(n, 0), q(1));
}

TEST(Scatter, NumericEigenEquationByFiniteDifference) {
  BoundaryModel m(3, {0.4, -0.8});
  const cplx k(1.1, 0.0);
  const double h = 1e-4;
  for (double x : {-2.0, 0.1, 3.5}) {
    auto f = [&](double t) { return bm_scatter_eval(m, cplx(t, 0), k); };
    cplx d2 = (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
    cplx res = -d2 + bm_potential(m, x) * f(x) - k * k * f(x);
    EXPECT_LT(std::abs(res), 1e-5 * (1 + std::abs(f(x))));
  }
}

TEST(Intertwining, MonomialBasis) {
  for (int n = 1; n <= 6; ++n)
    for (int sigma = -1; sigma <= 1; ++sigma)
      for (int m = 0; m <= 2; ++m)
        for (int p = -3; p <= 3; ++p) {
          auto f = ExpLaurent::monomial(1, m, p, sigma, 0, 1);
          EXPECT_EQ(el_apply_h(el_apply_q(f, n, QSign::Plus), n), el_apply_q(el_apply_h(f, n - 1), n, QSign::Plus));
          EXPECT_EQ(el_apply_q(el_apply_h(f, n), n, QSign::Minus), el_apply_h(el_apply_q(f, n, QSign::Minus), n - 1));
        }
}

TEST(Classify, Examples) {
  EXPECT_EQ(bm_classify(2, 1), ChainClass::BoundedNonNormalizable);
  EXPECT_EQ(bm_classify(3, 1), ChainClass::Normalizable);
  EXPECT_EQ(bm_classify(2, 2), ChainClass::Growing);
}

TEST(Classify, AgreesWithDegree) {
  for (int n = 0; n <= 8; ++n)
    for (int l = 0; l <= n + 2; ++l) {
      auto f = bm_assoc(n, l);
      int p = f.terms().begin()->first.second;  // single monomial (x-z)^{2l-n}
      ChainClass c = bm_classify(n, l);
      if (p <= -1) EXPECT_EQ(c, ChainClass::Normalizable);
      else if (p == 0) EXPECT_EQ(c, ChainClass::BoundedNonNormalizable);
      else EXPECT_EQ(c, ChainClass::Growing);
    }
}
