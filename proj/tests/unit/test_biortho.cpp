#include "nhres/biortho.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace nhres;

namespace {
const cplx kZ(0.0, 1.0);
BoundaryModel bm(int n) { return BoundaryModel{n, kZ}; }
double trace_value(const VerificationReport& r, const std::string& key) {
  for (const auto& [k, v] : r.trace)
    if (k == key) return std::stod(v);
  return NAN;
}
}  // namespace

TEST(OverlapZero, Examples) {
  for (auto [n, l, lp] : {std::tuple{2, 0, 0}, {2, 0, 1}, {1, 0, 0}}) {
    auto r = overlap_zero(bm(n), l, lp);
    EXPECT_TRUE(r.pass) << n << l << lp << " residual " << r.residual;
    EXPECT_LE(r.residual, 1e-8);
    EXPECT_EQ(r.relation, "ort1");
  }
}

TEST(OverlapZero, RejectsPrecondition) {
  EXPECT_THROW(overlap_zero(bm(2), 1, 1), std::invalid_argument);
  EXPECT_THROW(overlap_zero(bm(0), 0, 0), std::invalid_argument);
  EXPECT_THROW(overlap_zero(bm(3), -1, 0), std::invalid_argument);
}

TEST(OverlapZero, ExchangeSymmetry) {
  for (int n = 2; n <= 5; ++n)
    for (int l = 0; l < n; ++l)
      for (int lp = 0; l + lp <= n - 1; ++lp) {
        const double a = trace_value(overlap_zero(bm(n), l, lp), "value_re");
        const double b = trace_value(overlap_zero(bm(n), lp, l), "value_re");
        EXPECT_NEAR(a, b, 1e-12);
      }
}

TEST(OverlapChainScatter, Examples) {
  for (auto [n, l] : {std::pair{2, 0}, {2, 1}, {3, 2}}) {
    auto r = overlap_chain_scatter(bm(n), l, GaussianPacket{});
    EXPECT_TRUE(r.pass) << n << l << " residual " << r.residual;
  }
  EXPECT_EQ(overlap_chain_scatter(bm(3), 2).relation, "ort3n");
  EXPECT_EQ(overlap_chain_scatter(bm(3), 1).relation, "ort3");
  EXPECT_THROW(overlap_chain_scatter(bm(2), 2), std::invalid_argument);
}

TEST(OverlapGrowing, Examples) {
  struct Case {
    int n, l;
    GaussianPacket g;
    double target;
  };
  for (const auto& c : {Case{1, 1, {}, 1.0}, Case{1, 2, {}, -1.0}, Case{2, 2, {1.0, 1.0, {1.0}}, std::exp(-1.0)}}) {
    auto r = overlap_growing(bm(c.n), c.l, c.g);
    EXPECT_TRUE(r.pass) << c.n << c.l << " residual " << r.residual;
    EXPECT_NEAR(trace_value(r, "value_re"), c.target, 1e-6);
    EXPECT_NEAR(trace_value(r, "target_re"), c.target, 1e-9);
  }
  EXPECT_THROW(overlap_growing(bm(2), 1), std::invalid_argument);
}

TEST(OverlapGrowing, RecordsPhaseConvention) {
  auto r = overlap_growing(bm(1), 2);
  bool found = false;
  for (const auto& [k, v] : r.trace) found |= k == "convention";
  EXPECT_TRUE(found);
}

TEST(ScatterNorm, Examples) {
  const GaussianPacket g0{}, g1{1.0, 1.0, {1.0}};
  const double s = std::sqrt(std::numbers::pi / 2.0);
  auto r0 = scatter_norm(bm(0), g0, g0);
  EXPECT_TRUE(r0.pass);
  EXPECT_NEAR(trace_value(r0, "value_re"), s, 1e-6);
  auto r1 = scatter_norm(bm(1), g0, g0);
  EXPECT_TRUE(r1.pass);
  EXPECT_NEAR(trace_value(r1, "value_re"), s / 4.0, 1e-6);
  auto r2 = scatter_norm(bm(2), g0, g1);
  EXPECT_TRUE(r2.pass) << r2.residual;
}

TEST(ScatterNorm, TargetMatchesClosedForm) {
  // int e^{-k^2} e^{-(k-1)^2} k^4 dk: shift k = t + 1/2, weight e^{-2t^2 - 1/2}
  const double a = 2.0;
  auto mom = [&](int m) {  // int t^m e^{-a t^2}
    if (m % 2) return 0.0;
    return std::tgamma((m + 1) / 2.0) / std::pow(a, (m + 1) / 2.0);
  };
  double want = 0.0;
  const double binom[] = {1, 4, 6, 4, 1};
  for (int j = 0; j <= 4; ++j) want += binom[j] * std::pow(0.5, 4 - j) * mom(j);
  want *= std::exp(-0.5);
  EXPECT_NEAR(scatter_norm_target(2, GaussianPacket{}, GaussianPacket{1.0, 1.0, {1.0}}).real(), want, 1e-12);
}

TEST(ScatterNorm, MutationIsDetectedLinearly) {
  const GaussianPacket g{};
  BiorthoOptions opt;
  opt.stability_check = false;
  for (int n : {1, 2, 3}) {
    const double r3 = scatter_norm(bm(n), g, g, opt, 1e-3).residual;
    const double r2 = scatter_norm(bm(n), g, g, opt, 1e-2).residual;
    EXPECT_GT(r3, opt.tol) << n;
    EXPECT_NEAR(r2 / r3, 10.0, 0.5) << n;
    EXPECT_TRUE(scatter_norm(bm(n), g, g, opt, 0.0).pass);
  }
}

TEST(ScatterNorm, MutatedScatterOnlyTouchesOneTerm) {
  const ExpLaurent a = bm_scatter(3), b = mutated_scatter(3, 0.5);
  EXPECT_EQ(a.terms().size(), b.terms().size());
  int differ = 0;
  for (const auto& [key, c] : a.terms()) differ += !(b.coefficient(key.first, key.second) == c);
  EXPECT_EQ(differ, 1);
  EXPECT_EQ(mutated_scatter(3, 0.0), a);
}

TEST(BoundarySuite, AllPassUpToEight) {
  for (int n = 0; n <= 8; ++n)
    for (const auto& r : biortho_suite(bm(n))) {
      EXPECT_TRUE(r.pass) << r.id << " n=" << n << " residual " << r.residual;
      EXPECT_EQ(r.pass, r.residual <= r.tolerance);
    }
}

TEST(BoundarySuite, OtherPolePosition) {
  for (const auto& r : biortho_suite(BoundaryModel{3, cplx(0.4, -0.7)}))
    EXPECT_TRUE(r.pass) << r.id << " residual " << r.residual;
}

TEST(Interior, IdentityNamesRoundTrip) {
  for (auto id : {InteriorIdentity::Psi0Squared, InteriorIdentity::Psi0Psi1, InteriorIdentity::Psi0Scatter,
                  InteriorIdentity::Psi1Scatter, InteriorIdentity::ScatterNorm})
    EXPECT_EQ(interior_identity_from_string(to_string(id)), id);
  EXPECT_THROW(interior_identity_from_string("bogus"), std::invalid_argument);
}

TEST(Interior, Examples) {
  const InteriorModel m{1.0, kZ};
  EXPECT_TRUE(interior_biortho(m, InteriorIdentity::Psi0Squared, interior_default_packet(m)).pass);
  EXPECT_TRUE(interior_biortho(m, InteriorIdentity::Psi0Psi1, interior_default_packet(m)).pass);
  auto r = interior_biortho(m, InteriorIdentity::ScatterNorm, interior_default_packet(m));
  EXPECT_TRUE(r.pass) << r.residual;
  EXPECT_LE(r.tolerance, 1e-5);
}

TEST(Interior, DefaultPacketSitsAboveAlpha) {
  const InteriorModel m{0.7, kZ};
  const GaussianPacket g = interior_default_packet(m);
  EXPECT_GT(g.k0 - 4 * g.sigma, m.alpha + 0.1);
  EXPECT_LT(g.k0 + 4 * g.sigma, m.alpha + 1.0);
}

TEST(Interior, SuitePasses) {
  for (const auto& r : biortho_suite(InteriorModel{0.8, cplx(0.3, 1.2)}))
    EXPECT_TRUE(r.pass) << r.id << " residual " << r.residual;
}
