#include <gtest/gtest.h>

#include <cmath>

#include "dlab/counting.hpp"
#include "oracles.hpp"

using namespace dlab;

namespace {

ConvSetQuery query(int m, int n, double lambda, double mu, Vec4 xi, Vec4 a, double tau) {
  ConvSetQuery q;
  q.m = m;
  q.n = n;
  q.lambda = lambda;
  q.mu = mu;
  q.xi = xi;
  q.a = a;
  q.tau = tau;
  return q;
}

}  // namespace

TEST(Annulus, HandValues) {
  EXPECT_DOUBLE_EQ(annulus_measure({0, 0, 0, 1}), 2.0);
  EXPECT_NEAR(annulus_measure({0, 0, 0, 4}), 4.0 + 4.0 * std::sqrt(3.0), 1e-13);
  // Translation along the line changes nothing.
  EXPECT_EQ(annulus_measure({3.3, 0, 0.2, 2}), annulus_measure({3.3, -17.5, 0.2, 2}));
  EXPECT_THROW(annulus_measure({-1, 0, 0, 1}), ArgumentError);
}

TEST(Annulus, StableForHugeRadius) {
  // Thin annulus at c = 1e12: direct sqrt differences would lose most digits.
  const double v = annulus_measure({1e12, 0, 0, 1});
  EXPECT_GT(v, 0.0);
  EXPECT_LT(v / 1.0, 10.0);
}

TEST(Annulus, AgreesWithMonteCarlo) {
  Rng rng = make_rng(2024);
  int outside = 0;
  for (int i = 0; i < 50; ++i) {
    AnnulusQuery q{uniform(rng, 0, 40), uniform(rng, -3, 3), uniform01(rng), uniform(rng, 1, 8)};
    const auto est = oracle::annulus_mc(q, 1000000, rng);
    const double exact = annulus_measure(q);
    if (std::abs(exact - est.mean) > 3.0 * est.stderr_ + 1e-12) ++outside;
  }
  // At 3 standard errors a couple of misses in 50 would still be plausible;
  // the closed form is expected to sit inside every band here.
  EXPECT_LE(outside, 1);
}

TEST(Annulus, SupScanBounded) {
  const auto rows = annulus_sup_scan({1, 2, 4, 8, 16}, 2000, 7);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_GE(rows[0].sup_ratio, 2.0);
  for (const auto& r : rows) {
    EXPECT_LE(r.sup_ratio, 10.0);
    EXPECT_GE(r.sup_ratio, std::max(r.sup_e0, r.sup_ehalf));
  }
}

TEST(SetMeasure, EmptyForVeryNegativeTau) {
  const ConvSetQuery q = query(3, 1, 8, 2, {0, 0, 0, 0}, {1, 0, 0, 0}, -4 * 64 - 10);
  const SetMeasures s = set_measures(q, 8.0 / 64);
  EXPECT_EQ(s.B, 0.0);
  EXPECT_EQ(s.A, 0.0);
}

TEST(SetMeasure, AgreesWithRiemannSums) {
  const ConvSetQuery qs[] = {
      query(3, 1, 4, 2, {0.7, -1.1, 0.3, 1}, {0.48, 0.6, 0, 0.64}, -6.0),
      query(2, 2, 4, 1, {1.2, 0.4, -1, 2}, {0.6, 0, 0.8, 0}, -9.0),
      query(3, 1, 4, 4, {0, 0, 0, 0}, {0, 0, 0, 1}, -8.0),
  };
  for (const auto& q : qs) {
    const SetMeasures fast = set_measures(q, q.lambda / 128);
    const SetMeasures ref = oracle::set_measures_riemann(q, q.lambda / 128);
    EXPECT_NEAR(fast.B, ref.B, 0.03 * ref.B) << q.m;
    EXPECT_NEAR(fast.B2, ref.B2, 0.03 * ref.B2) << q.m;
    EXPECT_NEAR(fast.A, ref.A, 0.03 * ref.A) << q.m;
  }
}

TEST(SetMeasure, ContainedInRectangleWhenMuIsLambda) {
  // B is inside R; |R| <= (2 lambda)^3 (2 lambda + 1) on R^3 x T.
  const ConvSetQuery q = query(3, 1, 8, 8, {1, 2, 0, 1}, {0.6, 0.8, 0, 0}, -20.0);
  const double B = setB_measure(q).value;
  EXPECT_GT(B, 0.0);
  EXPECT_LE(B, std::pow(16.0, 3) * 17.0);
}

TEST(SetMeasure, FiberInequalityOnRandomQueries) {
  const auto qs = case_queries(3, 1, 8, 2, 100, 1.0, 99);
  for (const auto& q : qs) {
    const SetMeasures s = set_measures(q, q.lambda / 32);
    EXPECT_LE(s.A, 2.0 * q.cutoff * s.B2 * (1 + 1e-12));
  }
}

TEST(SetMeasure, ShrinksWithCutoff) {
  ConvSetQuery q = query(2, 2, 8, 2, {1, 0, 1, 0}, {0.6, 0, 0.8, 0}, -30.0);
  double prev = 1e300, first = 0.0;
  for (double c : {2.0, 1.0, 0.5, 0.25, 0.0625}) {
    q.cutoff = c;
    const double a = set_measures(q, 8.0 / 64).A;
    EXPECT_LE(a, prev);
    if (first == 0.0) first = a;
    prev = a;
  }
  // Thin shells: at least linear decay in the cutoff.
  EXPECT_GT(first, 0.0);
  EXPECT_LT(prev, first * 0.0625 / 2.0 * 1.5);
}

TEST(SetMeasure, RotationInsideLineFactor) {
  // Rotating xi and a together inside R^3 leaves |B| unchanged up to the
  // lattice resolution.
  const double c = std::cos(0.7), s = std::sin(0.7);
  auto rot = [&](Vec4 v) { return Vec4{c * v[0] - s * v[1], s * v[0] + c * v[1], v[2], v[3]}; };
  const Vec4 xi{2.0, 1.0, -1.0, 1};
  const Vec4 a{0.6, 0.0, 0.8, 0.0};
  const ConvSetQuery q1 = query(3, 1, 8, 2, xi, a, -18.0);
  const ConvSetQuery q2 = query(3, 1, 8, 2, rot(xi), rot(a), -18.0);
  const double b1 = setB_measure(q1).value, b2 = setB_measure(q2).value;
  EXPECT_NEAR(b1, b2, 0.02 * b1);
}

TEST(SetMeasure, HalvingFlag) {
  const ConvSetQuery q = query(3, 1, 8, 2, {1, 1, 0, 0}, {0, 0, 1, 0}, -20);
  const ResolvedMeasure r = setB_measure(q);
  EXPECT_TRUE(r.resolved);
  EXPECT_NEAR(r.value, r.refined, 0.01 * r.refined);
}

TEST(SetMeasure, Errors) {
  ConvSetQuery q = query(3, 1, 8, 2, {}, {1, 1, 0, 0}, 0);
  EXPECT_THROW(set_measures(q, 0.1), ArgumentError);
  q.a = {1, 0, 0, 0};
  q.mu = 16;
  EXPECT_THROW(set_measures(q, 0.1), ArgumentError);
}

TEST(I1, AxisAlignedCounts) {
  // a = (1,0,0,0): |eta1| <= mu for every eta4 in [-lambda, lambda].
  for (double lam : {8.0, 16.0})
    for (double mu : {1.0, 2.0, 4.0}) EXPECT_DOUBLE_EQ(i1_measure_31(1, 0, lam, mu), 2 * mu * (2 * lam + 1));
  // a1 = 0 on R^2 x T^2 (subcase b): the count fits in a lambda x w strip.
  const double lam = 16.0, mu = 2.0;
  const double w = std::cbrt(mu) * std::pow(lam, 2.0 / 3.0);
  const double cnt = i1_count_22(0.6, 0.8, lam, w);
  EXPECT_GT(cnt, 0.0);
  EXPECT_LE(cnt, (2 * lam + 1) * (2 * w + 1) * 2);
}

TEST(CaseBound, SmallReport) {
  CaseBoundConfig cfg;
  cfg.lambdas = {8};
  cfg.mus = {1, 8};
  cfg.samples = 16;
  const auto rows = case_bound_report(2, 2, cfg);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.fiber_violations, 0);
    EXPECT_GT(r.measure, 0.0);
    EXPECT_NEAR(r.normalized_ratio, r.measure / case_normalisation(2, 2, r.lambda, r.mu), 1e-12);
    EXPECT_EQ(r.queries, 16 + 4 * 5);
    EXPECT_FALSE(r.open_case);
  }
  EXPECT_TRUE(case_bound_report(1, 3, cfg)[0].open_case);
}

TEST(CaseBound, SubcaseSteering) {
  const double lam = 16, mu = 2;
  const double split = 0.5 * std::cbrt(mu / lam);
  const auto qs = case_queries(2, 2, lam, mu, 40, 1.0, 3);
  for (int i = 0; i < 40; ++i) {
    const double a1 = std::hypot(qs[i].a[0], qs[i].a[1]);
    if (i % 2 == 0)
      EXPECT_GE(a1, split);
    else
      EXPECT_LE(a1, split);
  }
}
