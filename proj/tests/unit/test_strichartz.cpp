#include <gtest/gtest.h>

#include <cmath>

#include "dlab/lattice.hpp"
#include "dlab/strichartz.hpp"

using namespace dlab;

namespace {

FreqField random_freq(const DomainSpec& spec, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  FreqField g(spec);
  for (auto& v : g.data()) v = complex_normal(rng);
  return g;
}

std::size_t mode_index(const DomainSpec& spec, std::array<int, kMaxDim> k) {
  return grid_for(spec)->flatten_signed(k);
}

FreqRect rect(Vec4 center, double size, Vec4 normal, double thickness) {
  FreqRect r;
  r.center = center;
  r.size = size;
  r.normal = normal;
  r.thickness = thickness;
  return r;
}

CVec random_coeff(std::size_t n, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  CVec c(n);
  for (auto& v : c) v = complex_normal(rng);
  return c;
}

}  // namespace

TEST(StrichartzRatio, SingleModeValue) {
  const DomainSpec spec = DomainSpec::make(0, 4, 8);
  FreqField g(spec);
  g[mode_index(spec, {1, 0, 0, 0})] = 2.5;
  const FreqRect R = rect({1, 0, 0, 0}, 2, {0, 1, 0, 0}, 1);
  EXPECT_NEAR(strichartz_ratio(g, R), 1.0 / (2.0 * kPi), 1e-12);
}

TEST(StrichartzRatio, DisjointRectangleIsDegenerate) {
  const DomainSpec spec = DomainSpec::make(0, 4, 8);
  FreqField g(spec);
  g[mode_index(spec, {3, 0, 0, 0})] = 1.0;
  const FreqRect R = rect({-2, 0, 0, 0}, 1, {1, 0, 0, 0}, 1);
  EXPECT_THROW(strichartz_ratio(g, R), DegenerateInputError);
}

TEST(StrichartzRatio, Homogeneity) {
  const DomainSpec spec = DomainSpec::make(2, 2, 8);
  const FreqField g = random_freq(spec, 1);
  const FreqRect R = rect({0, 0, 0, 0}, 2, {0.6, 0, 0.8, 0}, 1);
  const double a = strichartz_ratio(g, R);
  for (cplx c : {cplx(3.0, 0.0), cplx(-0.2, 1.7), cplx(1e-5, 0)}) {
    FreqField h = g;
    h *= c;
    EXPECT_NEAR(strichartz_ratio(h, R), a, 1e-12 * a);
  }
}

TEST(StrichartzRatio, GalileanCovariance) {
  const DomainSpec spec = DomainSpec::make(0, 4, 8);
  const FreqField g = random_freq(spec, 2);
  const Vec4 xi0{1, -1, 0, 1};
  const FreqRect R = rect(xi0, 1, {0, 0, 1, 0}, 1);
  const FreqRect R0 = rect({0, 0, 0, 0}, 1, {0, 0, 1, 0}, 1);
  const FreqField g0 = galilean_shift(project_rect(g, R), {-1, 1, 0, -1});
  const double a = strichartz_ratio(g, R), b = strichartz_ratio(g0, R0);
  EXPECT_NEAR(a, b, 1e-8 * a);
}

TEST(Quartic, ValueMatchesSpacetimeNorm) {
  const DomainSpec spec = DomainSpec::make(1, 3, 8);
  const FreqRect R = rect({0, 0, 0, 0}, 2, {0, 0, 0, 1}, 1);
  const QuarticFunctional F(spec, rect_modes(spec, R), 4.0, {});
  const CVec c = random_coeff(F.mode_count(), 3);
  const double lq = spacetime_lq(F.embed(c), 4.0, 0.0, 1.0, 64);
  EXPECT_NEAR(F.value(c), std::pow(lq, 4), 1e-11 * std::pow(lq, 4));
}

TEST(Quartic, GradientMatchesFiniteDifferences) {
  for (double q : {4.0, 6.0}) {
    const DomainSpec spec = DomainSpec::make(0, 4, 8);
    const FreqRect R = rect({0, 0, 0, 0}, 2, {1, 0, 0, 0}, 1);
    const QuarticFunctional F(spec, rect_modes(spec, R), q, {0.0, 1.0, 16});
    const CVec c = random_coeff(F.mode_count(), 4);
    const CVec h = random_coeff(F.mode_count(), 5);
    CVec G;
    F.value_and_gradient(c, G);
    double analytic = 0.0;
    for (std::size_t k = 0; k < G.size(); ++k) analytic += (std::conj(G[k]) * h[k]).real();
    analytic *= spec.freq_weight();
    const double eps = 1e-5;
    CVec cp = c, cm = c;
    for (std::size_t k = 0; k < c.size(); ++k) {
      cp[k] += eps * h[k];
      cm[k] -= eps * h[k];
    }
    const double numeric = (F.value(cp) - F.value(cm)) / (2 * eps);
    EXPECT_NEAR(analytic, numeric, 1e-6 * std::abs(numeric)) << "q=" << q;
  }
}

TEST(Ascent, MonotoneAndImproves) {
  const DomainSpec spec = DomainSpec::make(0, 4, 8);
  const FreqRect R = rect({0, 0, 0, 0}, 2, {0.6, 0.8, 0, 0}, 1);
  const QuarticFunctional F(spec, rect_modes(spec, R), 4.0, {});
  const AscentResult r = ascend(F, random_coeff(F.mode_count(), 6));
  ASSERT_GE(r.phi_history.size(), 2u);
  for (std::size_t i = 1; i < r.phi_history.size(); ++i) EXPECT_GE(r.phi_history[i], r.phi_history[i - 1]);
  EXPECT_GE(r.ratio, r.initial_ratio);
}

TEST(MaximizeRatio, SingleModeRectangle) {
  // On T with 4 nodes, the cube around -2 meets the slab |xi + 3| <= 1 only at -2.
  const DomainSpec spec = DomainSpec::make(0, 1, 4);
  FreqRect R = rect({-2, 0, 0, 0}, 1, {1, 0, 0, 0}, 1);
  R.offset = -3;
  ASSERT_EQ(rect_modes(spec, R).size(), 1u);
  const ScanRecord rec = maximize_ratio(spec, R, 4.0, 3, {}, 7);
  EXPECT_NEAR(rec.K, std::pow(2.0 * kPi, -0.25), 1e-12);
}

TEST(MaximizeRatio, BeatsRawTrialsAndGrowsWithTrials) {
  const DomainSpec spec = DomainSpec::make(0, 4, 8);
  const FreqRect R = rect({0, 0, 0, 0}, 2, {0, 0, 1, 0}, 1);
  const QuarticFunctional F(spec, rect_modes(spec, R), 4.0, {});
  const AscentOptions opt;
  const ScanRecord two = maximize_ratio(spec, R, 4.0, 2, opt, 9);
  const ScanRecord four = maximize_ratio(spec, R, 4.0, 4, opt, 9);
  EXPECT_GE(four.K, two.K);
  for (std::uint64_t t = 0; t < 4; ++t) {
    const TrialResult tr = run_trial(F, derive_seed(derive_seed(9, 0x7472), t), opt);
    EXPECT_GE(tr.ratio, tr.raw_ratio);
    EXPECT_LE(tr.ratio, four.K + 1e-12);
  }
}

TEST(Fit, ExactLogLinearData) {
  std::vector<ScanRecord> recs;
  for (double l : {4.0, 8.0, 16.0, 32.0})
    for (double mu : dyadic_up_to(l)) {
      ScanRecord r;
      r.lambda = l;
      r.mu = mu;
      r.K = 0.3 * std::sqrt(l) * std::pow(mu / l, 1.0 / 12.0);
      recs.push_back(r);
    }
  const FitResult f = fit_exponents(recs);
  EXPECT_NEAR(f.alpha, 0.5, 1e-10);
  EXPECT_NEAR(f.delta_hat, 1.0 / 12.0, 1e-10);
  EXPECT_NEAR(f.C, 0.3, 1e-10);
  EXPECT_LT(f.residual_linf, 1e-10);
  EXPECT_NEAR(envelope_constant(recs, 1.0 / 12.0), 0.3, 1e-12);
}

TEST(Fit, ConstantDataAndDegenerateDesign) {
  std::vector<ScanRecord> recs;
  for (double l : {4.0, 8.0, 16.0})
    for (double mu : {l / 2, l}) {
      ScanRecord r;
      r.lambda = l;
      r.mu = mu;
      r.K = 2.0;
      recs.push_back(r);
    }
  FitResult f = fit_exponents(recs);
  EXPECT_NEAR(f.alpha, 0.0, 1e-12);
  EXPECT_NEAR(f.delta_hat, 0.0, 1e-12);

  std::vector<ScanRecord> diag;
  for (double l : {4.0, 8.0, 16.0}) {
    ScanRecord r;
    r.lambda = r.mu = l;
    r.K = std::pow(l, 0.25);
    diag.push_back(r);
  }
  f = fit_exponents(diag);
  EXPECT_TRUE(f.alpha_only);
  EXPECT_NEAR(f.alpha, 0.25, 1e-12);
  diag.pop_back();
  EXPECT_THROW(fit_exponents(diag), ArgumentError);
}

TEST(Scan, TrialRangesMergeToTheFullScan) {
  const DomainSpec spec = DomainSpec::make(0, 4, 4);
  ScanConfig cfg;
  cfg.lambdas = {1, 2, 4};
  cfg.rects = 2;
  cfg.trials = 4;
  cfg.T.nt = 16;
  cfg.ascent.steps = 20;
  cfg.seed = 3;
  const auto full = scan_dyadic(spec, cfg);
  ScanConfig a = cfg, b = cfg;
  a.trials = 2;
  b.trials = 2;
  b.first_trial = 2;
  const auto merged = merge_scans(scan_dyadic(spec, a), scan_dyadic(spec, b));
  ASSERT_EQ(full.size(), merged.size());
  for (std::size_t i = 0; i < full.size(); ++i) {
    EXPECT_EQ(full[i].K, merged[i].K);
    EXPECT_EQ(full[i].trials, merged[i].trials);
  }
}

TEST(Scan, DeterministicAndSane) {
  const DomainSpec spec = DomainSpec::make(2, 2, 4);
  ScanConfig cfg;
  cfg.lambdas = {1, 2, 4};
  cfg.rects = 2;
  cfg.trials = 2;
  cfg.T.nt = 16;
  cfg.ascent.steps = 10;
  const auto a = scan_dyadic(spec, cfg);
  const auto b = scan_dyadic(spec, cfg);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].K, b[i].K);
    EXPECT_GE(a[i].K, 0.0);
    EXPECT_LE(a[i].mu, a[i].lambda);
  }
  cfg.lambdas = {2, 4};
  EXPECT_THROW(scan_dyadic(spec, cfg), ArgumentError);
}

TEST(Rect, ValidationAndSampling) {
  const DomainSpec spec = DomainSpec::make(3, 1, 8);
  EXPECT_THROW(rect({0, 0, 0, 0}, 3, {1, 0, 0, 0}, 1).validate(4), ArgumentError);
  EXPECT_THROW(rect({0, 0, 0, 0}, 4, {1, 1, 0, 0}, 1).validate(4), ArgumentError);
  EXPECT_THROW(rect({0, 0, 0, 0}, 4, {1, 0, 0, 0}, 8).validate(4), ArgumentError);
  const FreqRect r = sample_rect(spec, 8, 2, 11);
  EXPECT_NO_THROW(r.validate(4));
  EXPECT_EQ(r.size, 8);
  EXPECT_EQ(r.thickness, 2);
}

TEST(Atom, OnePieceIsTheLinearSolution) {
  const DomainSpec spec = DomainSpec::make(0, 4, 8);
  const FreqRect R = rect({0, 0, 0, 0}, 2, {1, 0, 0, 0}, 1);
  FreqField g = project_rect(random_freq(spec, 12), R);
  g *= 1.0 / l2_norm(g);
  const double a = u4_atom_ratio({{0.0, 1.0, g}}, R);
  EXPECT_NEAR(a, strichartz_ratio(g, R), 1e-12);
}

TEST(Atom, DisjointPiecesAddInFourthPower) {
  const DomainSpec spec = DomainSpec::make(0, 4, 8);
  const FreqRect R = rect({0, 0, 0, 0}, 2, {0, 1, 0, 0}, 1);
  FreqField g = project_rect(random_freq(spec, 13), R);
  g *= std::pow(0.5, 0.25) / l2_norm(g);
  const double whole = u4_atom_ratio({{0.0, 0.5, g}, {0.5, 1.0, g}}, R);
  const double p1 = spacetime_lq(g, 4.0, 0.0, 0.5, 64);
  const double p2 = spacetime_lq(g, 4.0, 0.5, 1.0, 64);
  EXPECT_NEAR(std::pow(whole, 4), std::pow(p1, 4) + std::pow(p2, 4), 1e-13);
  EXPECT_THROW(u4_atom_ratio({{0.0, 1.0, 2.0 * g}}, R), ArgumentError);
}

TEST(Dve, Examples) {
  // Indicator of mu = lambda.
  const double lam = 16.0, delta = 0.25;
  const double ind = std::pow(1.0 / lam + 1.0, 2 * delta);
  EXPECT_LE(ind, std::pow(2.0, 2 * delta));
  const DveResult r = dve_check(1.0 / 12.0, 1024.0, 2000, 5);
  EXPECT_LE(r.empirical, r.certificate);
  double cert = 0.0;
  for (double mu = 1.0; mu <= 1024.0; mu *= 2.0) cert += std::pow(1.0 / mu + mu / 1024.0, 1.0 / 6.0);
  EXPECT_NEAR(r.certificate, cert, 1e-12);
  // All-ones sequence: |sum b|^2 <= certificate * count.
  double s = 0.0;
  int count = 0;
  for (double mu = 1.0; mu <= lam; mu *= 2.0, ++count) s += std::pow(1.0 / mu + mu / lam, delta);
  EXPECT_LE(s * s / count, dve_check(delta, lam, 1, 1).certificate);
  EXPECT_THROW(dve_check(0.0, 16, 1, 1), ArgumentError);
}

TEST(Lattice, EnvelopeExponents) {
  EXPECT_EQ(envelope_delta(3, 1), 0.25);
  EXPECT_EQ(envelope_delta(2, 2), 1.0 / 12.0);
  EXPECT_TRUE(is_open_case(1, 3));
  EXPECT_TRUE(is_open_case(0, 4));
}
