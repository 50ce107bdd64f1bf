#include <gtest/gtest.h>

#include <cmath>

#include "dlab/bilinear.hpp"
#include "oracles.hpp"

using namespace dlab;

namespace {

SparseSpectrum sparse(const DomainSpec& spec, std::vector<LatticeMode> modes) { return {spec, std::move(modes)}; }

SparseSpectrum random_modes(const DomainSpec& spec, int reach, int count, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  SparseSpectrum s{spec, {}};
  for (int i = 0; i < count; ++i) {
    LatticeMode m;
    for (int a = 0; a < spec.dim(); ++a) m.k[a] = uniform_int(rng, -reach, reach);
    m.amp = complex_normal(rng);
    s.modes.push_back(m);
  }
  return s;
}

}  // namespace

TEST(Window, KernelMatchesFineQuadrature) {
  const Window w;
  for (double s : {0.0, 0.3, 1.0, 2.5, 3.9}) {
    // Fine trapezoid of psi^4 cos(st) on a long interval.
    const double dt = 0.01;
    double acc = 0.0;
    for (int j = -20000; j <= 20000; ++j) {
      const double t = j * dt;
      const double p = w(t);
      acc += p * p * p * p * std::cos(s * t);
    }
    EXPECT_NEAR(window4_kernel(s), acc * dt, 1e-10) << s;
  }
  EXPECT_EQ(window4_kernel(4.0), 0.0);
  EXPECT_EQ(window4_kernel(-7.0), 0.0);
}

TEST(Window, UnitIntervalKernel) {
  for (double s : {0.5, 3.0, -11.0}) {
    const cplx expect = (1.0 - std::exp(cplx(0, -s))) / cplx(0, s);
    EXPECT_NEAR(std::abs(unit_interval_kernel(s) - expect), 0.0, 1e-14);
  }
  EXPECT_NEAR(std::abs(unit_interval_kernel(0.0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(unit_interval_kernel(1e-9) - cplx(1.0, -0.5e-9)), 0.0, 1e-15);
}

TEST(Window, BandLimitedSpectrum) {
  const Window w;
  EXPECT_EQ(w.spectrum_shape(1.0), 0.0);
  EXPECT_EQ(w.spectrum_shape(-1.5), 0.0);
  EXPECT_GT(w.spectrum_shape(0.0), 0.0);
  EXPECT_FALSE(Window{WindowKind::gaussian}.band_limited());
}

TEST(Strips, WidthAndCount) {
  const DomainSpec spec = DomainSpec::make(0, 4, 8);
  const StripFamily thin = strip_decompose(spec, {16, 0, 0, 0}, 4, 16);
  EXPECT_EQ(thin.nu, 1.0);
  EXPECT_GE(thin.count(), 2 * 4);
  const StripFamily fat = strip_decompose(spec, {16, 0, 0, 0}, 16, 16);
  EXPECT_EQ(fat.nu, 16.0);
  EXPECT_LE(fat.count(), 5);
  EXPECT_THROW(strip_decompose(spec, {0, 0, 0, 0}, 4, 16), ArgumentError);
  EXPECT_THROW(strip_decompose(spec, {40, 0, 0, 0}, 4, 16), ArgumentError);
}

TEST(Strips, CoverageAndMultiplicity) {
  const DomainSpec spec = DomainSpec::make(0, 4, 8);
  const Vec4 c{11, -9, 5, 3};
  const StripFamily fam = strip_decompose(spec, c, 4, 16);
  int checked = 0;
  for (int a = -4; a <= 4; ++a)
    for (int b = -4; b <= 4; ++b)
      for (int e = -4; e <= 4; ++e)
        for (int f = -4; f <= 4; ++f) {
          const Vec4 xi{c[0] + a, c[1] + b, c[2] + e, c[3] + f};
          ASSERT_TRUE(fam.in_cube(xi));
          int hits = 0;
          for (int k = fam.k_min; k <= fam.k_max; ++k) hits += fam.strip_rect(k).contains(xi, 4);
          EXPECT_GE(hits, 1);
          EXPECT_LE(hits, 2);
          const int k = fam.strip_of(xi);
          EXPECT_TRUE(k >= fam.k_min && k <= fam.k_max);
          EXPECT_TRUE(fam.strip_rect(k).contains(xi, 4));
          ++checked;
        }
  EXPECT_EQ(checked, 6561);
}

TEST(TimeFrequency, SingleMode) {
  const DomainSpec spec = DomainSpec::make(0, 2, 8);
  const StripFamily fam = strip_decompose(spec, {4, 0, 0, 0}, 2, 4);
  const SparseSpectrum phi = sparse(spec, {{{4, 1, 0, 0}, 1.0}});
  const int k = fam.strip_of(phi.xi(phi.modes[0]));
  const TFSupport s = time_freq_support(phi, Window{}, fam, k);
  ASSERT_FALSE(s.empty);
  EXPECT_LT(s.lo, -17.0);
  EXPECT_GT(s.hi, -17.0);
  EXPECT_GE(s.lo, -18.0);
  EXPECT_LE(s.hi, -16.0);
  EXPECT_LE(s.c_estimate, 8.0);
}

TEST(TimeFrequency, EmptyAndPreconditions) {
  const DomainSpec spec = DomainSpec::make(0, 2, 8);
  const StripFamily fam = strip_decompose(spec, {4, 0, 0, 0}, 2, 4);
  EXPECT_TRUE(time_freq_support(sparse(spec, {}), Window{}, fam, 4).empty);
  const SparseSpectrum phi = sparse(spec, {{{4, 0, 0, 0}, 1.0}});
  EXPECT_THROW(time_freq_support(phi, Window{WindowKind::gaussian}, fam, 4), ArgumentError);
  EXPECT_THROW(time_freq_support(phi, Window{}, fam, 3), ArgumentError);
}

TEST(TimeFrequency, WideStripCentreTracksNuK) {
  const DomainSpec spec = DomainSpec::make(0, 4, 8);
  const StripFamily fam = strip_decompose(spec, {32, 0, 0, 0}, 16, 32);  // nu = 8
  Rng rng = make_rng(3);
  const SparseSpectrum u = random_cube_data(spec, fam, 256, rng);
  for (int k = fam.k_min; k <= fam.k_max; ++k) {
    const SparseSpectrum piece = restrict_to(u, fam, k);
    if (piece.modes.empty()) continue;
    EXPECT_LE(time_freq_support(piece, Window{}, fam, k).c_estimate, 8.0) << k;
  }
}

TEST(ProductNorm, MatchesDenseQuadrature) {
  const DomainSpec spec = DomainSpec::make(0, 2, 8);
  const SparseSpectrum a = random_modes(spec, 3, 5, 1);
  const SparseSpectrum b = random_modes(spec, 2, 4, 2);
  const Window w;
  const double win = oracle::product_norm_dense(
      a, b,
      [&](double t) {
        const double p = w(t);
        return p * p * p * p;
      },
      -64.0, 64.0, 6401, {16, 16});
  EXPECT_NEAR(product_norm_sq(a, b, TimeKernel::window4), win, 1e-9 * win);
  const double unit = oracle::product_norm_dense(a, b, [](double) { return 1.0; }, 0.0, 1.0, 20001, {16, 16});
  EXPECT_NEAR(product_norm_sq(a, b, TimeKernel::unit_interval), unit, 1e-7 * unit);
}

TEST(ProductNorm, MixedGeometryMatchesDenseQuadrature) {
  const DomainSpec spec = DomainSpec::make(1, 1, 8, 4.0 * kPi);
  const SparseSpectrum a = random_modes(spec, 3, 6, 5);
  const SparseSpectrum b = random_modes(spec, 3, 6, 6);
  const double unit = oracle::product_norm_dense(a, b, [](double) { return 1.0; }, 0.0, 1.0, 20001, {16, 16});
  EXPECT_NEAR(product_norm_sq(a, b, TimeKernel::unit_interval), unit, 1e-7 * unit);
}

TEST(Ortho, SingleStripIsExactlyOne) {
  const DomainSpec spec = DomainSpec::make(0, 4, 8);
  const StripFamily fam = strip_decompose(spec, {16, 0, 0, 0}, 4, 16);
  Rng rng = make_rng(4);
  const SparseSpectrum u1 = restrict_to(random_cube_data(spec, fam, 256, rng), fam, 16);
  const SparseSpectrum u2 = random_shell_data(spec, 4, 64, rng);
  ASSERT_FALSE(u1.modes.empty());
  EXPECT_DOUBLE_EQ(ortho_ratio(u1, u2, fam), 1.0);
}

TEST(Ortho, SeparatedStripsAreNearlyOrthogonal) {
  const DomainSpec spec = DomainSpec::make(0, 4, 8);
  const StripFamily fam = strip_decompose(spec, {16, 0, 0, 0}, 4, 16);
  Rng rng = make_rng(5);
  const SparseSpectrum cube = random_cube_data(spec, fam, 512, rng);
  SparseSpectrum u1 = restrict_to(cube, fam, 13);
  for (const auto& m : restrict_to(cube, fam, 19).modes) u1.modes.push_back(m);
  const SparseSpectrum u2 = random_shell_data(spec, 4, 64, rng);
  const double r = ortho_ratio(u1, u2, fam);
  EXPECT_GE(r, 0.5);
  EXPECT_LE(r, 2.0);
}

TEST(Ortho, ZeroDenominatorIsDegenerate) {
  const DomainSpec spec = DomainSpec::make(0, 4, 8);
  const StripFamily fam = strip_decompose(spec, {16, 0, 0, 0}, 4, 16);
  const SparseSpectrum u1 = sparse(spec, {{{16, 0, 0, 0}, 1.0}});
  EXPECT_THROW(ortho_ratio(u1, sparse(spec, {}), fam), DegenerateInputError);
}

TEST(Bilinear, ZeroDataAndSingleModes) {
  const DomainSpec spec = DomainSpec::make(3, 1, 8);
  // (4, 0, 0, 0) on the R directions with dk = 1/4.
  const SparseSpectrum p = sparse(spec, {{{16, 0, 0, 0}, cplx(0.7, -0.2)}});
  EXPECT_EQ(bilinear_ratio(p, sparse(spec, {}), 4, 4, 0.25), 0.0);
  const double V = spec.volume();
  const double expect = 1.0 / std::sqrt(V) / (4.0 * std::pow(1.0 + 0.25, 0.25));
  EXPECT_NEAR(bilinear_ratio(p, p, 4, 4, 0.25), expect, 1e-12 * expect);
}

TEST(Bilinear, ScanRowsAreReproducible) {
  const DomainSpec spec = DomainSpec::make(2, 2, 8);
  BilinearScanConfig cfg;
  cfg.cells = {{16, 4}};
  cfg.trials = 3;
  cfg.cap = 128;
  cfg.seed = 9;
  const auto a = bilinear_scan(spec, cfg);
  const auto b = bilinear_scan(spec, cfg);
  ASSERT_EQ(a.size(), 3u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].ortho_ratio, b[i].ortho_ratio);
    EXPECT_EQ(a[i].seed, b[i].seed);
    EXPECT_EQ(a[i].nu, 1.0);
    EXPECT_GE(a[i].ortho_ratio, 0.125);
    EXPECT_LE(a[i].ortho_ratio, 8.0);
  }
}

TEST(Bilinear, ConstantsAcrossLambda) {
  const DomainSpec spec = DomainSpec::make(3, 1, 8);
  double lo = 1e300, hi = 0.0;
  for (double l : {8.0, 16.0, 32.0}) {
    const double c = bilinear_constant(spec, l, 4, 6, 17, 128);
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  EXPECT_GT(lo, 0.0);
  EXPECT_LE(hi, 2.0 * lo);
}
