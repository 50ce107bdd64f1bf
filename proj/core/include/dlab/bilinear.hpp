#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dlab/lattice.hpp"
#include "dlab/spectral.hpp"

namespace dlab {

// Time window for the almost-orthogonality argument. The band-limited choice is
// psi(t) = (sin(t/4)/(t/4))^4, whose transform is a cubic B-spline supported in
// [-1,1]. The Gaussian is provided to exercise the band-limit precondition.
enum class WindowKind { band_limited, gaussian };

struct Window {
  WindowKind kind = WindowKind::band_limited;

  double operator()(double t) const;
  bool band_limited() const { return kind == WindowKind::band_limited; }
  // |hat psi(tau)| up to a constant factor; zero outside [-1,1] when band limited.
  double spectrum_shape(double tau) const;
};

// G(s) = int psi(t)^4 e^{-ist} dt for the band-limited window (zero for |s|>=4).
double window4_kernel(double s);
// int_0^1 e^{-ist} dt.
cplx unit_interval_kernel(double s);

// Cube C = center + [-mu,mu]^d cut into strips across a = center/|center|:
// R_k = { xi in C : nu(k - 1/2) <= xi.a < nu(k + 1/2) }, nu = max(mu^2/lambda, 1).
struct StripFamily {
  Vec4 center{};
  Vec4 direction{};
  double lambda = 1.0;
  double mu = 1.0;
  double nu = 1.0;
  int k_min = 0;
  int k_max = 0;
  int dim = 4;

  bool in_cube(const Vec4& xi) const;
  int strip_of(const Vec4& xi) const;
  // The element of the rectangle family (size mu, thickness nu) containing R_k.
  FreqRect strip_rect(int k) const;
  int count() const { return k_max - k_min + 1; }
};

StripFamily strip_decompose(const DomainSpec& spec, const Vec4& center, double mu, double lambda);

struct TFSupport {
  bool empty = true;
  double lo = 0.0;
  double hi = 0.0;
  // Smallest c with [lo,hi] inside [-nu^2k^2 - c nu^2|k| - 1, -nu^2k^2 + c nu^2|k| + 1].
  double c_estimate = 0.0;
};

// Temporal Fourier support of psi(t) e^{itD} phi for phi supported in strip k.
TFSupport time_freq_support(const SparseSpectrum& phi, const Window& w, const StripFamily& fam, int k,
                            double tau_step = 1.0 / 128.0, double rel_threshold = 1e-6);

enum class TimeKernel { window4, unit_interval };

// ||u1 u2||^2 in L^2 over R x M with the psi^4 weight (window4), or over
// [0,1] x M (unit_interval), for u_j = e^{itD} phi_j, computed exactly from
// the mode lists.
double product_norm_sq(const SparseSpectrum& a, const SparseSpectrum& b, TimeKernel kernel);

// ||P_C u1 u2||^2 / sum_k ||P_{R_k} u1 u2||^2 with the windowed solutions.
double ortho_ratio(const SparseSpectrum& u1, const SparseSpectrum& u2, const StripFamily& fam);

// Sub-spectrum of modes lying in strip k (or in the cube when k is empty).
SparseSpectrum restrict_to(const SparseSpectrum& s, const StripFamily& fam, std::optional<int> k);
// Modes weighted by the dyadic symbol psi_lambda(|xi|).
SparseSpectrum apply_dyadic(const SparseSpectrum& s, double lambda);

// ||P_lambda u1 P_mu u2||_{L^2([0,1] x M)} / (mu (mu/lambda + 1/mu)^delta ||phi1|| ||phi2||).
double bilinear_ratio(const SparseSpectrum& phi1, const SparseSpectrum& phi2, double lambda, double mu,
                      double delta);

// Random data with Gaussian amplitudes on a random set of at most `cap`
// lattice nodes of the dyadic shell {lambda/2 <= |xi| <= 2 lambda}
// ({|xi| <= 2} for lambda = 1).
SparseSpectrum random_shell_data(const DomainSpec& spec, double lambda, std::size_t cap, Rng& rng);
// Random data on at most `cap` lattice nodes of the cube of a strip family.
SparseSpectrum random_cube_data(const DomainSpec& spec, const StripFamily& fam, std::size_t cap, Rng& rng);
// Lattice vector of length ~lambda in a uniformly random direction.
Vec4 random_high_center(const DomainSpec& spec, double lambda, Rng& rng);

double bilinear_constant(const DomainSpec& spec, double lambda, double mu, int trials, std::uint64_t seed,
                         std::size_t cap = 512);

struct BilinearRow {
  double lambda = 0.0;
  double mu = 0.0;
  double nu = 0.0;
  int trial = 0;
  double ortho_ratio = 0.0;
  double bilinear_ratio = 0.0;
  double c_estimate = 0.0;
  std::uint64_t seed = 0;
};

struct BilinearScanConfig {
  std::vector<std::pair<double, double>> cells{{16, 4}, {32, 4}, {32, 8}};
  int trials = 100;
  std::size_t cap = 512;
  std::uint64_t seed = 0;
};

std::vector<BilinearRow> bilinear_scan(const DomainSpec& spec, const BilinearScanConfig& cfg);

}  // namespace dlab
