#include "dlab/bilinear.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "dlab/parallel.hpp"

namespace dlab {
namespace {

constexpr double kWindowStep = 0.25;
constexpr int kWindowHalfNodes = 128;  // t in [-32, 32]

// Cardinal cubic B-spline on [-2, 2].
double bspline4(double x) {
  const double a = std::abs(x);
  if (a >= 2.0) return 0.0;
  if (a >= 1.0) {
    const double r = 2.0 - a;
    return r * r * r / 6.0;
  }
  return 2.0 / 3.0 - a * a + 0.5 * a * a * a;
}

const std::array<double, kWindowHalfNodes + 1>& window4_samples() {
  static const std::array<double, kWindowHalfNodes + 1> table = [] {
    std::array<double, kWindowHalfNodes + 1> t{};
    const Window w;
    for (int j = 0; j <= kWindowHalfNodes; ++j) {
      const double p = w(j * kWindowStep);
      t[j] = p * p * p * p;
    }
    return t;
  }();
  return table;
}

std::uint64_t pack(const LatticeIndex& k) {
  std::uint64_t key = 0;
  for (int a = 0; a < kMaxDim; ++a)
    key = (key << 16) | static_cast<std::uint64_t>(static_cast<std::uint16_t>(k[a] + 32768));
  return key;
}

void check_compatible(const SparseSpectrum& a, const SparseSpectrum& b) {
  if (a.spec.m != b.spec.m || a.spec.n != b.spec.n || a.spec.periods != b.spec.periods ||
      a.spec.box_length != b.spec.box_length)
    throw ConfigError("spectra live on different lattices");
}

}  // namespace

double Window::operator()(double t) const {
  if (kind == WindowKind::gaussian) return std::exp(-0.5 * t * t);
  if (t == 0.0) return 1.0;
  const double x = 0.25 * t;
  const double s = std::sin(x) / x;
  const double s2 = s * s;
  return s2 * s2;
}

double Window::spectrum_shape(double tau) const {
  if (kind == WindowKind::gaussian) return std::exp(-0.5 * tau * tau);
  return bspline4(2.0 * tau);
}

double window4_kernel(double s) {
  if (std::abs(s) >= 4.0) return 0.0;
  const auto& w = window4_samples();
  double acc = 0.5 * w[0];
  for (int j = 1; j <= kWindowHalfNodes; ++j) acc += w[j] * std::cos(s * j * kWindowStep);
  return 2.0 * kWindowStep * acc;
}

cplx unit_interval_kernel(double s) {
  if (std::abs(s) < 1e-4) {
    const double s2 = s * s;
    return {1.0 - s2 / 6.0 + s2 * s2 / 120.0, -s / 2.0 + s * s2 / 24.0};
  }
  return (1.0 - std::polar(1.0, -s)) / cplx(0.0, s);
}

bool StripFamily::in_cube(const Vec4& xi) const {
  const double tol = mu * (1.0 + 1e-12);
  for (int a = 0; a < dim; ++a)
    if (std::abs(xi[a] - center[a]) > tol) return false;
  return true;
}

int StripFamily::strip_of(const Vec4& xi) const {
  double dot = 0.0;
  for (int a = 0; a < dim; ++a) dot += xi[a] * direction[a];
  return static_cast<int>(std::floor(dot / nu + 0.5));
}

FreqRect StripFamily::strip_rect(int k) const {
  FreqRect r;
  r.center = center;
  r.size = mu;
  r.normal = direction;
  r.offset = nu * k;
  r.thickness = nu;
  return r;
}

StripFamily strip_decompose(const DomainSpec& spec, const Vec4& center, double mu, double lambda) {
  const int d = spec.dim();
  double len = 0.0;
  for (int a = 0; a < d; ++a) len += center[a] * center[a];
  len = std::sqrt(len);
  if (len == 0.0) throw ArgumentError("strip_decompose: cube centre must be non-zero");
  if (len < 0.5 * lambda || len > 2.0 * lambda)
    throw ArgumentError("strip_decompose: |xi0| must lie within a factor 2 of lambda");
  if (!(mu >= 1.0) || mu > lambda) throw ArgumentError("strip_decompose: need 1 <= mu <= lambda");
  StripFamily f;
  f.dim = d;
  f.center = center;
  for (int a = 0; a < d; ++a) f.direction[a] = center[a] / len;
  f.lambda = lambda;
  f.mu = mu;
  f.nu = std::max(mu * mu / lambda, 1.0);
  const double reach = std::sqrt(static_cast<double>(d)) * mu;
  f.k_min = static_cast<int>(std::floor((len - reach) / f.nu + 0.5));
  f.k_max = static_cast<int>(std::floor((len + reach) / f.nu + 0.5));
  return f;
}

TFSupport time_freq_support(const SparseSpectrum& phi, const Window& w, const StripFamily& fam, int k,
                            double tau_step, double rel_threshold) {
  if (!w.band_limited()) throw ArgumentError("time_freq_support: window is not band limited");
  TFSupport out;
  std::vector<std::pair<double, double>> bumps;  // (centre -|xi|^2, mass)
  for (const auto& m : phi.modes) {
    const Vec4 xi = phi.xi(m);
    if (!fam.in_cube(xi) || fam.strip_of(xi) != k)
      throw ArgumentError("time_freq_support: data not supported in strip " + std::to_string(k));
    if (m.amp != 0.0) bumps.emplace_back(-phi.xi_sq(m), std::norm(m.amp));
  }
  if (bumps.empty()) return out;
  double cmin = bumps[0].first, cmax = bumps[0].first;
  for (const auto& b : bumps) {
    cmin = std::min(cmin, b.first);
    cmax = std::max(cmax, b.first);
  }
  const long i0 = static_cast<long>(std::floor((cmin - 1.0) / tau_step)) - 1;
  const long i1 = static_cast<long>(std::ceil((cmax + 1.0) / tau_step)) + 1;
  std::vector<double> mass(static_cast<std::size_t>(i1 - i0 + 1), 0.0);
  for (const auto& [c, m] : bumps) {
    const long j0 = std::max(i0, static_cast<long>(std::floor((c - 1.0) / tau_step)));
    const long j1 = std::min(i1, static_cast<long>(std::ceil((c + 1.0) / tau_step)));
    for (long j = j0; j <= j1; ++j) {
      const double s = w.spectrum_shape(j * tau_step - c);
      mass[static_cast<std::size_t>(j - i0)] += m * s * s;
    }
  }
  const double peak = *std::max_element(mass.begin(), mass.end());
  const double cut = rel_threshold * peak;
  std::size_t first = mass.size(), last = 0;
  for (std::size_t j = 0; j < mass.size(); ++j) {
    if (mass[j] > cut) {
      first = std::min(first, j);
      last = j;
    }
  }
  out.empty = false;
  out.lo = (static_cast<long>(first) + i0) * tau_step;
  out.hi = (static_cast<long>(last) + i0) * tau_step;
  const double centre = -fam.nu * fam.nu * k * static_cast<double>(k);
  const double spread = fam.nu * fam.nu * std::abs(k);
  const double excess = std::max({0.0, out.hi - centre - 1.0, centre - 1.0 - out.lo});
  if (excess == 0.0)
    out.c_estimate = 0.0;
  else
    out.c_estimate = spread > 0.0 ? excess / spread : std::numeric_limits<double>::infinity();
  return out;
}

double product_norm_sq(const SparseSpectrum& a, const SparseSpectrum& b, TimeKernel kernel) {
  check_compatible(a, b);
  struct Pair {
    std::uint64_t key;
    double omega;
    cplx c;
  };
  std::vector<Pair> pairs;
  pairs.reserve(a.modes.size() * b.modes.size());
  std::vector<double> bsq(b.modes.size());
  for (std::size_t j = 0; j < b.modes.size(); ++j) bsq[j] = b.xi_sq(b.modes[j]);
  for (const auto& ma : a.modes) {
    if (ma.amp == 0.0) continue;
    const double asq = a.xi_sq(ma);
    for (std::size_t j = 0; j < b.modes.size(); ++j) {
      const auto& mb = b.modes[j];
      if (mb.amp == 0.0) continue;
      LatticeIndex z{};
      for (int q = 0; q < kMaxDim; ++q) z[q] = ma.k[q] + mb.k[q];
      pairs.push_back({pack(z), asq + bsq[j], ma.amp * mb.amp});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
    return x.key != y.key ? x.key < y.key : x.omega < y.omega;
  });
  const double g0 = kernel == TimeKernel::window4 ? window4_kernel(0.0) : 1.0;
  double total = 0.0;
  std::size_t begin = 0;
  while (begin < pairs.size()) {
    std::size_t end = begin;
    while (end < pairs.size() && pairs[end].key == pairs[begin].key) ++end;
    for (std::size_t i = begin; i < end; ++i) {
      total += g0 * std::norm(pairs[i].c);
      for (std::size_t j = i + 1; j < end; ++j) {
        const double s = pairs[i].omega - pairs[j].omega;
        if (kernel == TimeKernel::window4) {
          if (-s >= 4.0) break;
          total += 2.0 * window4_kernel(s) * std::real(pairs[i].c * std::conj(pairs[j].c));
        } else {
          total += 2.0 * std::real(pairs[i].c * std::conj(pairs[j].c) * unit_interval_kernel(s));
        }
      }
    }
    begin = end;
  }
  const double W = a.spec.freq_weight();
  return total * std::pow(kTwoPi, -a.spec.dim()) * W * W * W;
}

SparseSpectrum restrict_to(const SparseSpectrum& s, const StripFamily& fam, std::optional<int> k) {
  SparseSpectrum out;
  out.spec = s.spec;
  for (const auto& m : s.modes) {
    const Vec4 xi = s.xi(m);
    if (!fam.in_cube(xi)) continue;
    if (k && fam.strip_of(xi) != *k) continue;
    out.modes.push_back(m);
  }
  return out;
}

double ortho_ratio(const SparseSpectrum& u1, const SparseSpectrum& u2, const StripFamily& fam) {
  const SparseSpectrum cube = restrict_to(u1, fam, std::nullopt);
  const double whole = product_norm_sq(cube, u2, TimeKernel::window4);
  std::vector<SparseSpectrum> strips(static_cast<std::size_t>(fam.count()));
  for (auto& s : strips) s.spec = u1.spec;
  for (const auto& m : cube.modes) {
    const int k = fam.strip_of(cube.xi(m));
    strips[static_cast<std::size_t>(std::clamp(k, fam.k_min, fam.k_max) - fam.k_min)].modes.push_back(m);
  }
  double parts = 0.0;
  for (const auto& s : strips)
    if (!s.modes.empty()) parts += product_norm_sq(s, u2, TimeKernel::window4);
  if (!(parts > 0.0)) throw DegenerateInputError("ortho_ratio: strip pieces carry no mass");
  return whole / parts;
}

SparseSpectrum apply_dyadic(const SparseSpectrum& s, double lambda) {
  if (!is_dyadic(lambda)) throw ArgumentError("apply_dyadic: lambda must be dyadic");
  SparseSpectrum out;
  out.spec = s.spec;
  for (const auto& m : s.modes) {
    const double w = dyadic_symbol(std::sqrt(s.xi_sq(m)), lambda);
    if (w != 0.0) out.modes.push_back({m.k, m.amp * w});
  }
  return out;
}

double bilinear_ratio(const SparseSpectrum& phi1, const SparseSpectrum& phi2, double lambda, double mu,
                      double delta) {
  const double n1 = phi1.l2_norm();
  const double n2 = phi2.l2_norm();
  if (n1 == 0.0 || n2 == 0.0) return 0.0;
  const double num = std::sqrt(
      product_norm_sq(apply_dyadic(phi1, lambda), apply_dyadic(phi2, mu), TimeKernel::unit_interval));
  return num / (mu * std::pow(mu / lambda + 1.0 / mu, delta) * n1 * n2);
}

namespace {

SparseSpectrum gaussian_on(const DomainSpec& spec, const std::vector<LatticeIndex>& nodes, Rng& rng) {
  SparseSpectrum s;
  s.spec = spec;
  s.modes.reserve(nodes.size());
  for (const auto& k : nodes) s.modes.push_back({k, complex_normal(rng)});
  return s;
}

}  // namespace

SparseSpectrum random_shell_data(const DomainSpec& spec, double lambda, std::size_t cap, Rng& rng) {
  const double lo = lambda == 1.0 ? 0.0 : 0.5 * lambda;
  const double hi = 2.0 * lambda;
  auto nodes = sample_lattice(
      spec, Vec4{}, hi,
      [&](const Vec4& x) {
        const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
        return r >= lo && r <= hi;
      },
      cap, rng);
  return gaussian_on(spec, nodes, rng);
}

SparseSpectrum random_cube_data(const DomainSpec& spec, const StripFamily& fam, std::size_t cap, Rng& rng) {
  auto nodes = sample_lattice(
      spec, fam.center, fam.mu, [&](const Vec4& x) { return fam.in_cube(x); }, cap, rng);
  return gaussian_on(spec, nodes, rng);
}

Vec4 random_high_center(const DomainSpec& spec, double lambda, Rng& rng) {
  const int d = spec.dim();
  for (;;) {
    Vec4 dir{};
    double nrm = 0.0;
    for (int a = 0; a < d; ++a) {
      dir[a] = normal(rng);
      nrm += dir[a] * dir[a];
    }
    if (nrm < 1e-20) continue;
    nrm = std::sqrt(nrm);
    Vec4 c{};
    double len = 0.0;
    for (int a = 0; a < d; ++a) {
      const double dk = spec.dk(a);
      c[a] = std::round(lambda * dir[a] / nrm / dk) * dk;
      len += c[a] * c[a];
    }
    if (len > 0.0) return c;
  }
}

double bilinear_constant(const DomainSpec& spec, double lambda, double mu, int trials, std::uint64_t seed,
                         std::size_t cap) {
  if (!is_dyadic(lambda) || !is_dyadic(mu) || mu > lambda)
    throw ArgumentError("bilinear_constant: need dyadic 1 <= mu <= lambda");
  const double delta = envelope_delta(spec.m, spec.n);
  const auto vals = parallel_map(static_cast<std::size_t>(std::max(trials, 0)), [&](std::size_t t) {
    Rng rng = make_rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    const SparseSpectrum p1 = random_shell_data(spec, lambda, cap, rng);
    const SparseSpectrum p2 = random_shell_data(spec, mu, cap, rng);
    return bilinear_ratio(p1, p2, lambda, mu, delta);
  });
  double best = 0.0;
  for (double v : vals) best = std::max(best, v);
  return best;
}

std::vector<BilinearRow> bilinear_scan(const DomainSpec& spec, const BilinearScanConfig& cfg) {
  const double delta = envelope_delta(spec.m, spec.n);
  const std::size_t per = static_cast<std::size_t>(cfg.trials);
  return parallel_map(cfg.cells.size() * per, [&](std::size_t i) {
    const auto [lambda, mu] = cfg.cells[i / per];
    const int trial = static_cast<int>(i % per);
    BilinearRow row;
    row.lambda = lambda;
    row.mu = mu;
    row.trial = trial;
    row.seed = derive_seed(cfg.seed, {static_cast<std::uint64_t>(lambda), static_cast<std::uint64_t>(mu),
                                      static_cast<std::uint64_t>(trial)});
    Rng rng = make_rng(row.seed);
    const Vec4 centre = random_high_center(spec, lambda, rng);
    const StripFamily fam = strip_decompose(spec, centre, mu, lambda);
    row.nu = fam.nu;
    const SparseSpectrum u1 = random_cube_data(spec, fam, cfg.cap, rng);
    const SparseSpectrum u2 = random_shell_data(spec, mu, cfg.cap, rng);
    row.ortho_ratio = ortho_ratio(u1, u2, fam);
    row.bilinear_ratio = bilinear_ratio(u1, u2, lambda, mu, delta);
    for (int k = fam.k_min; k <= fam.k_max; ++k) {
      const SparseSpectrum piece = restrict_to(u1, fam, k);
      if (piece.modes.empty()) continue;
      row.c_estimate = std::max(row.c_estimate, time_freq_support(piece, Window{}, fam, k).c_estimate);
    }
    return row;
  });
}

}  // namespace dlab
