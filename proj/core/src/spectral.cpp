#include "dlab/spectral.hpp"

#include <cmath>
#include <string>

#include "dlab/fft.hpp"

namespace dlab {
namespace {

constexpr double kBoundaryEps = 1e-12;

double lq_slice(const DomainSpec& spec, const CVec& u, double q) {
  double s = 0.0;
  if (q == 4.0) {
    for (const cplx& v : u) {
      const double a = std::norm(v);
      s += a * a;
    }
  } else if (q == 2.0) {
    for (const cplx& v : u) s += std::norm(v);
  } else {
    for (const cplx& v : u) s += std::pow(std::abs(v), q);
  }
  return s * spec.cell_volume();
}

}  // namespace

FreqField to_frequency(const SpatialField& f) {
  const DomainSpec& spec = f.spec();
  FreqField g(spec);
  dft_forward(spec, f.data().data(), g.data().data());
  const double scale = std::pow(kTwoPi, -0.5 * spec.dim()) * spec.cell_volume();
  for (auto& v : g.data()) v *= scale;
  return g;
}

SpatialField to_space(const FreqField& g) {
  const DomainSpec& spec = g.spec();
  SpatialField f(spec);
  dft_backward(spec, g.data().data(), f.data().data());
  const double scale = std::pow(kTwoPi, -0.5 * spec.dim()) * spec.freq_weight();
  for (auto& v : f.data()) v *= scale;
  return f;
}

void propagate_inplace(FreqField& g, double t) {
  if (t == 0.0) return;
  const auto grid = grid_for(g.spec());
  const auto& xi2 = grid->xi_sq();
  for (std::size_t i = 0; i < g.size(); ++i) g[i] *= std::polar(1.0, -t * xi2[i]);
}

FreqField propagate(const FreqField& g, double t) {
  FreqField out = g;
  propagate_inplace(out, t);
  return out;
}

double bump(double s) {
  const double a = std::abs(s);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  const double x = 2.0 - a;
  const double f = std::exp(-1.0 / x);
  const double g = std::exp(-1.0 / (1.0 - x));
  return f / (f + g);
}

bool is_dyadic(double lambda) {
  if (!(lambda >= 1.0) || !std::isfinite(lambda)) return false;
  int e = 0;
  return std::frexp(lambda, &e) == 0.5;
}

double dyadic_symbol(double abs_xi, double lambda) {
  if (lambda == 1.0) return bump(abs_xi);
  return bump(abs_xi / lambda) - bump(2.0 * abs_xi / lambda);
}

FreqField project_dyadic(const FreqField& g, double lambda) {
  if (!is_dyadic(lambda))
    throw ArgumentError("project_dyadic: lambda=" + std::to_string(lambda) + " is not dyadic");
  const auto grid = grid_for(g.spec());
  const auto& xi2 = grid->xi_sq();
  FreqField out = g;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= dyadic_symbol(std::sqrt(xi2[i]), lambda);
  return out;
}

FreqField project_set(const FreqField& g, const ModePredicate& keep) {
  const auto grid = grid_for(g.spec());
  FreqField out = g;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (!keep(grid->xi_at(i))) out[i] = 0.0;
  return out;
}

void FreqRect::validate(int dim) const {
  double a2 = 0.0;
  for (int i = 0; i < dim; ++i) a2 += normal[i] * normal[i];
  if (std::abs(std::sqrt(a2) - 1.0) > 1e-12) throw ArgumentError("FreqRect normal is not a unit vector");
  if (!is_dyadic(size)) throw ArgumentError("FreqRect size must be dyadic >= 1");
  if (!(thickness >= 1.0) || thickness > size)
    throw ArgumentError("FreqRect thickness must satisfy 1 <= mu <= lambda");
}

bool FreqRect::contains(const Vec4& xi, int dim) const {
  const double tol_box = kBoundaryEps * std::max(1.0, size);
  double dot = 0.0;
  for (int i = 0; i < dim; ++i) {
    if (std::abs(xi[i] - center[i]) > size + tol_box) return false;
    dot += normal[i] * xi[i];
  }
  return std::abs(dot - offset) <= thickness + kBoundaryEps * std::max(1.0, thickness);
}

FreqField project_rect(const FreqField& g, const FreqRect& r) {
  const int d = g.spec().dim();
  r.validate(d);
  return project_set(g, [&](const Vec4& xi) { return r.contains(xi, d); });
}

FreqField galilean_shift(const FreqField& g, const Vec4& xi0) {
  const DomainSpec& spec = g.spec();
  const int d = spec.dim();
  std::array<int, kMaxDim> shift{};
  for (int a = 0; a < d; ++a) {
    const double s = xi0[a] / spec.dk(a);
    const double r = std::round(s);
    if (std::abs(s - r) > 1e-9)
      throw ArgumentError("galilean_shift: component " + std::to_string(a) +
                          " is off the frequency lattice" +
                          (spec.periodic(a) ? " of a periodic direction" : ""));
    shift[a] = static_cast<int>(r);
  }
  for (int a = d; a < kMaxDim; ++a)
    if (xi0[a] != 0.0) throw ArgumentError("galilean_shift: shift has more components than the domain");
  const auto grid = grid_for(spec);
  FreqField out(spec);
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto idx = grid->unflatten(i);
    std::array<int, kMaxDim> k{};
    for (int a = 0; a < d; ++a) k[a] = idx[a] + shift[a];
    out[grid->flatten_signed(k)] = g[i];
  }
  return out;
}

double l2_norm(const FreqField& g) {
  double s = 0.0;
  for (const cplx& v : g.data()) s += std::norm(v);
  return std::sqrt(s * g.spec().freq_weight());
}

double l2_norm(const SpatialField& f) {
  double s = 0.0;
  for (const cplx& v : f.data()) s += std::norm(v);
  return std::sqrt(s * f.spec().cell_volume());
}

cplx inner(const FreqField& a, const FreqField& b) {
  a.check_same(b);
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s * a.spec().freq_weight();
}

double sobolev_weight(double abs_xi, double s) {
  double w = 0.0;
  for (double lambda = 1.0; lambda < 2.0 * abs_xi + 2.0; lambda *= 2.0) {
    const double p = dyadic_symbol(abs_xi, lambda);
    if (p != 0.0) w += std::pow(lambda, 2.0 * s) * p * p;
  }
  return w;
}

double sobolev_norm(const FreqField& g, double s) {
  const auto grid = grid_for(g.spec());
  const auto& xi2 = grid->xi_sq();
  double acc = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double m = std::norm(g[i]);
    if (m != 0.0) acc += sobolev_weight(std::sqrt(xi2[i]), s) * m;
  }
  return std::sqrt(acc * g.spec().freq_weight());
}

std::vector<double> trapezoid_weights(double t0, double t1, int nt) {
  if (nt < 2) throw ArgumentError("trapezoid rule needs at least 2 nodes");
  const double h = (t1 - t0) / (nt - 1);
  std::vector<double> w(static_cast<std::size_t>(nt), h);
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

double spacetime_lq(const FreqField& g, double q, double t0, double t1, int nt) {
  if (!(q >= 1.0)) throw ArgumentError("spacetime_lq: q must be >= 1");
  const auto w = trapezoid_weights(t0, t1, nt);
  const DomainSpec& spec = g.spec();
  const auto grid = grid_for(spec);
  const auto& xi2 = grid->xi_sq();
  const double scale = std::pow(kTwoPi, -0.5 * spec.dim()) * spec.freq_weight();
  CVec work(g.size()), space(g.size());
  double total = 0.0;
  for (int j = 0; j < nt; ++j) {
    const double t = t0 + (t1 - t0) * j / (nt - 1);
    for (std::size_t i = 0; i < g.size(); ++i)
      work[i] = g[i] == 0.0 ? cplx{} : g[i] * std::polar(scale, -t * xi2[i]);
    dft_backward(spec, work.data(), space.data());
    total += w[j] * lq_slice(spec, space, q);
  }
  return std::pow(total, 1.0 / q);
}

LqResult spacetime_lq_checked(const FreqField& g, double q, double t0, double t1, int nt) {
  LqResult r;
  r.value = spacetime_lq(g, q, t0, t1, nt);
  r.refined = spacetime_lq(g, q, t0, t1, 2 * nt);
  const double ref = std::max(std::abs(r.refined), 1e-300);
  r.converged = std::abs(r.value - r.refined) / ref < 5e-3;
  return r;
}

}  // namespace dlab
