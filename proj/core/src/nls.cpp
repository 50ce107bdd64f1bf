#include "dlab/nls.hpp"

#include <cmath>

#include "dlab/fft.hpp"
#include "dlab/parallel.hpp"
#include "dlab/rng.hpp"
#include "dlab/spectral.hpp"

namespace dlab {

void NLSConfig::validate() const {
  if (sign < -1 || sign > 1) throw ArgumentError("NLSConfig: sign must be -1, 0 or +1");
  // Negative steps run the flow backwards.
  if (!(std::isfinite(dt) && dt != 0.0)) throw ArgumentError("NLSConfig: dt must be finite and nonzero");
  if (steps < 1) throw ArgumentError("NLSConfig: steps must be >= 1");
  if (record_every < 1) throw ArgumentError("NLSConfig: record_every must be >= 1");
}

double mass(const SpatialField& u) {
  double acc = 0.0;
  for (const auto& v : u.data()) acc += std::norm(v);
  return acc * u.spec().cell_volume();
}

double energy(const SpatialField& u, int sign) {
  const FreqField g = to_frequency(u);
  const auto grid = grid_for(u.spec());
  const auto& xi2 = grid->xi_sq();
  double kin = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) kin += xi2[i] * std::norm(g[i]);
  kin *= 0.5 * u.spec().freq_weight();
  double pot = 0.0;
  if (sign != 0) {
    for (const auto& v : u.data()) {
      const double r = std::norm(v);
      pot += r * r;
    }
    pot *= 0.25 * sign * u.spec().cell_volume();
  }
  return kin + pot;
}

double h1_norm(const FreqField& g) {
  const auto grid = grid_for(g.spec());
  const auto& xi2 = grid->xi_sq();
  double acc = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) acc += (1.0 + xi2[i]) * std::norm(g[i]);
  return std::sqrt(acc * g.spec().freq_weight());
}

double h1_norm(const SpatialField& u) { return h1_norm(to_frequency(u)); }

double linf_norm(const SpatialField& u) {
  double m = 0.0;
  for (const auto& v : u.data()) m = std::max(m, std::abs(v));
  return m;
}

Diagnostics diagnose(const SpatialField& u, int sign, double t) {
  return {t, mass(u), energy(u, sign), h1_norm(u), linf_norm(u)};
}

namespace {

std::vector<char> dealias_mask(const DomainSpec& spec) {
  const auto grid = grid_for(spec);
  std::vector<char> keep(spec.size(), 1);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    const auto idx = grid->unflatten(i);
    for (int a = 0; a < spec.dim(); ++a)
      if (3 * std::abs(signed_index(idx[a], spec.grid[a])) > spec.grid[a]) keep[i] = 0;
  }
  return keep;
}

bool all_finite(const CVec& u) {
  for (const auto& v : u)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

}  // namespace

FreqField dealias(const FreqField& g) {
  const auto keep = dealias_mask(g.spec());
  FreqField out = g;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (!keep[i]) out[i] = 0.0;
  return out;
}

StrangStepper::StrangStepper(const DomainSpec& spec, const NLSConfig& cfg)
    : spec_(spec), cfg_(cfg), lin_(spec.size()), work_(spec.size()), rho_(spec.size()) {
  cfg_.validate();
  const auto grid = grid_for(spec);
  const auto& xi2 = grid->xi_sq();
  const double inv = 1.0 / static_cast<double>(spec.size());
  for (std::size_t i = 0; i < lin_.size(); ++i) lin_[i] = std::polar(inv, -cfg.dt * xi2[i]);
  if (cfg.dealias) keep_ = dealias_mask(spec);
}

void StrangStepper::kick(CVec& u, double h) {
  if (cfg_.sign == 0) return;
  const std::size_t n = u.size();
  for (std::size_t i = 0; i < n; ++i) rho_[i] = std::norm(u[i]);
  if (cfg_.dealias) {
    // Filtered density; the phase stays unimodular so |u| is untouched.
    dft_forward(spec_, rho_.data(), work_.data());
    const double inv = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) work_[i] = keep_[i] ? work_[i] * inv : cplx{};
    dft_backward(spec_, work_.data(), rho_.data());
  }
  const double c = -cfg_.sign * h;
  for (std::size_t i = 0; i < n; ++i) u[i] *= std::polar(1.0, c * rho_[i].real());
}

bool StrangStepper::step(CVec& u) {
  kick(u, 0.5 * cfg_.dt);
  dft_forward(spec_, u.data(), work_.data());
  for (std::size_t i = 0; i < work_.size(); ++i) work_[i] *= lin_[i];
  dft_backward(spec_, work_.data(), u.data());
  kick(u, 0.5 * cfg_.dt);
  return all_finite(u);
}

SpatialField strang_step(const SpatialField& u, const NLSConfig& cfg) {
  NLSConfig one = cfg;
  one.steps = 1;
  StrangStepper stepper(u.spec(), one);
  SpatialField out = u;
  if (!stepper.step(out.data())) {
    Trajectory partial;
    partial.final = u;
    throw BlowUpError("non-finite value after one step", std::move(partial));
  }
  return out;
}

Trajectory evolve(const SpatialField& u0, const NLSConfig& cfg) {
  cfg.validate();
  StrangStepper stepper(u0.spec(), cfg);
  Trajectory tr;
  const bool forward = cfg.dt > 0.0;
  auto record = [&](const SpatialField& u, double t) {
    tr.diag.push_back(diagnose(u, cfg.sign, t));
    if (forward) {
      tr.series.times.push_back(t);
      tr.series.values.push_back(to_frequency(u));
    }
  };
  SpatialField u = u0;
  record(u, 0.0);
  double m_prev = mass(u);
  for (int k = 1; k <= cfg.steps; ++k) {
    SpatialField prev = u;
    const bool ok = stepper.step(u.data());
    const double t = k * cfg.dt;
    const double m = ok ? mass(u) : 0.0;
    if (!ok || std::abs(m - m_prev) > 0.01 * m_prev) {
      tr.final = std::move(prev);
      tr.final_time = (k - 1) * cfg.dt;
      throw BlowUpError(ok ? "mass jumped by more than 1% in one step" : "non-finite value", std::move(tr));
    }
    m_prev = m;
    if (k % cfg.record_every == 0 || k == cfg.steps) record(u, t);
  }
  tr.final = std::move(u);
  tr.final_time = cfg.steps * cfg.dt;
  return tr;
}

SpatialField plane_wave_exact(const DomainSpec& spec, const std::array<int, kMaxDim>& n, double amplitude,
                              int sign, double t) {
  spec.validate();
  const auto grid = grid_for(spec);
  Vec4 xi{};
  double xi2 = 0.0;
  for (int a = 0; a < spec.dim(); ++a) {
    xi[a] = n[a] * spec.dk(a);
    xi2 += xi[a] * xi[a];
  }
  const double omega = xi2 + sign * amplitude * amplitude;
  SpatialField u(spec);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto idx = grid->unflatten(i);
    double phase = -omega * t;
    for (int a = 0; a < spec.dim(); ++a) phase += xi[a] * idx[a] * spec.dx(a);
    u[i] = std::polar(amplitude, phase);
  }
  return u;
}

SpatialField plane_wave(const DomainSpec& spec, const std::array<int, kMaxDim>& n, double amplitude) {
  return plane_wave_exact(spec, n, amplitude, 0, 0.0);
}

double self_convergence_order(const SpatialField& u0, int sign, double T, double dt, bool dealias_on) {
  std::vector<SpatialField> sol;
  for (int r = 0; r < 3; ++r) {
    NLSConfig cfg;
    cfg.sign = sign;
    cfg.dt = dt / (1 << r);
    cfg.steps = static_cast<int>(std::lround(T / cfg.dt));
    cfg.dealias = dealias_on;
    StrangStepper stepper(u0.spec(), cfg);
    SpatialField u = u0;
    for (int k = 0; k < cfg.steps; ++k)
      if (!stepper.step(u.data())) throw BlowUpError("non-finite value in convergence study", Trajectory{});
    sol.push_back(std::move(u));
  }
  const double e1 = l2_norm(sol[0] - sol[1]);
  const double e2 = l2_norm(sol[1] - sol[2]);
  if (!(e2 > 0.0)) throw DegenerateInputError("self_convergence_order: solutions coincide");
  return std::log2(e1 / e2);
}

SpatialField random_smooth_data(const DomainSpec& spec, double s, std::uint64_t seed) {
  spec.validate();
  const auto grid = grid_for(spec);
  const auto& xi2 = grid->xi_sq();
  const auto keep = dealias_mask(spec);
  Rng rng = make_rng(seed);
  FreqField g(spec);
  double acc = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const cplx z = complex_normal(rng);
    if (!keep[i]) continue;
    g[i] = z * std::exp(-0.25 * xi2[i]);
    acc += std::pow(1.0 + xi2[i], s) * std::norm(g[i]);
  }
  acc *= spec.freq_weight();
  g *= 1.0 / std::sqrt(acc);
  return to_space(g);
}

std::vector<SmallDataRow> small_data_experiment(const DomainSpec& spec, const std::vector<double>& amplitudes,
                                                double s, double T, NLSConfig cfg, std::uint64_t seed) {
  if (!(s >= 1.0)) throw ArgumentError("small_data_experiment: s must be >= 1");
  if (!(T > 0.0)) throw ArgumentError("small_data_experiment: T must be positive");
  cfg.steps = std::max(1, static_cast<int>(std::lround(T / std::abs(cfg.dt))));
  cfg.validate();
  const SpatialField base = random_smooth_data(spec, s, seed);
  return parallel_map(amplitudes.size(), [&](std::size_t i) {
    SmallDataRow row;
    row.amplitude = amplitudes[i];
    row.seed = seed;
    if (amplitudes[i] == 0.0) return row;
    SpatialField u0 = base;
    u0 *= amplitudes[i];
    auto summarize = [&](const Trajectory& tr) {
      const Diagnostics& d0 = tr.diag.front();
      for (const auto& d : tr.diag) {
        row.h1_ratio = std::max(row.h1_ratio, d.h1 / d0.h1);
        row.mass_drift = std::max(row.mass_drift, std::abs(d.mass - d0.mass) / d0.mass);
        row.energy_drift = std::max(row.energy_drift, std::abs(d.energy - d0.energy) / std::abs(d0.energy));
      }
    };
    try {
      summarize(evolve(u0, cfg));
    } catch (const BlowUpError& e) {
      row.blew_up = true;
      row.blowup_time = e.partial().final_time;
      if (!e.partial().diag.empty()) summarize(e.partial());
    }
    return row;
  });
}

}  // namespace dlab
