#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "dlab/errors.hpp"
#include "dlab/field.hpp"
#include "dlab/variation.hpp"

namespace dlab {

// i u_t = -D u + sign |u|^2 u. sign = +1 defocusing, -1 focusing; 0 switches
// the nonlinearity off.
struct NLSConfig {
  int sign = 1;
  double dt = 1e-3;
  int steps = 1000;
  bool dealias = true;
  int record_every = 100;

  void validate() const;  // throws ArgumentError
};

struct Diagnostics {
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double h1 = 0.0;
  double linf = 0.0;
};

struct Trajectory {
  TimeSeries series;            // frequency snapshots at the recorded times
  std::vector<Diagnostics> diag;
  SpatialField final;
  double final_time = 0.0;
};

class BlowUpError : public Error {
public:
  BlowUpError(const std::string& what, Trajectory partial)
      : Error(what), partial_(std::move(partial)) {}
  // Recorded snapshots plus the last finite state.
  const Trajectory& partial() const { return partial_; }

private:
  Trajectory partial_;
};

double mass(const SpatialField& u);
double energy(const SpatialField& u, int sign);
// (sum (1 + |xi|^2) |u^|^2)^{1/2}
double h1_norm(const SpatialField& u);
double h1_norm(const FreqField& g);
double linf_norm(const SpatialField& u);
Diagnostics diagnose(const SpatialField& u, int sign, double t);

// Keeps modes with |k_i| <= N_i / 3 on every axis.
FreqField dealias(const FreqField& g);

// Kick by half a step, propagate a full step, kick by half a step. Throws
// BlowUpError if the result is not finite.
SpatialField strang_step(const SpatialField& u, const NLSConfig& cfg);

// Stateful integrator with cached phase tables; strang_step and evolve use it.
class StrangStepper {
public:
  StrangStepper(const DomainSpec& spec, const NLSConfig& cfg);
  // Advances u in place by one step; false if a value became non-finite.
  bool step(CVec& u);

private:
  void kick(CVec& u, double h);
  DomainSpec spec_;
  NLSConfig cfg_;
  CVec lin_;               // e^{-i |xi|^2 dt} / N
  std::vector<char> keep_; // dealias mask
  CVec work_, rho_;
};

// Evolves cfg.steps steps, recording a snapshot every cfg.record_every steps
// and at the end.
Trajectory evolve(const SpatialField& u0, const NLSConfig& cfg);

// A e^{i n.x} and its exact solution at time t.
SpatialField plane_wave(const DomainSpec& spec, const std::array<int, kMaxDim>& n, double amplitude);
SpatialField plane_wave_exact(const DomainSpec& spec, const std::array<int, kMaxDim>& n, double amplitude,
                              int sign, double t);

// log2 of successive differences of solutions at dt, dt/2, dt/4 after time T.
double self_convergence_order(const SpatialField& u0, int sign, double T, double dt, bool dealias = true);

// Smooth random data: Gaussian coefficients with envelope e^{-|xi|^2/4} on
// the dealiased band, normalised to ||<xi>^s u^||_2 = 1.
SpatialField random_smooth_data(const DomainSpec& spec, double s, std::uint64_t seed);

struct SmallDataRow {
  double amplitude = 0.0;
  double h1_ratio = 1.0;    // sup over recorded times of ||u(t)||_H1 / ||u0||_H1
  double mass_drift = 0.0;  // relative
  double energy_drift = 0.0;
  bool blew_up = false;
  double blowup_time = 0.0;
  std::uint64_t seed = 0;
};

std::vector<SmallDataRow> small_data_experiment(const DomainSpec& spec, const std::vector<double>& amplitudes,
                                                double s, double T, NLSConfig cfg, std::uint64_t seed);

}  // namespace dlab
