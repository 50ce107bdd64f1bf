#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dlab/spectral.hpp"

namespace dlab {

struct TimeWindow {
  double t0 = 0.0;
  double t1 = 1.0;
  int nt = 64;
};

// ||P_R e^{itD} phi||_{L^q(T x M)} / ||P_R phi||_2.
double strichartz_ratio(const FreqField& phi, const FreqRect& R, double q = 4.0, TimeWindow T = {});

// Phi(u) = sum_j w_j ||v_j||_q^q with v_j = e^{it_j D} u, for u supported on a
// fixed list of modes. Coefficients are the FreqField values on those modes.
class QuarticFunctional {
public:
  QuarticFunctional(const DomainSpec& spec, std::vector<std::size_t> modes, double q, TimeWindow T);

  const std::vector<std::size_t>& modes() const { return modes_; }
  std::size_t mode_count() const { return modes_.size(); }
  const DomainSpec& spec() const { return spec_; }
  double q() const { return q_; }

  double value(const CVec& coeff) const;
  // Returns Phi and writes G with Re<G, h>_W = dPhi[h].
  double value_and_gradient(const CVec& coeff, CVec& grad) const;

  double norm(const CVec& coeff) const;
  // Phi^{1/q} / ||coeff||.
  double ratio(const CVec& coeff) const;

  FreqField embed(const CVec& coeff) const;
  CVec restrict(const FreqField& g) const;

private:
  double evaluate(const CVec& coeff, CVec* grad) const;

  DomainSpec spec_;
  std::vector<std::size_t> modes_;
  double q_;
  TimeWindow T_;
  std::vector<double> weights_;
  std::vector<CVec> phases_;  // per time node, per mode, scaled for to_space
};

struct AscentOptions {
  int steps = 200;
  double initial_step = 0.1;
  double max_step = 8.0;
  double min_step = 1.0 / 1024.0;
  double rel_tol = 1e-6;
};

struct AscentResult {
  CVec coeff;
  double initial_ratio = 0.0;
  double ratio = 0.0;
  int accepted = 0;
  bool converged = false;
  std::vector<double> phi_history;  // Phi after every accepted step, starting value first
};

// Projected gradient ascent of Phi on the L^2 sphere.
AscentResult ascend(const QuarticFunctional& F, CVec start, const AscentOptions& opt = {});

struct ScanRecord {
  int m = 0;
  int n = 0;
  double lambda = 1.0;
  double mu = 1.0;
  int trials = 0;
  double K = 0.0;
  std::uint64_t seed = 0;
  bool converged = false;
};

// Modes of the spec's frequency grid inside R.
std::vector<std::size_t> rect_modes(const DomainSpec& spec, const FreqRect& R);

struct TrialResult {
  double raw_ratio = 0.0;
  double ratio = 0.0;
  bool ascent_converged = false;
  std::uint64_t seed = 0;
};

// Start vector of a trial: a lattice-wide complex Gaussian field drawn from
// `seed`, restricted to the modes of F.
CVec trial_start(const QuarticFunctional& F, std::uint64_t seed);

// One seeded trial: Gaussian start on the modes of F, then ascent.
TrialResult run_trial(const QuarticFunctional& F, std::uint64_t seed, const AscentOptions& opt);

ScanRecord maximize_ratio(const DomainSpec& spec, const FreqRect& R, double q, int trials,
                          const AscentOptions& opt, std::uint64_t seed, TimeWindow T = {});

// Random rectangle of size lambda and thickness mu: normal uniform on the
// sphere, centre a lattice node of [-lambda,lambda]^d inside the grid band.
FreqRect sample_rect(const DomainSpec& spec, double lambda, double mu, std::uint64_t seed);

struct ScanConfig {
  std::vector<double> lambdas{4, 8, 16, 32};
  std::function<std::vector<double>(double)> mu_rule;  // default: all dyadic mu <= lambda
  int rects = 8;
  int trials = 16;
  // Trials are numbered; a scan runs [first_trial, first_trial + trials).
  // Splitting a range across scans and taking the max reproduces one scan.
  int first_trial = 0;
  double q = 4.0;
  TimeWindow T{};
  AscentOptions ascent{};
  std::uint64_t seed = 0;
};

std::vector<double> dyadic_up_to(double lambda);

std::vector<ScanRecord> scan_dyadic(const DomainSpec& spec, const ScanConfig& cfg);

struct FitResult {
  double alpha = 0.0;
  double delta_hat = 0.0;
  double C = 0.0;
  double residual_linf = 0.0;
  bool alpha_only = false;
};

// Least squares for log K = log C + alpha log lambda + delta log(mu/lambda).
FitResult fit_exponents(const std::vector<ScanRecord>& records);

// Cellwise max of two scans over the same cells (e.g. disjoint trial ranges).
std::vector<ScanRecord> merge_scans(const std::vector<ScanRecord>& a, const std::vector<ScanRecord>& b);

// Smallest C with K <= C lambda^{1/2} (mu/lambda)^delta0 on every record.
double envelope_constant(const std::vector<ScanRecord>& records, double delta0);

struct AtomPiece {
  double t_begin = 0.0;
  double t_end = 1.0;
  FreqField phi;
};

// ||P_R a||_{L^4([0,1] x M)} for a = sum chi_[t_{k-1},t_k) e^{itD} phi_{k-1}.
double u4_atom_ratio(const std::vector<AtomPiece>& pieces, const FreqRect& R, int nt_per_piece = 64);

struct DveResult {
  double empirical = 0.0;
  double certificate = 0.0;
};

// Best constant in |sum_mu (1/mu + mu/lambda)^delta c_mu|^2 <= C sum |c_mu|^2.
DveResult dve_check(double delta, double lambda, int trials, std::uint64_t seed);

}  // namespace dlab
