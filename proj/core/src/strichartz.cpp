#include "dlab/strichartz.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include <Eigen/Dense>

#include "dlab/fft.hpp"
#include "dlab/parallel.hpp"
#include "dlab/rng.hpp"

namespace dlab {

double strichartz_ratio(const FreqField& phi, const FreqRect& R, double q, TimeWindow T) {
  const FreqField p = project_rect(phi, R);
  const double mass = l2_norm(p);
  if (!(mass > 0.0)) throw DegenerateInputError("strichartz_ratio: P_R phi vanishes");
  return spacetime_lq(p, q, T.t0, T.t1, T.nt) / mass;
}

QuarticFunctional::QuarticFunctional(const DomainSpec& spec, std::vector<std::size_t> modes,
                                     double q, TimeWindow T)
    : spec_(spec), modes_(std::move(modes)), q_(q), T_(T) {
  if (!(q_ >= 2.0)) throw ArgumentError("QuarticFunctional: q must be >= 2");
  weights_ = trapezoid_weights(T.t0, T.t1, T.nt);
  const auto grid = grid_for(spec_);
  const auto& xi2 = grid->xi_sq();
  const double s = std::pow(kTwoPi, -0.5 * spec_.dim()) * spec_.freq_weight();
  phases_.resize(static_cast<std::size_t>(T.nt));
  for (int j = 0; j < T.nt; ++j) {
    const double t = T.t0 + (T.t1 - T.t0) * j / (T.nt - 1);
    CVec& ph = phases_[j];
    ph.resize(modes_.size());
    for (std::size_t k = 0; k < modes_.size(); ++k) ph[k] = std::polar(s, -t * xi2[modes_[k]]);
  }
}

double QuarticFunctional::evaluate(const CVec& coeff, CVec* grad) const {
  const std::size_t N = spec_.size();
  const std::size_t M = modes_.size();
  CVec in(N), space(N), out(N);
  const double dv = spec_.cell_volume();
  const double back = dv / spec_.freq_weight();
  if (grad) grad->assign(M, cplx{});
  double phi = 0.0;
  for (std::size_t j = 0; j < phases_.size(); ++j) {
    const CVec& ph = phases_[j];
    for (std::size_t k = 0; k < M; ++k) in[modes_[k]] = ph[k] * coeff[k];
    dft_backward(spec_, in.data(), space.data());
    double acc = 0.0;
    if (q_ == 4.0) {
      for (std::size_t i = 0; i < N; ++i) {
        const double a = std::norm(space[i]);
        acc += a * a;
        space[i] *= a;
      }
    } else {
      for (std::size_t i = 0; i < N; ++i) {
        const double a = std::abs(space[i]);
        const double p = a > 0.0 ? std::pow(a, q_ - 2.0) : 0.0;
        acc += p * a * a;
        space[i] *= p;
      }
    }
    phi += weights_[j] * dv * acc;
    if (grad) {
      dft_forward(spec_, space.data(), out.data());
      const double f = q_ * weights_[j] * back;
      for (std::size_t k = 0; k < M; ++k) (*grad)[k] += f * std::conj(ph[k]) * out[modes_[k]];
    }
  }
  return phi;
}

double QuarticFunctional::value(const CVec& coeff) const { return evaluate(coeff, nullptr); }

double QuarticFunctional::value_and_gradient(const CVec& coeff, CVec& grad) const {
  return evaluate(coeff, &grad);
}

double QuarticFunctional::norm(const CVec& coeff) const {
  double s = 0.0;
  for (const cplx& c : coeff) s += std::norm(c);
  return std::sqrt(s * spec_.freq_weight());
}

double QuarticFunctional::ratio(const CVec& coeff) const {
  return std::pow(value(coeff), 1.0 / q_) / norm(coeff);
}

FreqField QuarticFunctional::embed(const CVec& coeff) const {
  FreqField g(spec_);
  for (std::size_t k = 0; k < modes_.size(); ++k) g[modes_[k]] = coeff[k];
  return g;
}

CVec QuarticFunctional::restrict(const FreqField& g) const {
  CVec c(modes_.size());
  for (std::size_t k = 0; k < modes_.size(); ++k) c[k] = g[modes_[k]];
  return c;
}

namespace {

void normalize(const QuarticFunctional& F, CVec& c) {
  const double nrm = F.norm(c);
  if (!(nrm > 0.0)) throw DegenerateInputError("cannot normalise a zero coefficient vector");
  for (auto& v : c) v /= nrm;
}

}  // namespace

AscentResult ascend(const QuarticFunctional& F, CVec start, const AscentOptions& opt) {
  AscentResult res;
  normalize(F, start);
  CVec u = std::move(start);
  CVec G, Gc;
  double phi = F.value_and_gradient(u, G);
  res.initial_ratio = std::pow(phi, 1.0 / F.q());
  res.phi_history.push_back(phi);
  double eta = opt.initial_step;
  CVec cand(u.size());
  int step = 0;
  while (step < opt.steps) {
    const double inv = 1.0 / (F.q() * phi);
    for (std::size_t k = 0; k < u.size(); ++k) cand[k] = u[k] + eta * (G[k] * inv - u[k]);
    normalize(F, cand);
    const double phic = F.value_and_gradient(cand, Gc);
    ++step;
    if (phic >= phi) {
      const double gain = (phic - phi) / phi;
      u.swap(cand);
      G.swap(Gc);
      phi = phic;
      res.phi_history.push_back(phi);
      ++res.accepted;
      eta = std::min(2.0 * eta, opt.max_step);
      if (gain < opt.rel_tol) {
        res.converged = true;
        break;
      }
    } else {
      eta *= 0.5;
      if (eta < opt.min_step) break;
    }
  }
  res.ratio = std::pow(phi, 1.0 / F.q());
  res.coeff = std::move(u);
  return res;
}

std::vector<std::size_t> rect_modes(const DomainSpec& spec, const FreqRect& R) {
  const int d = spec.dim();
  R.validate(d);
  const auto grid = grid_for(spec);
  std::vector<std::size_t> modes;
  for (std::size_t i = 0; i < grid->size(); ++i)
    if (R.contains(grid->xi_at(i), d)) modes.push_back(i);
  return modes;
}

CVec trial_start(const QuarticFunctional& F, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  CVec field(F.spec().size());
  for (auto& v : field) v = complex_normal(rng);
  CVec c(F.mode_count());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = field[F.modes()[k]];
  return c;
}

TrialResult run_trial(const QuarticFunctional& F, std::uint64_t seed, const AscentOptions& opt) {
  CVec c = trial_start(F, seed);
  TrialResult t;
  t.seed = seed;
  t.raw_ratio = F.ratio(c);
  const AscentResult a = ascend(F, std::move(c), opt);
  t.ratio = a.ratio;
  t.ascent_converged = a.converged;
  return t;
}

namespace {

struct RectBest {
  double K = -1.0;
  std::uint64_t seed = 0;
  bool converged = false;
};

RectBest best_over_modes(const DomainSpec& spec, std::vector<std::size_t> modes, double q, int trials,
                         const AscentOptions& opt, std::uint64_t seed, TimeWindow T,
                         int first_trial = 0) {
  if (trials < 1) throw ArgumentError("maximize_ratio: trials must be >= 1");
  if (modes.empty()) throw DegenerateInputError("maximize_ratio: rectangle contains no lattice mode");
  const QuarticFunctional F(spec, modes, q, T);
  RectBest best;
  CVec best_coeff;
  bool best_ascent = false;
  for (int t = first_trial; t < first_trial + trials; ++t) {
    const std::uint64_t ts = derive_seed(seed, static_cast<std::uint64_t>(t));
    AscentResult a = ascend(F, trial_start(F, ts), opt);
    if (a.ratio > best.K) {
      best.K = a.ratio;
      best.seed = ts;
      best_coeff = std::move(a.coeff);
      best_ascent = a.converged;
    }
  }
  TimeWindow fine = T;
  fine.nt = 2 * T.nt;
  const QuarticFunctional F2(spec, std::move(modes), q, fine);
  const double refined = F2.ratio(best_coeff);
  best.converged = best_ascent && std::abs(best.K - refined) < 5e-3 * refined;
  return best;
}

}  // namespace

ScanRecord maximize_ratio(const DomainSpec& spec, const FreqRect& R, double q, int trials,
                          const AscentOptions& opt, std::uint64_t seed, TimeWindow T) {
  const RectBest b = best_over_modes(spec, rect_modes(spec, R), q, trials, opt, seed, T);
  ScanRecord rec;
  rec.m = spec.m;
  rec.n = spec.n;
  rec.lambda = R.size;
  rec.mu = R.thickness;
  rec.trials = trials;
  rec.K = b.K;
  rec.seed = b.seed;
  rec.converged = b.converged;
  return rec;
}

FreqRect sample_rect(const DomainSpec& spec, double lambda, double mu, std::uint64_t seed) {
  const int d = spec.dim();
  Rng rng = make_rng(seed);
  FreqRect R;
  R.size = lambda;
  R.thickness = mu;
  double nrm = 0.0;
  do {
    nrm = 0.0;
    for (int a = 0; a < d; ++a) {
      R.normal[a] = normal(rng);
      nrm += R.normal[a] * R.normal[a];
    }
  } while (nrm < 1e-20);
  nrm = std::sqrt(nrm);
  for (int a = 0; a < d; ++a) R.normal[a] /= nrm;
  R.offset = 0.0;
  for (int a = 0; a < d; ++a) {
    const int N = spec.grid[a];
    const double dk = spec.dk(a);
    const int kmax = std::min(N / 2 - 1, static_cast<int>(std::floor(lambda / dk + 1e-9)));
    const int kmin = std::max(-N / 2, -static_cast<int>(std::floor(lambda / dk + 1e-9)));
    R.center[a] = uniform_int(rng, kmin, kmax) * dk;
    R.offset += R.normal[a] * R.center[a];
  }
  return R;
}

std::vector<double> dyadic_up_to(double lambda) {
  std::vector<double> v;
  for (double mu = 1.0; mu <= lambda; mu *= 2.0) v.push_back(mu);
  return v;
}

std::vector<ScanRecord> scan_dyadic(const DomainSpec& spec, const ScanConfig& cfg) {
  spec.validate();
  std::set<double> distinct(cfg.lambdas.begin(), cfg.lambdas.end());
  if (distinct.size() < 3) throw ArgumentError("scan_dyadic needs at least 3 distinct lambda values");
  struct Cell {
    double lambda, mu;
  };
  std::vector<Cell> cells;
  for (double lambda : cfg.lambdas) {
    if (!is_dyadic(lambda)) throw ArgumentError("scan_dyadic: lambda must be dyadic");
    const auto mus = cfg.mu_rule ? cfg.mu_rule(lambda) : dyadic_up_to(lambda);
    for (double mu : mus) {
      if (!is_dyadic(mu) || mu > lambda) throw ArgumentError("scan_dyadic: mu must be dyadic and <= lambda");
      cells.push_back({lambda, mu});
    }
  }
  // Trial starts are the restriction of a lattice-wide Gaussian field, so
  // rectangles that select the same modes share their trials.
  const std::size_t rects = static_cast<std::size_t>(cfg.rects);
  const std::uint64_t trial_seed = derive_seed(cfg.seed, 0x7472ULL);
  std::map<std::vector<std::size_t>, std::size_t> unique;
  std::vector<const std::vector<std::size_t>*> sets;
  std::vector<std::size_t> which(cells.size() * rects);
  for (std::size_t i = 0; i < which.size(); ++i) {
    const Cell& c = cells[i / rects];
    const std::uint64_t cell_seed = derive_seed(
        cfg.seed, {static_cast<std::uint64_t>(c.lambda), static_cast<std::uint64_t>(c.mu)});
    const FreqRect R = sample_rect(spec, c.lambda, c.mu, derive_seed(cell_seed, i % rects));
    auto [it, fresh] = unique.emplace(rect_modes(spec, R), unique.size());
    if (fresh) sets.push_back(&it->first);
    which[i] = it->second;
  }
  auto items = parallel_map(sets.size(), [&](std::size_t u) {
    return best_over_modes(spec, *sets[u], cfg.q, cfg.trials, cfg.ascent, trial_seed, cfg.T,
                           cfg.first_trial);
  });
  std::vector<ScanRecord> out;
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    ScanRecord rec;
    rec.m = spec.m;
    rec.n = spec.n;
    rec.lambda = cells[ci].lambda;
    rec.mu = cells[ci].mu;
    rec.trials = cfg.rects * cfg.trials;
    for (std::size_t r = 0; r < rects; ++r) {
      const RectBest& b = items[which[ci * rects + r]];
      if (b.K > rec.K) {
        rec.K = b.K;
        rec.seed = b.seed;
        rec.converged = b.converged;
      }
    }
    out.push_back(rec);
  }
  return out;
}

FitResult fit_exponents(const std::vector<ScanRecord>& records) {
  std::set<double> distinct;
  for (const auto& r : records) distinct.insert(r.lambda);
  if (distinct.size() < 3) throw ArgumentError("fit_exponents needs at least 3 distinct lambda values");
  bool thin = false;
  for (const auto& r : records) {
    if (!(r.K > 0.0)) throw ArgumentError("fit_exponents: K must be positive");
    if (r.mu != r.lambda) thin = true;
  }
  const int cols = thin ? 3 : 2;
  const Eigen::Index rows = static_cast<Eigen::Index>(records.size());
  Eigen::MatrixXd A(rows, cols);
  Eigen::VectorXd b(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& r = records[static_cast<std::size_t>(i)];
    A(i, 0) = 1.0;
    A(i, 1) = std::log(r.lambda);
    if (thin) A(i, 2) = std::log(r.mu / r.lambda);
    b(i) = std::log(r.K);
  }
  const Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);
  FitResult f;
  f.C = std::exp(x(0));
  f.alpha = x(1);
  f.delta_hat = thin ? x(2) : 0.0;
  f.alpha_only = !thin;
  f.residual_linf = (A * x - b).cwiseAbs().maxCoeff();
  return f;
}

std::vector<ScanRecord> merge_scans(const std::vector<ScanRecord>& a, const std::vector<ScanRecord>& b) {
  if (a.size() != b.size()) throw ArgumentError("merge_scans: scans cover different cells");
  std::vector<ScanRecord> out = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].lambda != b[i].lambda || a[i].mu != b[i].mu || a[i].m != b[i].m || a[i].n != b[i].n)
      throw ArgumentError("merge_scans: scans cover different cells");
    out[i].trials = a[i].trials + b[i].trials;
    if (b[i].K > a[i].K) {
      out[i].K = b[i].K;
      out[i].seed = b[i].seed;
      out[i].converged = b[i].converged;
    }
  }
  return out;
}

double envelope_constant(const std::vector<ScanRecord>& records, double delta0) {
  double c = 0.0;
  for (const auto& r : records)
    c = std::max(c, r.K / (std::sqrt(r.lambda) * std::pow(r.mu / r.lambda, delta0)));
  return c;
}

double u4_atom_ratio(const std::vector<AtomPiece>& pieces, const FreqRect& R, int nt_per_piece) {
  if (pieces.empty()) throw ArgumentError("u4_atom_ratio: atom has no pieces");
  double norm4 = 0.0;
  for (const auto& p : pieces) norm4 += std::pow(l2_norm(p.phi), 4);
  if (std::abs(norm4 - 1.0) > 1e-12)
    throw ArgumentError("u4_atom_ratio: atom is not normalised (sum ||phi||^4 = " +
                        std::to_string(norm4) + ")");
  if (std::abs(pieces.front().t_begin) > 1e-12 || std::abs(pieces.back().t_end - 1.0) > 1e-12)
    throw ArgumentError("u4_atom_ratio: pieces must cover [0,1]");
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    if (!(pieces[k].t_end > pieces[k].t_begin)) throw ArgumentError("u4_atom_ratio: empty interval");
    if (k > 0 && std::abs(pieces[k].t_begin - pieces[k - 1].t_end) > 1e-12)
      throw ArgumentError("u4_atom_ratio: intervals must be contiguous");
  }
  double total = 0.0;
  for (const auto& p : pieces) {
    const FreqField pr = project_rect(p.phi, R);
    total += std::pow(spacetime_lq(pr, 4.0, p.t_begin, p.t_end, nt_per_piece), 4);
  }
  return std::pow(total, 0.25);
}

DveResult dve_check(double delta, double lambda, int trials, std::uint64_t seed) {
  if (!(delta > 0.0)) throw ArgumentError("dve_check: delta must be positive");
  if (!is_dyadic(lambda)) throw ArgumentError("dve_check: lambda must be dyadic");
  const auto mus = dyadic_up_to(lambda);
  std::vector<double> b;
  DveResult r;
  for (double mu : mus) {
    b.push_back(std::pow(1.0 / mu + mu / lambda, delta));
    r.certificate += b.back() * b.back();
  }
  Rng rng = make_rng(seed);
  for (int t = 0; t < trials; ++t) {
    cplx lhs = 0.0;
    double rhs = 0.0;
    for (double w : b) {
      const cplx c = complex_normal(rng);
      lhs += w * c;
      rhs += std::norm(c);
    }
    r.empirical = std::max(r.empirical, std::norm(lhs) / rhs);
  }
  return r;
}

}  // namespace dlab
