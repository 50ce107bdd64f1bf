#include "dlab/counting.hpp"

#include <algorithm>
#include <cmath>

#include "dlab/errors.hpp"
#include "dlab/lattice.hpp"
#include "dlab/parallel.hpp"
#include "dlab/rng.hpp"

namespace dlab {

double annulus_measure(const AnnulusQuery& q) {
  if (!(q.c >= 0.0)) throw ArgumentError("annulus_measure: c must be >= 0");
  if (!(q.k >= 1.0)) throw ArgumentError("annulus_measure: k must be >= 1");
  const double outer = q.c + q.k;
  const double r = std::sqrt(outer);
  const long n0 = static_cast<long>(std::floor(q.e - r));
  const long n1 = static_cast<long>(std::ceil(q.e + r));
  double v = 0.0;
  for (long n = n0; n <= n1; ++n) {
    const double s = (n - q.e) * (n - q.e);
    const double a = outer - s;
    if (a <= 0.0) continue;
    const double b = q.c - s;
    if (b > 0.0)
      v += 2.0 * q.k / (std::sqrt(a) + std::sqrt(b));
    else
      v += 2.0 * std::sqrt(a);
  }
  return v;
}

std::vector<AnnulusScanRow> annulus_sup_scan(const std::vector<double>& k_set, int samples,
                                             std::uint64_t seed, double c_max) {
  return parallel_map(k_set.size(), [&](std::size_t i) {
    const double k = k_set[i];
    AnnulusScanRow row;
    row.k = k;
    Rng rng = make_rng(derive_seed(seed, i));
    auto consider = [&](double c, double e) {
      const double v = annulus_measure({c, 0.0, e, k}) / k;
      if (v > row.sup_ratio) {
        row.sup_ratio = v;
        row.arg_c = c;
        row.arg_e = e;
      }
      return v;
    };
    for (double e : {0.0, 0.5}) consider(0.0, e);
    row.sup_e0 = annulus_measure({0.0, 0.0, 0.0, k}) / k;
    row.sup_ehalf = annulus_measure({0.0, 0.0, 0.5, k}) / k;
    const double log_max = std::log10(c_max + 1.0);
    for (int s = 0; s < samples; ++s) {
      // Alternate uniform and log-uniform draws of c so both small and large
      // radii are represented.
      const double c = s % 2 == 0 ? uniform(rng, 0.0, c_max)
                                  : std::pow(10.0, uniform(rng, 0.0, log_max)) - 1.0;
      const double e = uniform01(rng);
      consider(c, e);
      row.sup_e0 = std::max(row.sup_e0, consider(c, 0.0));
      row.sup_ehalf = std::max(row.sup_ehalf, consider(c, 0.5));
    }
    return row;
  });
}

namespace {

struct Interval {
  double lo = 0.0;
  double hi = -1.0;
  bool empty() const { return !(hi > lo); }
};

Interval intersect(Interval a, Interval b) { return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)}; }

// {x : |coef x + shift| <= mu}
Interval slab_interval(double coef, double shift, double mu) {
  if (std::abs(coef) < 1e-14) {
    if (std::abs(shift) <= mu) return {-1e300, 1e300};
    return {};
  }
  const double a = (-mu - shift) / coef;
  const double b = (mu - shift) / coef;
  return {std::min(a, b), std::max(a, b)};
}

// Length of ([lo,hi] u [-hi,-lo]) n J for 0 <= lo <= hi.
double sym_length(double lo, double hi, Interval J) {
  double s = 0.0;
  const Interval p = intersect({lo, hi}, J);
  if (!p.empty()) s += p.hi - p.lo;
  const Interval q = intersect({-hi, -lo}, J);
  if (!q.empty()) s += q.hi - q.lo;
  return s;
}

// Integral of alpha + beta y^2 over ([lo,hi] u [-hi,-lo]) n J.
double sym_quadratic(double alpha, double beta, double lo, double hi, Interval J) {
  auto seg = [&](Interval p) {
    if (p.empty()) return 0.0;
    return alpha * (p.hi - p.lo) + beta * (p.hi * p.hi * p.hi - p.lo * p.lo * p.lo) / 3.0;
  };
  return seg(intersect({lo, hi}, J)) + seg(intersect({-hi, -lo}, J));
}

// Length of {y in J : |2y^2 + C0| <= c}.
double shell_length(double C0, double c, Interval J) {
  if (J.empty() || c - C0 < 0.0) return 0.0;
  const double ro = std::sqrt(0.5 * (c - C0));
  const double ri = std::sqrt(std::max(0.0, 0.5 * (-c - C0)));
  return sym_length(ri, ro, J);
}

// Integral over J of max(0, 2c - |2y^2 + C0|).
double fiber_integral(double C0, double c, Interval J) {
  const double c2 = 2.0 * c;
  if (J.empty() || c2 - C0 < 0.0) return 0.0;
  const double ro = std::sqrt(0.5 * (c2 - C0));
  if (C0 >= 0.0) return sym_quadratic(c2 - C0, -2.0, 0.0, ro, J);
  const double ri = std::sqrt(std::max(0.0, 0.5 * (-c2 - C0)));
  const double y0 = std::sqrt(-0.5 * C0);
  return sym_quadratic(c2 + C0, 2.0, ri, y0, J) + sym_quadratic(c2 - C0, -2.0, y0, ro, J);
}

struct Scanner {
  const ConvSetQuery& q;
  int d;
  int exact;               // exact axis, -1 if none
  std::vector<int> axes;   // summed / sampled axes
  double h;
  double rout2;            // shell radius^2 around xi/2 for budget 2 cutoff
  SetMeasures out{};
  Vec4 eta{};

  void leaf(double weight) {
    const double lam2 = q.lambda * q.lambda;
    double r2 = 0.0, rp2 = 0.0, S = 0.0, Sxi = 0.0, C0 = q.tau;
    for (int i : axes) {
      r2 += eta[i] * eta[i];
      const double dx = q.xi[i] - eta[i];
      rp2 += dx * dx;
      S += q.a[i] * eta[i];
      C0 += eta[i] * eta[i] + dx * dx;
    }
    for (int i = 0; i < d; ++i) Sxi += q.a[i] * q.xi[i];
    if (exact < 0) {
      if (r2 > lam2 || std::abs(S) > q.mu) return;
      const double Q = C0;
      if (std::abs(Q) <= q.cutoff) out.B += weight;
      if (std::abs(Q) <= 2.0 * q.cutoff) out.B2 += weight;
      if (rp2 <= lam2 && std::abs(Sxi - S) <= q.mu)
        out.A += weight * std::max(0.0, 2.0 * q.cutoff - std::abs(Q));
      return;
    }
    const double xe = q.xi[exact];
    const double ae = q.a[exact];
    C0 += 0.5 * xe * xe;
    // Work in y = x - xi_e / 2.
    const double b = lam2 - r2;
    if (b < 0.0) return;
    const double sb = std::sqrt(b);
    Interval I = {-sb - 0.5 * xe, sb - 0.5 * xe};
    I = intersect(I, slab_interval(ae, S + 0.5 * ae * xe, q.mu));
    if (I.empty()) return;
    out.B += weight * shell_length(C0, q.cutoff, I);
    out.B2 += weight * shell_length(C0, 2.0 * q.cutoff, I);
    const double bp = lam2 - rp2;
    if (bp < 0.0) return;
    const double sbp = std::sqrt(bp);
    // (xi_e - x)^2 <= bp  <=>  |y - xi_e/2| <= sqrt(bp)
    Interval J = intersect(I, {0.5 * xe - sbp, 0.5 * xe + sbp});
    // |a.xi - a.eta| <= mu  <=>  |ae y + S + ae xe/2 - Sxi| <= mu
    J = intersect(J, slab_interval(ae, S + 0.5 * ae * xe - Sxi, q.mu));
    out.A += weight * fiber_integral(C0, q.cutoff, J);
  }

  void walk(std::size_t level, double r2, double s2, double weight) {
    if (level == axes.size()) {
      leaf(weight);
      return;
    }
    const int i = axes[level];
    const double lam2 = q.lambda * q.lambda;
    const double ball = lam2 - r2;
    const double shell = rout2 - s2;
    if (ball < 0.0 || shell < 0.0) return;
    const double sb = std::sqrt(ball), ss = std::sqrt(shell);
    const double c = 0.5 * q.xi[i];
    const double lo = std::max(-sb, c - ss);
    const double hi = std::min(sb, c + ss);
    if (lo > hi) return;
    const bool lattice = i >= q.m;
    const double step = lattice ? 1.0 : h;
    const double w = lattice ? 1.0 : h;
    const long j0 = static_cast<long>(std::ceil(lo / step - 1e-12));
    const long j1 = static_cast<long>(std::floor(hi / step + 1e-12));
    for (long j = j0; j <= j1; ++j) {
      const double v = j * step;
      eta[i] = v;
      walk(level + 1, r2 + v * v, s2 + (v - c) * (v - c), weight * w);
    }
    eta[i] = 0.0;
  }
};

void check_query(const ConvSetQuery& q) {
  if (q.m < 0 || q.n < 0 || q.m + q.n < 1 || q.m + q.n > kMaxDim)
    throw ArgumentError("ConvSetQuery: bad geometry");
  if (!(q.cutoff > 0.0)) throw ArgumentError("ConvSetQuery: cutoff must be positive");
  if (!(q.mu >= 1.0) || q.mu > q.lambda) throw ArgumentError("ConvSetQuery: need 1 <= mu <= lambda");
  double a2 = 0.0;
  for (int i = 0; i < q.m + q.n; ++i) a2 += q.a[i] * q.a[i];
  if (std::abs(std::sqrt(a2) - 1.0) > 1e-9) throw ArgumentError("ConvSetQuery: |a| must be 1");
}

}  // namespace

SetMeasures set_measures(const ConvSetQuery& q, double h) {
  check_query(q);
  if (!(h > 0.0)) throw ArgumentError("set_measures: h must be positive");
  const int d = q.m + q.n;
  Scanner s{q, d, q.m >= 1 ? q.m - 1 : -1, {}, h, 0.0};
  for (int i = 0; i < d; ++i)
    if (i != s.exact) s.axes.push_back(i);
  double xi2 = 0.0;
  for (int i = 0; i < d; ++i) xi2 += q.xi[i] * q.xi[i];
  s.rout2 = 0.5 * (2.0 * q.cutoff - q.tau - 0.5 * xi2);
  s.out.h = h;
  if (s.rout2 < 0.0) return s.out;
  s.walk(0, 0.0, 0.0, 1.0);
  return s.out;
}

namespace {

ResolvedMeasure resolve(const ConvSetQuery& q, double h, bool want_a) {
  if (h <= 0.0) h = q.lambda / 64.0;
  const SetMeasures coarse = set_measures(q, h);
  ResolvedMeasure r;
  r.value = want_a ? coarse.A : coarse.B;
  if (q.m <= 1) {
    // No sampled line direction: the scan is exact.
    r.refined = r.value;
    r.resolved = true;
    return r;
  }
  const SetMeasures fine = set_measures(q, 0.5 * h);
  r.refined = want_a ? fine.A : fine.B;
  const double scale = std::max(std::abs(r.refined), std::abs(r.value));
  r.resolved = scale == 0.0 || std::abs(r.value - r.refined) < 0.01 * scale;
  return r;
}

}  // namespace

ResolvedMeasure setB_measure(const ConvSetQuery& q, double h) { return resolve(q, h, false); }
ResolvedMeasure setA_measure(const ConvSetQuery& q, double h) { return resolve(q, h, true); }

double case_normalisation(int m, int n, double lambda, double mu) {
  if (m == 2 && n == 2) return std::cbrt(mu) * std::pow(lambda, 5.0 / 3.0);
  return mu * lambda;
}

double i1_measure_31(double a1, double a4, double lambda, double mu) {
  const long kmax = static_cast<long>(std::floor(lambda + 1e-12));
  double total = 0.0;
  for (long e4 = -kmax; e4 <= kmax; ++e4) {
    const Interval I = intersect({-lambda, lambda}, slab_interval(a1, a4 * e4, mu));
    if (!I.empty()) total += std::min(I.hi - I.lo, 2.0 * lambda);
  }
  return total;
}

double i1_count_22(double a3, double a4, double lambda, double w) {
  const long kmax = static_cast<long>(std::floor(lambda + 1e-12));
  double count = 0.0;
  for (long e3 = -kmax; e3 <= kmax; ++e3)
    for (long e4 = -kmax; e4 <= kmax; ++e4)
      if (std::abs(e3) + std::abs(e4) <= lambda && std::abs(a3 * e3 + a4 * e4) <= w) count += 1.0;
  return count;
}

std::vector<ConvSetQuery> case_queries(int m, int n, double lambda, double mu, int samples,
                                       double cutoff, std::uint64_t seed) {
  const int d = m + n;
  Rng rng = make_rng(seed);
  std::vector<ConvSetQuery> out;
  ConvSetQuery base;
  base.m = m;
  base.n = n;
  base.lambda = lambda;
  base.mu = mu;
  base.cutoff = cutoff;
  const double split = 0.5 * std::cbrt(mu / lambda);
  for (int s = 0; s < samples; ++s) {
    ConvSetQuery q = base;
    double xi2 = 0.0;
    for (int i = 0; i < d; ++i) {
      q.xi[i] = i < m ? uniform(rng, -lambda, lambda)
                      : static_cast<double>(uniform_int(rng, -static_cast<int>(lambda), static_cast<int>(lambda)));
      xi2 += q.xi[i] * q.xi[i];
    }
    const double rho = uniform(rng, 0.0, 1.5 * lambda);
    q.tau = -0.5 * xi2 - 2.0 * rho * rho;
    q.a = Vec4{};
    if (m == 2 && n == 2) {
      // Alternate between the two regimes of |a_R| around (mu/lambda)^{1/3}/2.
      const double a1 = s % 2 == 0 ? uniform(rng, split, 1.0) : uniform(rng, 0.0, split);
      const double th = uniform(rng, 0.0, kTwoPi);
      const double ph = uniform(rng, 0.0, kTwoPi);
      const double at = std::sqrt(std::max(0.0, 1.0 - a1 * a1));
      q.a = {a1 * std::cos(th), a1 * std::sin(th), at * std::cos(ph), at * std::sin(ph)};
    } else {
      double nrm = 0.0;
      while (nrm < 1e-20) {
        nrm = 0.0;
        for (int i = 0; i < d; ++i) {
          q.a[i] = normal(rng);
          nrm += q.a[i] * q.a[i];
        }
      }
      nrm = std::sqrt(nrm);
      for (int i = 0; i < d; ++i) q.a[i] /= nrm;
    }
    out.push_back(q);
  }
  for (int axis = 0; axis < d; ++axis) {
    for (double frac : {0.0, 0.25, 0.5, 1.0 / std::sqrt(2.0), 1.0}) {
      ConvSetQuery q = base;
      q.a = Vec4{};
      q.a[axis] = 1.0;
      const double rho = frac * lambda;
      q.tau = -2.0 * rho * rho;
      out.push_back(q);
    }
  }
  return out;
}

std::vector<CaseBoundRow> case_bound_report(int m, int n, const CaseBoundConfig& cfg) {
  if (m < 0 || n < 0 || m + n < 1 || m + n > kMaxDim) throw ArgumentError("case_bound_report: bad geometry");
  struct Cell {
    double lambda, mu;
  };
  std::vector<Cell> cells;
  for (double lambda : cfg.lambdas) {
    std::vector<double> mus = cfg.mus;
    if (mus.empty())
      for (double mu = 1.0; mu <= lambda; mu *= 2.0) mus.push_back(mu);
    for (double mu : mus)
      if (mu <= lambda) cells.push_back({lambda, mu});
  }
  std::vector<CaseBoundRow> rows;
  for (const Cell& c : cells) {
    const auto queries = case_queries(
        m, n, c.lambda, c.mu, cfg.samples, cfg.cutoff,
        derive_seed(cfg.seed, {static_cast<std::uint64_t>(c.lambda), static_cast<std::uint64_t>(c.mu)}));
    const double h = c.lambda * cfg.h_fraction;
    const auto res = parallel_map(queries.size(), [&](std::size_t i) { return set_measures(queries[i], h); });
    CaseBoundRow row;
    row.m = m;
    row.n = n;
    row.lambda = c.lambda;
    row.mu = c.mu;
    row.open_case = is_open_case(m, n);
    row.queries = static_cast<int>(queries.size());
    std::size_t best = 0;
    for (std::size_t i = 0; i < res.size(); ++i) {
      if (res[i].B > res[best].B) best = i;
      const double bound = 2.0 * cfg.cutoff * res[i].B2;
      if (res[i].A > bound * (1.0 + 1e-12) + 1e-300) ++row.fiber_violations;
      if (bound > 0.0) row.max_fiber_ratio = std::max(row.max_fiber_ratio, res[i].A / bound);
    }
    row.arg = queries[best];
    row.measure = res[best].B;
    row.normalized_ratio = row.measure / case_normalisation(m, n, c.lambda, c.mu);
    row.resolved = setB_measure(queries[best], h).resolved;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace dlab
