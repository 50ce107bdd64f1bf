#pragma once

#include <cstdint>
#include <vector>

#include "dlab/domain.hpp"

namespace dlab {

// {(xi, n) in R x Z : c <= (xi - d)^2 + (n - e)^2 <= c + k}
struct AnnulusQuery {
  double c = 0.0;
  double d = 0.0;
  double e = 0.0;
  double k = 1.0;
};

// Exact mixed measure (Lebesgue in xi, counting in n).
double annulus_measure(const AnnulusQuery& q);

struct AnnulusScanRow {
  double k = 1.0;
  double sup_ratio = 0.0;   // over all sampled (c, e)
  double sup_e0 = 0.0;      // same c samples, e = 0
  double sup_ehalf = 0.0;   // same c samples, e = 1/2
  double arg_c = 0.0;
  double arg_e = 0.0;
};

// Sup of annulus_measure / k over seeded (c, e) in [0, c_max] x [0, 1), plus the
// structured points c = 0 with e in {0, 1/2}.
std::vector<AnnulusScanRow> annulus_sup_scan(const std::vector<double>& k_set, int samples,
                                             std::uint64_t seed, double c_max = 1e6);

// Query for the convolution sets. R is in origin form {|eta| <= lambda, |a.eta| <= mu}.
struct ConvSetQuery {
  int m = 3;
  int n = 1;
  double tau = 0.0;
  Vec4 xi{};
  Vec4 a{1.0, 0.0, 0.0, 0.0};
  double lambda = 8.0;
  double mu = 1.0;
  double cutoff = 1.0;
};

// One pass over the mixed lattice. Circle directions are summed over Z; line
// directions except the last are sampled at spacing h with weight h; the last
// line direction is integrated exactly.
struct SetMeasures {
  double B = 0.0;        // |{eta in R : |tau + |eta|^2 + |xi-eta|^2| <= cutoff}|
  double B2 = 0.0;       // same with budget 2 * cutoff
  double A = 0.0;        // |A(tau, xi)| with both budgets equal to cutoff
  double h = 0.0;
};

SetMeasures set_measures(const ConvSetQuery& q, double h);

struct ResolvedMeasure {
  double value = 0.0;
  double refined = 0.0;
  bool resolved = false;
};

// setB_measure and setA_measure at spacing h (default lambda/64) with the
// halving check: resolved when h/2 changes the value by < 1%.
ResolvedMeasure setB_measure(const ConvSetQuery& q, double h = 0.0);
ResolvedMeasure setA_measure(const ConvSetQuery& q, double h = 0.0);

// |B| normalisation of the geometry: mu lambda on R^3 x T, mu^{1/3} lambda^{5/3}
// on R^2 x T^2; open cases fall back to mu lambda.
double case_normalisation(int m, int n, double lambda, double mu);

// {(eta1, eta4) in R x Z : |a1 eta1 + a4 eta4| <= mu, |eta1| <= lambda, |eta4| <= lambda}
double i1_measure_31(double a1, double a4, double lambda, double mu);
// #{(eta3, eta4) in Z^2 : |eta3| + |eta4| <= lambda, |a3 eta3 + a4 eta4| <= w}
double i1_count_22(double a3, double a4, double lambda, double w);

struct CaseBoundRow {
  int m = 3;
  int n = 1;
  double lambda = 0.0;
  double mu = 0.0;
  ConvSetQuery arg;          // query attaining the sup
  double measure = 0.0;      // sup |B|
  double normalized_ratio = 0.0;
  bool resolved = false;
  bool open_case = false;
  int queries = 0;
  double max_fiber_ratio = 0.0;  // max |A| / (2 cutoff |B_{2 cutoff}|)
  int fiber_violations = 0;
};

struct CaseBoundConfig {
  std::vector<double> lambdas{8, 16, 32};
  std::vector<double> mus;  // empty: all dyadic mu <= lambda
  int samples = 512;
  double cutoff = 1.0;
  double h_fraction = 1.0 / 64.0;  // h = lambda * h_fraction
  std::uint64_t seed = 0;
};

// Seeded (tau, xi, a) queries for a cell, followed by the axis-aligned
// structured queries with xi = 0.
std::vector<ConvSetQuery> case_queries(int m, int n, double lambda, double mu, int samples,
                                       double cutoff, std::uint64_t seed);

std::vector<CaseBoundRow> case_bound_report(int m, int n, const CaseBoundConfig& cfg);

}  // namespace dlab
