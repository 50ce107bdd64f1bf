#pragma once

#include <functional>
#include <span>

#include "dlab/field.hpp"

namespace dlab {

FreqField to_frequency(const SpatialField& f);
SpatialField to_space(const FreqField& g);

// e^{-it|xi|^2} on every mode.
FreqField propagate(const FreqField& g, double t);
void propagate_inplace(FreqField& g, double t);

// Smooth bump: 1 on |s|<=1, 0 on |s|>=2.
double bump(double s);
bool is_dyadic(double lambda);
// psi_lambda(|xi|); lambda must be dyadic (not checked here).
double dyadic_symbol(double abs_xi, double lambda);

FreqField project_dyadic(const FreqField& g, double lambda);

using ModePredicate = std::function<bool(const Vec4& xi)>;
FreqField project_set(const FreqField& g, const ModePredicate& keep);

// A rectangle of size lambda around xi0 with thickness mu across the normal a.
struct FreqRect {
  Vec4 center{};
  double size = 1.0;
  Vec4 normal{1.0, 0.0, 0.0, 0.0};
  double offset = 0.0;
  double thickness = 1.0;

  void validate(int dim) const;  // throws ArgumentError
  bool contains(const Vec4& xi, int dim) const;
};

FreqField project_rect(const FreqField& g, const FreqRect& r);

// Translate the frequency support by xi0, which must be a lattice vector.
FreqField galilean_shift(const FreqField& g, const Vec4& xi0);

double l2_norm(const FreqField& g);
double l2_norm(const SpatialField& f);
cplx inner(const FreqField& a, const FreqField& b);

double sobolev_norm(const FreqField& g, double s);
// Per-mode weight w(xi) with ||g||_{H^s}^2 = sum_xi w(xi)|g(xi)|^2 W.
double sobolev_weight(double abs_xi, double s);

struct LqResult {
  double value = 0.0;
  double refined = 0.0;
  bool converged = false;
};

// Composite trapezoid in t with nt nodes on [t0,t1] of the spatial L^q norm.
double spacetime_lq(const FreqField& g, double q, double t0, double t1, int nt);
// Same, plus the doubled-resolution value; converged if they differ < 0.5%.
LqResult spacetime_lq_checked(const FreqField& g, double q, double t0, double t1, int nt);

// Trapezoid weights for nt nodes on [t0,t1].
std::vector<double> trapezoid_weights(double t0, double t1, int nt);

}  // namespace dlab
