#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <limits>
#include <vector>

#include "dlab/field.hpp"

namespace dlab {

inline constexpr double kInfTime = std::numeric_limits<double>::infinity();

// Right-continuous piecewise-constant path sampled at strictly increasing
// times. A last time of +inf is allowed; its value is zero by convention.
struct TimeSeries {
  std::vector<double> times;
  std::vector<FreqField> values;

  std::size_t size() const { return times.size(); }
  bool has_infinity() const { return !times.empty() && times.back() == kInfTime; }
  void validate() const;  // throws ArgumentError
};

void write_series(std::ostream& os, const TimeSeries& s);
TimeSeries read_series(std::istream& is);

// sup over increasing chains i_0 < ... < i_r in [0, count) of
// sum dist(i_{j-1}, i_j)^p. O(count^2) dynamic programme.
double chain_sup(std::size_t count, const std::function<double(std::size_t, std::size_t)>& dist, double p);

// V^p norm in L^2, including the terminal jump to the value 0 at +inf.
double vp_norm(const TimeSeries& s, double p);
// V^p norm of t -> e^{-it D} v(t) in H^s.
double vp_delta_norm(const TimeSeries& s, double p, double s_reg);

// U^p atom: sum_k chi_[t_k, t_{k+1}) phi_k, sum ||phi_k||^p = 1.
struct UpAtom {
  std::vector<double> times;       // t_0 < ... < t_K, t_K may be +inf
  std::vector<FreqField> pieces;   // phi_0 .. phi_{K-1}
  double p = 2.0;

  void validate() const;
  TimeSeries to_series() const;
};

// Scales the pieces so that the atom normalisation holds.
UpAtom make_atom(std::vector<double> times, std::vector<FreqField> pieces, double p);

struct CubeNorm {
  std::array<long, kMaxDim> cube{};
  double value = 0.0;
};

struct YsResult {
  double ys = 0.0;
  // Upper bound for the X^s norm from explicit U^2 decompositions of each
  // cube's pulled-back path (min of the one-atom and jump decompositions).
  double xs_certificate = 0.0;
  std::vector<CubeNorm> cubes;
};

// Cubes z + [0,1)^d in frequency space.
YsResult ys_norm(const TimeSeries& s, double s_reg);

// V^2 norm of a U^2 atom is at most this.
inline constexpr double kAtomV2Bound = 2.0;

}  // namespace dlab
