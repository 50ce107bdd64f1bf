#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "dlab/field.hpp"
#include "dlab/rng.hpp"

namespace dlab {

using LatticeIndex = std::array<int, kMaxDim>;

struct LatticeMode {
  LatticeIndex k{};
  cplx amp{};
};

// A function given by finitely many lattice modes. Only the spec's lattice
// spacing matters here; the grid size is ignored, so modes may lie far outside
// any FFT band.
struct SparseSpectrum {
  DomainSpec spec;
  std::vector<LatticeMode> modes;

  Vec4 xi(const LatticeMode& m) const;
  double xi_sq(const LatticeMode& m) const;
  double l2_norm() const;

  // Dense representation on spec's grid; throws ArgumentError if a mode does
  // not fit in the grid band.
  FreqField to_field() const;
  static SparseSpectrum from_field(const FreqField& g);
};

// Largest |k| on an axis with |k dk| <= r.
int lattice_reach(const DomainSpec& spec, int axis, double r);

// Lattice nodes xi with xi in the box center + [-half, half]^d and pred(xi).
// If the box holds at most `enumerate_limit` nodes, all matches are listed and
// a uniform subset of size min(cap, matches) kept; otherwise nodes are drawn by
// rejection sampling until `cap` distinct matches (or the attempt budget) are
// reached.
template <class Pred>
std::vector<LatticeIndex> sample_lattice(const DomainSpec& spec, const Vec4& center, double half,
                                         Pred pred, std::size_t cap, Rng& rng,
                                         std::size_t enumerate_limit = 200000);

// Envelope exponent of a geometry: 1/4 on R^3 x T, 1/12 on R^2 x T^2.
// Other geometries are open cases and return 0.
double envelope_delta(int m, int n);
bool is_open_case(int m, int n);

}  // namespace dlab

#include "dlab/lattice_impl.hpp"
