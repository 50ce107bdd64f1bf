#include "dlab/lattice.hpp"

#include <cmath>

#include "dlab/spectral.hpp"

namespace dlab {

Vec4 SparseSpectrum::xi(const LatticeMode& m) const {
  Vec4 x{};
  for (int a = 0; a < spec.dim(); ++a) x[a] = m.k[a] * spec.dk(a);
  return x;
}

double SparseSpectrum::xi_sq(const LatticeMode& m) const {
  const Vec4 x = xi(m);
  return x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
}

double SparseSpectrum::l2_norm() const {
  double s = 0.0;
  for (const auto& m : modes) s += std::norm(m.amp);
  return std::sqrt(s * spec.freq_weight());
}

FreqField SparseSpectrum::to_field() const {
  const auto grid = grid_for(spec);
  FreqField g(spec);
  for (const auto& m : modes) {
    for (int a = 0; a < spec.dim(); ++a) {
      const int N = spec.grid[a];
      if (m.k[a] < -N / 2 || m.k[a] >= N / 2)
        throw ArgumentError("SparseSpectrum::to_field: mode outside the grid band");
    }
    g[grid->flatten_signed(m.k)] += m.amp;
  }
  return g;
}

SparseSpectrum SparseSpectrum::from_field(const FreqField& g) {
  SparseSpectrum s;
  s.spec = g.spec();
  const auto grid = grid_for(g.spec());
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] == 0.0) continue;
    const auto idx = grid->unflatten(i);
    LatticeMode m;
    for (int a = 0; a < s.spec.dim(); ++a) m.k[a] = signed_index(idx[a], s.spec.grid[a]);
    m.amp = g[i];
    s.modes.push_back(m);
  }
  return s;
}

int lattice_reach(const DomainSpec& spec, int axis, double r) {
  return static_cast<int>(std::floor(r / spec.dk(axis) + 1e-9));
}

double envelope_delta(int m, int n) {
  if (m == 3 && n == 1) return 0.25;
  if (m == 2 && n == 2) return 1.0 / 12.0;
  return 0.0;
}

bool is_open_case(int m, int n) { return envelope_delta(m, n) == 0.0; }

}  // namespace dlab
