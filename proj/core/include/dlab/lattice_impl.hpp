#pragma once

#include <algorithm>
#include <cmath>
#include <set>

namespace dlab {

template <class Pred>
std::vector<LatticeIndex> sample_lattice(const DomainSpec& spec, const Vec4& center, double half,
                                         Pred pred, std::size_t cap, Rng& rng,
                                         std::size_t enumerate_limit) {
  const int d = spec.dim();
  LatticeIndex lo{}, hi{};
  double count = 1.0;
  for (int a = 0; a < d; ++a) {
    const double dk = spec.dk(a);
    lo[a] = static_cast<int>(std::ceil((center[a] - half) / dk - 1e-9));
    hi[a] = static_cast<int>(std::floor((center[a] + half) / dk + 1e-9));
    if (hi[a] < lo[a]) return {};
    count *= hi[a] - lo[a] + 1;
  }
  auto xi_of = [&](const LatticeIndex& k) {
    Vec4 x{};
    for (int a = 0; a < d; ++a) x[a] = k[a] * spec.dk(a);
    return x;
  };
  std::vector<LatticeIndex> out;
  if (count <= static_cast<double>(enumerate_limit)) {
    LatticeIndex k = lo;
    for (;;) {
      if (pred(xi_of(k))) out.push_back(k);
      int a = d - 1;
      while (a >= 0 && ++k[a] > hi[a]) {
        k[a] = lo[a];
        --a;
      }
      if (a < 0) break;
    }
    if (out.size() > cap) {
      for (std::size_t i = 0; i < cap; ++i) {
        const int j = uniform_int(rng, static_cast<int>(i), static_cast<int>(out.size() - 1));
        std::swap(out[i], out[static_cast<std::size_t>(j)]);
      }
      out.resize(cap);
      std::sort(out.begin(), out.end());
    }
    return out;
  }
  std::set<LatticeIndex> seen;
  const std::size_t budget = 200 * cap + 10000;
  for (std::size_t attempt = 0; attempt < budget && seen.size() < cap; ++attempt) {
    LatticeIndex k{};
    for (int a = 0; a < d; ++a) k[a] = uniform_int(rng, lo[a], hi[a]);
    if (pred(xi_of(k))) seen.insert(k);
  }
  return {seen.begin(), seen.end()};
}

}  // namespace dlab
