#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace dlab {

std::uint64_t splitmix64(std::uint64_t x);

// Child seed for work item `item` of a stream rooted at `master`. Independent
// of scheduling, so concurrent scans reproduce serial ones.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t item);
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

// Draws from these are implemented by hand so results do not depend on the
// standard library's distribution algorithms.
double uniform01(Rng& rng);
double uniform(Rng& rng, double lo, double hi);
double normal(Rng& rng);
std::complex<double> complex_normal(Rng& rng);
int uniform_int(Rng& rng, int lo, int hi);  // inclusive

}  // namespace dlab
