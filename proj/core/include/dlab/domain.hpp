#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace dlab {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr int kMaxDim = 4;

using Vec4 = std::array<double, kMaxDim>;

// The product R^m x T^n. Axes 0..m-1 are the line directions (periodised to a
// box of length L), axes m..d-1 are circles. Row-major layout, axis 0 slowest.
struct DomainSpec {
  int m = 0;
  int n = 4;
  std::vector<double> periods{kTwoPi, kTwoPi, kTwoPi, kTwoPi};
  std::vector<double> box_length;
  std::vector<int> grid{8, 8, 8, 8};

  static DomainSpec make(int m, int n, int points, double box = 8.0 * kPi);

  int dim() const { return m + n; }
  bool periodic(int axis) const { return axis >= m; }
  double length(int axis) const;
  double dx(int axis) const { return length(axis) / grid[axis]; }
  double dk(int axis) const { return kTwoPi / length(axis); }
  std::size_t size() const;

  // Spatial quadrature weight per node.
  double cell_volume() const;
  // Frequency quadrature weight per lattice node: prod 2pi/length_i.
  double freq_weight() const;
  double volume() const;

  void validate() const;  // throws ConfigError

  std::string to_json() const;
  static DomainSpec from_json(const std::string& text);

  bool operator==(const DomainSpec& o) const = default;
};

// Signed integer index of lattice node j on an axis of N points.
inline int signed_index(int j, int N) { return j < N / 2 ? j : j - N; }

// Precomputed per-axis frequency tables and |xi|^2 for a DomainSpec.
class FrequencyGrid {
public:
  explicit FrequencyGrid(const DomainSpec& spec);

  const DomainSpec& spec() const { return spec_; }
  std::size_t size() const { return size_; }
  int dim() const { return spec_.dim(); }

  double xi(int axis, int j) const { return axis_xi_[axis][j]; }
  Vec4 xi_at(std::size_t flat) const;
  std::array<int, kMaxDim> unflatten(std::size_t flat) const;
  std::size_t flatten(const std::array<int, kMaxDim>& idx) const;
  // Flat index of the node with the given signed lattice coordinates, wrapping.
  std::size_t flatten_signed(const std::array<int, kMaxDim>& k) const;

  const std::vector<double>& xi_sq() const { return xi_sq_; }

private:
  DomainSpec spec_;
  std::size_t size_ = 0;
  std::array<std::size_t, kMaxDim> stride_{};
  std::vector<std::vector<double>> axis_xi_;
  std::vector<double> xi_sq_;
};

// Shared, cached FrequencyGrid for a spec. Thread safe.
std::shared_ptr<const FrequencyGrid> grid_for(const DomainSpec& spec);

}  // namespace dlab
