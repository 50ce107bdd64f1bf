#include "dlab/domain.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "json.hpp"

#include "dlab/errors.hpp"

namespace dlab {

DomainSpec DomainSpec::make(int m, int n, int points, double box) {
  DomainSpec s;
  s.m = m;
  s.n = n;
  s.periods.assign(static_cast<std::size_t>(std::max(n, 0)), kTwoPi);
  s.box_length.assign(static_cast<std::size_t>(std::max(m, 0)), box);
  s.grid.assign(static_cast<std::size_t>(std::max(m + n, 0)), points);
  s.validate();
  return s;
}

double DomainSpec::length(int axis) const {
  return axis < m ? box_length[axis] : periods[axis - m];
}

std::size_t DomainSpec::size() const {
  std::size_t s = 1;
  for (int g : grid) s *= static_cast<std::size_t>(g);
  return s;
}

double DomainSpec::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim(); ++a) v *= dx(a);
  return v;
}

double DomainSpec::freq_weight() const {
  double w = 1.0;
  for (int a = 0; a < dim(); ++a) w *= dk(a);
  return w;
}

double DomainSpec::volume() const {
  double v = 1.0;
  for (int a = 0; a < dim(); ++a) v *= length(a);
  return v;
}

void DomainSpec::validate() const {
  if (m < 0 || n < 0) throw ConfigError("m and n must be non-negative");
  const int d = m + n;
  if (d < 1 || d > kMaxDim) throw ConfigError("m+n must lie in 1..4, got " + std::to_string(d));
  if (static_cast<int>(periods.size()) != n)
    throw ConfigError("periods has " + std::to_string(periods.size()) + " entries, expected n=" +
                      std::to_string(n));
  if (static_cast<int>(box_length.size()) != m)
    throw ConfigError("box_length has " + std::to_string(box_length.size()) +
                      " entries, expected m=" + std::to_string(m));
  if (static_cast<int>(grid.size()) != d)
    throw ConfigError("grid has " + std::to_string(grid.size()) + " entries, expected " +
                      std::to_string(d));
  for (int g : grid)
    if (g < 4 || g % 2 != 0) throw ConfigError("grid sizes must be even and >= 4");
  for (double p : periods)
    if (!(p > 0.0) || !std::isfinite(p)) throw ConfigError("periods must be positive");
  for (double l : box_length)
    if (!(l > 0.0) || !std::isfinite(l)) throw ConfigError("box_length entries must be positive");
}

std::string DomainSpec::to_json() const {
  nlohmann::ordered_json j;
  j["m"] = m;
  j["n"] = n;
  j["periods"] = periods;
  j["box_length"] = box_length;
  j["grid"] = grid;
  return j.dump();
}

DomainSpec DomainSpec::from_json(const std::string& text) {
  DomainSpec s;
  try {
    const auto j = nlohmann::json::parse(text);
    s.m = j.at("m").get<int>();
    s.n = j.at("n").get<int>();
    s.grid = j.at("grid").get<std::vector<int>>();
    if (j.contains("periods"))
      s.periods = j.at("periods").get<std::vector<double>>();
    else
      s.periods.assign(static_cast<std::size_t>(std::max(s.n, 0)), kTwoPi);
    if (j.contains("box_length"))
      s.box_length = j.at("box_length").get<std::vector<double>>();
    else
      s.box_length.assign(static_cast<std::size_t>(std::max(s.m, 0)), 8.0 * kPi);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad domain JSON: ") + e.what());
  }
  s.validate();
  return s;
}

FrequencyGrid::FrequencyGrid(const DomainSpec& spec) : spec_(spec) {
  spec_.validate();
  const int d = spec_.dim();
  size_ = spec_.size();
  std::size_t stride = 1;
  for (int a = kMaxDim - 1; a >= 0; --a) {
    if (a >= d) {
      stride_[a] = 0;
      continue;
    }
    stride_[a] = stride;
    stride *= static_cast<std::size_t>(spec_.grid[a]);
  }
  axis_xi_.resize(d);
  for (int a = 0; a < d; ++a) {
    const int N = spec_.grid[a];
    axis_xi_[a].resize(N);
    for (int j = 0; j < N; ++j) axis_xi_[a][j] = signed_index(j, N) * spec_.dk(a);
  }
  xi_sq_.resize(size_);
  for (std::size_t f = 0; f < size_; ++f) {
    const Vec4 x = xi_at(f);
    xi_sq_[f] = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
  }
}

std::array<int, kMaxDim> FrequencyGrid::unflatten(std::size_t flat) const {
  std::array<int, kMaxDim> idx{};
  for (int a = 0; a < dim(); ++a) {
    idx[a] = static_cast<int>(flat / stride_[a]);
    flat %= stride_[a];
  }
  return idx;
}

std::size_t FrequencyGrid::flatten(const std::array<int, kMaxDim>& idx) const {
  std::size_t f = 0;
  for (int a = 0; a < dim(); ++a) f += static_cast<std::size_t>(idx[a]) * stride_[a];
  return f;
}

std::size_t FrequencyGrid::flatten_signed(const std::array<int, kMaxDim>& k) const {
  std::array<int, kMaxDim> idx{};
  for (int a = 0; a < dim(); ++a) {
    const int N = spec_.grid[a];
    idx[a] = ((k[a] % N) + N) % N;
  }
  return flatten(idx);
}

Vec4 FrequencyGrid::xi_at(std::size_t flat) const {
  Vec4 x{};
  const auto idx = unflatten(flat);
  for (int a = 0; a < dim(); ++a) x[a] = axis_xi_[a][idx[a]];
  return x;
}

std::shared_ptr<const FrequencyGrid> grid_for(const DomainSpec& spec) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const FrequencyGrid>> grids;
  const std::string key = spec.to_json();
  std::lock_guard<std::mutex> lock(mu);
  auto it = grids.find(key);
  if (it != grids.end()) return it->second;
  auto g = std::make_shared<const FrequencyGrid>(spec);
  if (grids.size() > 64) grids.clear();
  grids.emplace(key, g);
  return g;
}

}  // namespace dlab
