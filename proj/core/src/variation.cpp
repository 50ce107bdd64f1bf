#include "dlab/variation.hpp"

#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <string>

#include "dlab/errors.hpp"
#include "dlab/parallel.hpp"
#include "dlab/spectral.hpp"
#include "json.hpp"

namespace dlab {

namespace {

std::size_t finite_count(const TimeSeries& s) { return s.has_infinity() ? s.size() - 1 : s.size(); }

void check_p(double p) {
  if (!(p >= 1.0)) throw ArgumentError("variation norm needs p >= 1");
}

// Pairwise distances between snapshots restricted to `modes`, with the zero
// value appended as the last node. weight[i] multiplies |a_i - b_i|^2.
std::vector<double> distance_table(const std::vector<const CVec*>& vals, const std::vector<std::size_t>& modes,
                                   const std::vector<double>& weight) {
  const std::size_t K = vals.size() + 1;
  std::vector<double> D(K * K, 0.0);
  for (std::size_t i = 0; i < K; ++i)
    for (std::size_t j = i + 1; j < K; ++j) {
      double acc = 0.0;
      for (std::size_t m : modes) {
        const cplx a = (*vals[i])[m];
        const cplx b = j + 1 < K ? (*vals[j])[m] : cplx{};
        acc += weight[m] * std::norm(a - b);
      }
      D[i * K + j] = D[j * K + i] = std::sqrt(acc);
    }
  return D;
}

double vp_from_table(const std::vector<double>& D, std::size_t K, double p) {
  const double sup = chain_sup(K, [&](std::size_t i, std::size_t j) { return D[i * K + j]; }, p);
  return std::pow(sup, 1.0 / p);
}

std::vector<std::size_t> all_modes(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

std::vector<FreqField> pulled_back(const TimeSeries& s) {
  const std::size_t K = finite_count(s);
  std::vector<FreqField> out(K);
  for (std::size_t k = 0; k < K; ++k) out[k] = propagate(s.values[k], -s.times[k]);
  return out;
}

std::vector<double> sobolev_weights(const DomainSpec& spec, double s_reg) {
  const auto grid = grid_for(spec);
  const auto& xi2 = grid->xi_sq();
  std::vector<double> w(xi2.size());
  const double W = spec.freq_weight();
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = W * sobolev_weight(std::sqrt(xi2[i]), s_reg);
  return w;
}

}  // namespace

void TimeSeries::validate() const {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (std::isnan(times[i])) throw ArgumentError("TimeSeries: NaN time");
    if (times[i] == kInfTime && i + 1 != times.size()) throw ArgumentError("TimeSeries: +inf must be last");
    if (i > 0 && !(times[i] > times[i - 1])) throw ArgumentError("TimeSeries: times must increase strictly");
  }
  if (values.size() != finite_count(*this))
    throw ArgumentError("TimeSeries: one value per finite time required");
  for (std::size_t i = 1; i < values.size(); ++i) values[i].check_same(values[0]);
}

void write_series(std::ostream& os, const TimeSeries& s) {
  s.validate();
  nlohmann::ordered_json h;
  auto& t = h["times"] = nlohmann::json::array();
  for (double x : s.times) {
    if (x == kInfTime)
      t.push_back("inf");
    else
      t.push_back(x);
  }
  os << h.dump() << '\n';
  for (const auto& v : s.values) write_field(os, v);
}

TimeSeries read_series(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("series header missing");
  TimeSeries s;
  try {
    const auto h = nlohmann::json::parse(line);
    for (const auto& x : h.at("times")) {
      if (x.is_string()) {
        if (x.get<std::string>() != "inf") throw ConfigError("bad time marker");
        s.times.push_back(kInfTime);
      } else {
        s.times.push_back(x.get<double>());
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("series header: ") + e.what());
  }
  const std::size_t K = finite_count(s);
  for (std::size_t k = 0; k < K; ++k) s.values.push_back(read_field<Rep::frequency>(is));
  s.validate();
  return s;
}

double chain_sup(std::size_t count, const std::function<double(std::size_t, std::size_t)>& dist, double p) {
  check_p(p);
  // best[j]: sup over chains ending at j.
  std::vector<double> best(count, 0.0);
  double out = 0.0;
  for (std::size_t j = 1; j < count; ++j) {
    double b = 0.0;
    for (std::size_t i = 0; i < j; ++i) b = std::max(b, best[i] + std::pow(dist(i, j), p));
    best[j] = b;
    out = std::max(out, b);
  }
  return out;
}

double vp_norm(const TimeSeries& s, double p) {
  check_p(p);
  s.validate();
  if (s.values.empty()) return 0.0;
  std::vector<const CVec*> vals;
  for (const auto& v : s.values) vals.push_back(&v.data());
  const std::size_t n = s.values[0].size();
  const std::vector<double> w(n, s.values[0].spec().freq_weight());
  return vp_from_table(distance_table(vals, all_modes(n), w), vals.size() + 1, p);
}

double vp_delta_norm(const TimeSeries& s, double p, double s_reg) {
  check_p(p);
  s.validate();
  if (s.values.empty()) return 0.0;
  const auto back = pulled_back(s);
  std::vector<const CVec*> vals;
  for (const auto& v : back) vals.push_back(&v.data());
  const auto w = sobolev_weights(back[0].spec(), s_reg);
  return vp_from_table(distance_table(vals, all_modes(w.size()), w), vals.size() + 1, p);
}

void UpAtom::validate() const {
  check_p(p);
  if (pieces.empty()) throw ArgumentError("UpAtom: no pieces");
  if (times.size() != pieces.size() + 1) throw ArgumentError("UpAtom: need K+1 times for K pieces");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw ArgumentError("UpAtom: times must increase strictly");
  if (std::isinf(times.front())) throw ArgumentError("UpAtom: first time must be finite");
  double acc = 0.0;
  for (const auto& ph : pieces) {
    ph.check_same(pieces[0]);
    acc += std::pow(l2_norm(ph), p);
  }
  if (std::abs(acc - 1.0) > 1e-12) throw ArgumentError("UpAtom: sum ||phi_k||^p must be 1");
}

TimeSeries UpAtom::to_series() const {
  validate();
  TimeSeries s;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    s.times.push_back(times[k]);
    s.values.push_back(pieces[k]);
  }
  s.times.push_back(times.back());
  if (times.back() != kInfTime) s.values.emplace_back(pieces[0].spec());
  return s;
}

UpAtom make_atom(std::vector<double> times, std::vector<FreqField> pieces, double p) {
  check_p(p);
  double acc = 0.0;
  for (const auto& ph : pieces) acc += std::pow(l2_norm(ph), p);
  if (!(acc > 0.0)) throw DegenerateInputError("make_atom: all pieces vanish");
  const double scale = std::pow(acc, -1.0 / p);
  for (auto& ph : pieces) ph *= scale;
  UpAtom a{std::move(times), std::move(pieces), p};
  a.validate();
  return a;
}

YsResult ys_norm(const TimeSeries& s, double s_reg) {
  s.validate();
  YsResult out;
  if (s.values.empty()) return out;
  const auto back = pulled_back(s);
  const DomainSpec& spec = back[0].spec();
  const auto grid = grid_for(spec);
  const auto w = sobolev_weights(spec, s_reg);
  const int d = spec.dim();

  std::map<std::array<long, kMaxDim>, std::vector<std::size_t>> cubes;
  for (std::size_t i = 0; i < w.size(); ++i) {
    bool active = false;
    for (const auto& v : back)
      if (v[i] != cplx{}) {
        active = true;
        break;
      }
    if (!active) continue;
    const Vec4 xi = grid->xi_at(i);
    std::array<long, kMaxDim> z{};
    for (int a = 0; a < d; ++a) z[a] = static_cast<long>(std::floor(xi[a] + 1e-12));
    cubes[z].push_back(i);
  }
  std::vector<const std::vector<std::size_t>*> groups;
  for (auto& [z, modes] : cubes) {
    out.cubes.push_back({z, 0.0});
    groups.push_back(&modes);
  }
  std::vector<const CVec*> vals;
  for (const auto& v : back) vals.push_back(&v.data());
  const std::size_t K = vals.size();
  struct Piece {
    double ys, cert;
  };
  const auto res = parallel_map(groups.size(), [&](std::size_t g) {
    const auto D = distance_table(vals, *groups[g], w);
    const double ys = vp_from_table(D, K + 1, 2.0);
    // One atom carrying every piece, or one atom per jump (onset included).
    double pieces = 0.0, jumps = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      pieces += D[k * (K + 1) + K] * D[k * (K + 1) + K];
      jumps += k == 0 ? D[K] : D[(k - 1) * (K + 1) + k];
    }
    return Piece{ys, std::min(std::sqrt(pieces), jumps)};
  });
  double ys2 = 0.0, xs2 = 0.0;
  for (std::size_t g = 0; g < res.size(); ++g) {
    out.cubes[g].value = res[g].ys;
    ys2 += res[g].ys * res[g].ys;
    xs2 += res[g].cert * res[g].cert;
  }
  out.ys = std::sqrt(ys2);
  out.xs_certificate = std::sqrt(xs2);
  return out;
}

}  // namespace dlab
