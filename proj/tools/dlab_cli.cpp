// dlab command line front end.
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "dlab/counting.hpp"
#include "dlab/fft.hpp"
#include "dlab/lattice.hpp"
#include "dlab/nls.hpp"
#include "dlab/parallel.hpp"
#include "dlab/report.hpp"
#include "dlab/rng.hpp"
#include "dlab/spectral.hpp"
#include "dlab/strichartz.hpp"
#include "dlab/variation.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace dlab;

namespace {

constexpr int kSchemaVersion = 1;
const double kDefaultBox = 8.0 * kPi;

struct Param {
  std::string name;
  json def;
  std::string help;
};

struct Command {
  std::string name;
  std::string help;
  std::vector<Param> params;
  std::function<void(const json&, std::ostream& out, const fs::path* dir)> run;
};

// ---- parameter plumbing ----------------------------------------------------

json parse_value(const Param& p, const std::string& raw) {
  auto number = [&](const std::string& s, const json& like) -> json {
    std::size_t used = 0;
    json v;
    if (like.is_number_unsigned())
      v = std::stoull(s, &used);
    else if (like.is_number_integer())
      v = std::stoll(s, &used);
    else
      v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  };
  try {
    if (p.def.is_boolean()) {
      if (raw == "true" || raw == "1") return true;
      if (raw == "false" || raw == "0") return false;
      throw std::invalid_argument(raw);
    }
    if (p.def.is_string()) return raw;
    if (p.def.is_array()) {
      json arr = json::array();
      std::string body = raw;
      if (body.size() >= 2 && body.front() == '[' && body.back() == ']') body = body.substr(1, body.size() - 2);
      std::stringstream ss(body);
      std::string item;
      while (std::getline(ss, item, ','))
        if (!item.empty()) arr.push_back(number(item, json(0.0)));
      return arr;
    }
    return number(raw, p.def);
  } catch (const std::logic_error&) {
    throw ConfigError("bad value '" + raw + "' for --" + p.name);
  }
}

std::string flag_name(const std::string& key) {
  std::string f = key;
  for (auto& c : f)
    if (c == '_') c = '-';
  return "--" + f;
}

json effective_params(const Command& cmd, const std::string& config_path,
                      const std::map<std::string, std::string>& given) {
  json eff = json::object();
  for (const auto& p : cmd.params) eff[p.name] = p.def;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open config " + config_path);
    json cfg;
    try {
      cfg = json::parse(in);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!cfg.contains("schema_version") || cfg["schema_version"] != kSchemaVersion)
      throw ConfigError("config schema_version must be " + std::to_string(kSchemaVersion));
    if (cfg.contains("subcommand") && cfg["subcommand"] != cmd.name)
      throw ConfigError("config is for subcommand " + cfg["subcommand"].dump());
    const json given_params = cfg.value("params", json::object());
    if (!given_params.is_object()) throw ConfigError("config params must be an object");
    for (const auto& [key, value] : given_params.items()) {
      if (!eff.contains(key)) throw ConfigError("unknown config key '" + key + "' for " + cmd.name);
      const json& def = eff[key];
      const bool ok = (def.is_number() && value.is_number()) || (def.is_boolean() && value.is_boolean()) ||
                      (def.is_string() && value.is_string()) || (def.is_array() && value.is_array());
      if (!ok) throw ConfigError("config key '" + key + "' has the wrong type");
      eff[key] = value;
    }
  }
  for (const auto& p : cmd.params) {
    auto it = given.find(p.name);
    if (it != given.end()) eff[p.name] = parse_value(p, it->second);
  }
  return eff;
}

std::vector<double> num_list(const json& j) {
  std::vector<double> v;
  for (const auto& x : j) v.push_back(x.get<double>());
  return v;
}

DomainSpec domain_from(const json& p) {
  const int m = p.at("m").get<int>();
  const int n = p.at("n").get<int>();
  DomainSpec spec = DomainSpec::make(m, n, p.value("points", 8), p.value("box", kDefaultBox));
  if (p.contains("grid") && !p["grid"].empty()) {
    spec.grid.clear();
    for (const auto& g : p["grid"]) spec.grid.push_back(static_cast<int>(g.get<double>()));
  }
  spec.validate();
  return spec;
}

std::vector<Param> domain_params(int m, int n, int points) {
  return {{"m", m, "number of line directions"},
          {"n", n, "number of circle directions"},
          {"points", points, "grid points per axis"},
          {"grid", json::array(), "per-axis grid points, overrides --points"},
          {"box", kDefaultBox, "periodisation length L of the line directions"}};
}

std::vector<Param> with(std::vector<Param> a, const std::vector<Param>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::ostream& open_out(const fs::path* dir, const std::string& file, std::ofstream& f, std::ostream& fallback) {
  if (!dir) return fallback;
  f.open(*dir / file, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + (*dir / file).string());
  return f;
}

// ---- subcommands -------------------------------------------------------------

void run_strichartz(const json& p, std::ostream& out, const fs::path* dir) {
  const DomainSpec spec = domain_from(p);
  ScanConfig cfg;
  cfg.lambdas = num_list(p["lambdas"]);
  const auto mus = num_list(p["mus"]);
  if (!mus.empty())
    cfg.mu_rule = [mus](double lambda) {
      std::vector<double> v;
      for (double mu : mus)
        if (mu <= lambda) v.push_back(mu);
      return v;
    };
  cfg.rects = p["rects"].get<int>();
  cfg.trials = p["trials"].get<int>();
  cfg.first_trial = p["first_trial"].get<int>();
  cfg.q = p["q"].get<double>();
  cfg.T.nt = p["nt"].get<int>();
  cfg.ascent.steps = p["steps"].get<int>();
  cfg.seed = p["seed"].get<std::uint64_t>();
  const auto rows = scan_dyadic(spec, cfg);
  std::ofstream f1, f2;
  write_scan_csv(open_out(dir, "scan.csv", f1, out), rows);
  write_fit_json(open_out(dir, "fit.json", f2, out), fit_exponents(rows));
}

BilinearScanConfig bilinear_config(const json& p, std::vector<std::pair<double, double>> cells) {
  BilinearScanConfig cfg;
  cfg.cells = std::move(cells);
  cfg.trials = p["trials"].get<int>();
  cfg.cap = p["cap"].get<std::size_t>();
  cfg.seed = p["seed"].get<std::uint64_t>();
  return cfg;
}

void run_bilinear(const json& p, std::ostream& out, const fs::path* dir) {
  const DomainSpec spec = domain_from(p);
  const auto ls = num_list(p["lambdas"]);
  const auto ms = num_list(p["mus"]);
  if (ls.size() != ms.size()) throw ConfigError("lambdas and mus must pair up");
  std::vector<std::pair<double, double>> cells;
  for (std::size_t i = 0; i < ls.size(); ++i) cells.emplace_back(ls[i], ms[i]);
  const auto rows = bilinear_scan(spec, bilinear_config(p, cells));
  std::ofstream f;
  write_bilinear_csv(open_out(dir, "bilinear.csv", f, out), spec.m, spec.n, rows);
}

void run_ortho(const json& p, std::ostream& out, const fs::path* dir) {
  const DomainSpec spec = domain_from(p);
  const auto rows =
      bilinear_scan(spec, bilinear_config(p, {{p["lambda"].get<double>(), p["mu"].get<double>()}}));
  std::ofstream f;
  write_bilinear_csv(open_out(dir, "ortho.csv", f, out), spec.m, spec.n, rows);
}

void run_count(const json& p, std::ostream& out, const fs::path* dir) {
  if (!p["scan"].get<bool>()) {
    AnnulusQuery q{p["c"].get<double>(), p["d"].get<double>(), p["e"].get<double>(), p["k"].get<double>()};
    std::ofstream f;
    open_out(dir, "count.txt", f, out) << fmt(annulus_measure(q)) << '\n';
    return;
  }
  const auto seed = p["seed"].get<std::uint64_t>();
  const auto rows = annulus_sup_scan(num_list(p["k_set"]), p["samples"].get<int>(), seed, p["c_max"].get<double>());
  std::ofstream f;
  write_annulus_csv(open_out(dir, "annulus.csv", f, out), rows, seed);
}

void run_measure(const json& p, std::ostream& out, const fs::path* dir) {
  CaseBoundConfig cfg;
  cfg.lambdas = num_list(p["lambdas"]);
  cfg.mus = num_list(p["mus"]);
  cfg.samples = p["samples"].get<int>();
  cfg.cutoff = p["cutoff"].get<double>();
  cfg.h_fraction = p["h_fraction"].get<double>();
  cfg.seed = p["seed"].get<std::uint64_t>();
  const auto rows = case_bound_report(p["m"].get<int>(), p["n"].get<int>(), cfg);
  std::ofstream f;
  write_case_csv(open_out(dir, "measure.csv", f, out), rows, cfg.seed);
}

// Linear solution e^{itD} phi sampled at random times in [0, 1].
TimeSeries demo_series(const json& p) {
  const DomainSpec spec = domain_from(p);
  const auto seed = p["seed"].get<std::uint64_t>();
  const FreqField phi = to_frequency(random_smooth_data(spec, p["s"].get<double>(), seed));
  Rng rng = make_rng(derive_seed(seed, 1));
  std::vector<double> t;
  for (int k = 0; k < p["samples"].get<int>(); ++k) t.push_back(uniform01(rng));
  std::sort(t.begin(), t.end());
  TimeSeries s;
  for (double x : t) {
    s.times.push_back(x);
    s.values.push_back(propagate(phi, x));
  }
  s.times.push_back(kInfTime);
  return s;
}

void run_variation(const json& p, std::ostream& out, const fs::path* dir) {
  TimeSeries s;
  const std::string path = p["series"].get<std::string>();
  if (path.empty()) {
    s = demo_series(p);
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open series " + path);
    s = read_series(in);
  }
  const double pp = p["p"].get<double>();
  const double sr = p["s"].get<double>();
  const YsResult ys = ys_norm(s, sr);
  std::ofstream f;
  std::ostream& o = open_out(dir, "variation.json", f, out);
  o << "{\"p\":" << fmt(pp) << ",\"s\":" << fmt(sr) << ",\"samples\":" << s.values.size()
    << ",\"vp\":" << fmt(vp_norm(s, pp)) << ",\"vp_delta\":" << fmt(vp_delta_norm(s, pp, sr))
    << ",\"ys\":" << fmt(ys.ys) << ",\"xs_certificate\":" << fmt(ys.xs_certificate)
    << ",\"cubes\":" << ys.cubes.size() << "}\n";
}

NLSConfig nls_config(const json& p) {
  NLSConfig cfg;
  cfg.sign = p["sign"].get<int>();
  cfg.dt = p["dt"].get<double>();
  cfg.dealias = p["dealias"].get<bool>();
  cfg.record_every = p["record_every"].get<int>();
  return cfg;
}

void run_nls(const json& p, std::ostream& out, const fs::path* dir) {
  const DomainSpec spec = domain_from(p);
  NLSConfig cfg = nls_config(p);
  cfg.steps = p["steps"].get<int>();
  const std::string preset = p["preset"].get<std::string>();
  SpatialField u0;
  if (preset == "plane-wave") {
    std::array<int, kMaxDim> mode{};
    const auto mv = num_list(p["mode"]);
    for (std::size_t i = 0; i < mv.size() && i < mode.size(); ++i) mode[i] = static_cast<int>(mv[i]);
    u0 = plane_wave(spec, mode, p["amplitude"].get<double>());
  } else if (preset == "random") {
    u0 = random_smooth_data(spec, p["s"].get<double>(), p["seed"].get<std::uint64_t>());
    u0 *= p["amplitude"].get<double>();
  } else {
    throw ConfigError("unknown preset '" + preset + "' (plane-wave, random)");
  }
  Trajectory tr;
  std::string failure;
  try {
    tr = evolve(u0, cfg);
  } catch (const BlowUpError& e) {
    tr = e.partial();
    failure = e.what();
  }
  std::ofstream f;
  write_diag_csv(open_out(dir, "nls.csv", f, out), tr.diag);
  const std::string snap = p["snapshots"].get<std::string>();
  if (!snap.empty()) {
    std::ofstream s(snap, std::ios::binary);
    if (!s) throw ConfigError("cannot write " + snap);
    write_series(s, tr.series);
  }
  if (!failure.empty()) throw Error("blow-up at t=" + fmt(tr.final_time) + ": " + failure);
}

void run_small(const json& p, std::ostream& out, const fs::path* dir) {
  const DomainSpec spec = domain_from(p);
  const auto rows = small_data_experiment(spec, num_list(p["amplitudes"]), p["s"].get<double>(),
                                          p["T"].get<double>(), nls_config(p), p["seed"].get<std::uint64_t>());
  std::ofstream f;
  write_small_data_csv(open_out(dir, "small_data.csv", f, out), spec.m, spec.n, rows);
}

std::vector<Command> commands() {
  const json seed = std::uint64_t{1};
  std::vector<Command> c;
  c.push_back({"strichartz-scan", "sup-scan of the L^4 Strichartz ratio over dyadic rectangles",
               with(domain_params(3, 1, 8),
                    {{"lambdas", {4, 8, 16, 32}, "dyadic lambdas"},
                     {"mus", json::array(), "mu values (default: all dyadic mu <= lambda)"},
                     {"rects", 8, "rectangles per cell"},
                     {"trials", 16, "ascent trials per rectangle"},
                     {"first_trial", 0, "index of the first trial"},
                     {"q", 4.0, "space-time exponent"},
                     {"nt", 64, "time nodes on [0,1]"},
                     {"steps", 200, "ascent steps"},
                     {"seed", seed, "master seed"}}),
               run_strichartz});
  c.back().params[3].def = {4, 4, 4, 16};
  c.push_back({"bilinear-scan", "almost-orthogonality and bilinear ratios on strip decompositions",
               with(domain_params(3, 1, 8),
                    {{"lambdas", {16, 32, 32}, "lambda of each cell"},
                     {"mus", {4, 4, 8}, "mu of each cell"},
                     {"trials", 100, "trials per cell"},
                     {"cap", 512, "modes per random function"},
                     {"seed", seed, "master seed"}}),
               run_bilinear});
  c.push_back({"ortho-check", "almost-orthogonality ratio for one (lambda, mu) cell",
               with(domain_params(3, 1, 8),
                    {{"lambda", 16.0, "lambda"},
                     {"mu", 4.0, "mu"},
                     {"trials", 100, "trials"},
                     {"cap", 512, "modes per random function"},
                     {"seed", seed, "master seed"}}),
               run_ortho});
  c.push_back({"count-lemma", "mixed measure of a thin annulus in R x Z, or its sup-scan",
               {{"c", 0.0, "inner radius squared"},
                {"d", 0.0, "centre on the line"},
                {"e", 0.0, "centre on the lattice direction"},
                {"k", 1.0, "width"},
                {"scan", false, "run the sup-scan instead"},
                {"k_set", {1, 2, 4, 8, 16}, "widths for the scan"},
                {"samples", 10000, "scan samples per width"},
                {"c_max", 1e6, "upper end of the c range"},
                {"seed", seed, "master seed"}},
               run_count});
  c.push_back({"measure-ab", "sup-scan of the convolution set measures",
               {{"m", 3, "number of line directions"},
                {"n", 1, "number of circle directions"},
                {"lambdas", {8, 16, 32}, "dyadic lambdas"},
                {"mus", json::array(), "mu values (default: all dyadic mu <= lambda)"},
                {"samples", 512, "random queries per cell"},
                {"cutoff", 1.0, "modulation cutoff"},
                {"h_fraction", 1.0 / 64.0, "line-direction spacing as a fraction of lambda"},
                {"seed", seed, "master seed"}},
               run_measure});
  c.push_back({"variation-norm", "V^p, V^p_D, Y^s and an X^s certificate of a sampled path",
               with(domain_params(0, 4, 8),
                    {{"series", "", "time series file (default: random linear solution)"},
                     {"samples", 6, "sample times of the default path"},
                     {"p", 2.0, "variation exponent"},
                     {"s", 1.0, "regularity"},
                     {"seed", seed, "master seed"}}),
               run_variation});
  c.push_back({"nls-run", "split-step evolution of the cubic NLS with diagnostics",
               with(domain_params(0, 4, 8),
                    {{"preset", "plane-wave", "initial data: plane-wave or random"},
                     {"amplitude", 1.0, "amplitude"},
                     {"mode", {1, 0, 0, 0}, "lattice mode of the plane wave"},
                     {"s", 1.0, "regularity of random data"},
                     {"sign", 1, "+1 defocusing, -1 focusing"},
                     {"dt", 1e-3, "time step"},
                     {"steps", 1000, "number of steps"},
                     {"dealias", true, "filter the density by the 2/3 rule"},
                     {"record_every", 10, "steps between diagnostics rows"},
                     {"snapshots", "", "write the trajectory to this file"},
                     {"seed", seed, "seed for random data"}}),
               run_nls});
  c.push_back({"small-data", "H^1 growth of small random data",
               with(domain_params(2, 2, 8),
                    {{"amplitudes", {0.0, 1e-3, 1e-2, 1e-1, 1.0}, "data amplitudes"},
                     {"s", 1.0, "regularity of the data"},
                     {"T", 1.0, "final time"},
                     {"sign", 1, "+1 defocusing, -1 focusing"},
                     {"dt", 1e-3, "time step"},
                     {"dealias", true, "filter the density by the 2/3 rule"},
                     {"record_every", 10, "steps between recorded times"},
                     {"seed", seed, "seed for the data"}}),
               run_small});
  return c;
}

void write_manifest(const fs::path& dir, const Command& cmd, const json& params, double wall) {
  json m;
  m["schema_version"] = kSchemaVersion;
  m["subcommand"] = cmd.name;
  m["params"] = params;
  m["versions"] = {{"dlab", DLAB_VERSION}, {"fft", fft_backend_version()}, {"compiler", __VERSION__}};
  m["workers"] = worker_count();
  m["wall_time_s"] = wall;
  std::ofstream f(dir / "manifest.json");
  f << m.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dlab: numerical companion for Strichartz estimates on R^m x T^n"};
  app.require_subcommand(1);
  app.set_version_flag("--version", DLAB_VERSION);

  const auto cmds = commands();
  struct Bound {
    CLI::App* sub;
    std::map<std::string, std::string> raw;
    std::string config, out;
  };
  std::vector<Bound> bound(cmds.size());
  for (std::size_t i = 0; i < cmds.size(); ++i) {
    Bound& b = bound[i];
    b.sub = app.add_subcommand(cmds[i].name, cmds[i].help);
    b.sub->add_option("--config", b.config, "JSON config {schema_version, subcommand, params}");
    b.sub->add_option("--out", b.out, "output directory (default: results on stdout, no manifest)");
    for (const auto& p : cmds[i].params) {
      auto* opt = b.sub->add_option(flag_name(p.name), b.raw[p.name], p.help);
      opt->default_str(p.def.is_string() ? p.def.get<std::string>() : p.def.dump());
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "dlab: error: " << e.what() << '\n';
    return 2;
  }

  for (std::size_t i = 0; i < cmds.size(); ++i) {
    Bound& b = bound[i];
    if (!b.sub->parsed()) continue;
    try {
      std::map<std::string, std::string> given;
      for (const auto& p : cmds[i].params)
        if (b.sub->count(flag_name(p.name)) > 0) given[p.name] = b.raw[p.name];
      const json params = effective_params(cmds[i], b.config, given);
      fs::path dir;
      if (!b.out.empty()) {
        dir = b.out;
        fs::create_directories(dir);
      }
      const auto t0 = std::chrono::steady_clock::now();
      cmds[i].run(params, std::cout, b.out.empty() ? nullptr : &dir);
      const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (!b.out.empty()) write_manifest(dir, cmds[i], params, wall);
      return 0;
    } catch (const std::exception& e) {
      std::string msg = e.what();
      for (auto& ch : msg)
        if (ch == '\n') ch = ' ';
      std::cerr << "dlab: error: " << msg << '\n';
      return 1;
    }
  }
  return 1;
}
