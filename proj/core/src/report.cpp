#include "dlab/report.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "dlab/errors.hpp"

namespace dlab {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, r.ptr);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

std::string geometry_tag(int m, int n) { return "R" + std::to_string(m) + "xT" + std::to_string(n); }

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& header)
    : os_(os), columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) os_ << (i ? "," : "") << header[i];
  os_ << '\n';
}

void CsvWriter::sep() {
  if (at_ == columns_) throw ArgumentError("CsvWriter: too many columns");
  if (at_++) os_ << ',';
}

CsvWriter& CsvWriter::operator<<(double v) {
  sep();
  os_ << fmt(v);
  return *this;
}
CsvWriter& CsvWriter::operator<<(int v) {
  sep();
  os_ << v;
  return *this;
}
CsvWriter& CsvWriter::operator<<(std::uint64_t v) {
  sep();
  os_ << v;
  return *this;
}
CsvWriter& CsvWriter::operator<<(bool v) {
  sep();
  os_ << (v ? 1 : 0);
  return *this;
}
CsvWriter& CsvWriter::operator<<(const std::string& v) {
  sep();
  os_ << v;
  return *this;
}

void CsvWriter::end_row() {
  if (at_ != columns_) throw ArgumentError("CsvWriter: short row");
  os_ << '\n';
  at_ = 0;
}

void write_scan_csv(std::ostream& os, const std::vector<ScanRecord>& rows) {
  CsvWriter w(os, {"geometry", "m", "n", "lambda", "mu", "trials", "K", "seed", "converged"});
  for (const auto& r : rows) {
    w << geometry_tag(r.m, r.n) << r.m << r.n << r.lambda << r.mu << r.trials << r.K << r.seed << r.converged;
    w.end_row();
  }
}

void write_fit_json(std::ostream& os, const FitResult& fit) {
  // Numbers go through fmt so the bytes do not depend on the json library.
  os << "{\"alpha\":" << fmt(fit.alpha) << ",\"delta_hat\":" << fmt(fit.delta_hat) << ",\"C\":" << fmt(fit.C)
     << ",\"residual_linf\":" << fmt(fit.residual_linf) << ",\"alpha_only\":" << (fit.alpha_only ? "true" : "false")
     << "}\n";
}

void write_bilinear_csv(std::ostream& os, int m, int n, const std::vector<BilinearRow>& rows) {
  CsvWriter w(os, {"lambda", "mu", "nu", "trial", "ortho_ratio", "bilinear_ratio", "c_estimate", "geometry", "seed"});
  for (const auto& r : rows) {
    w << r.lambda << r.mu << r.nu << r.trial << r.ortho_ratio << r.bilinear_ratio << r.c_estimate
      << geometry_tag(m, n) << r.seed;
    w.end_row();
  }
}

void write_case_csv(std::ostream& os, const std::vector<CaseBoundRow>& rows, std::uint64_t seed) {
  CsvWriter w(os, {"geometry", "lambda", "mu", "tau", "xi1", "xi2", "xi3", "xi4", "a1", "a2", "a3", "a4", "measure",
                   "normalized_ratio", "resolved_flag", "open_case", "queries", "max_fiber_ratio",
                   "fiber_violations", "seed"});
  for (const auto& r : rows) {
    w << geometry_tag(r.m, r.n) << r.lambda << r.mu << r.arg.tau;
    for (double x : r.arg.xi) w << x;
    for (double x : r.arg.a) w << x;
    w << r.measure << r.normalized_ratio << r.resolved << r.open_case << r.queries << r.max_fiber_ratio
      << r.fiber_violations << seed;
    w.end_row();
  }
}

void write_annulus_csv(std::ostream& os, const std::vector<AnnulusScanRow>& rows, std::uint64_t seed) {
  CsvWriter w(os, {"k", "sup_ratio", "sup_e0", "sup_ehalf", "arg_c", "arg_e", "seed"});
  for (const auto& r : rows) {
    w << r.k << r.sup_ratio << r.sup_e0 << r.sup_ehalf << r.arg_c << r.arg_e << seed;
    w.end_row();
  }
}

void write_diag_csv(std::ostream& os, const std::vector<Diagnostics>& rows) {
  CsvWriter w(os, {"t", "mass", "energy", "h1", "linf"});
  for (const auto& r : rows) {
    w << r.t << r.mass << r.energy << r.h1 << r.linf;
    w.end_row();
  }
}

void write_small_data_csv(std::ostream& os, int m, int n, const std::vector<SmallDataRow>& rows) {
  CsvWriter w(os, {"geometry", "amplitude", "h1_ratio", "mass_drift", "energy_drift", "blew_up", "blowup_time",
                   "seed"});
  for (const auto& r : rows) {
    w << geometry_tag(m, n) << r.amplitude << r.h1_ratio << r.mass_drift << r.energy_drift << r.blew_up
      << r.blowup_time << r.seed;
    w.end_row();
  }
}

}  // namespace dlab
