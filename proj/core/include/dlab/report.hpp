#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dlab/bilinear.hpp"
#include "dlab/counting.hpp"
#include "dlab/nls.hpp"
#include "dlab/strichartz.hpp"

namespace dlab {

// Shortest round-trip decimal; integral values keep a trailing ".0".
std::string fmt(double v);

std::string geometry_tag(int m, int n);  // e.g. "R3xT1"

class CsvWriter {
public:
  CsvWriter(std::ostream& os, const std::vector<std::string>& header);
  CsvWriter& operator<<(double v);
  CsvWriter& operator<<(int v);
  CsvWriter& operator<<(std::uint64_t v);
  CsvWriter& operator<<(bool v);
  CsvWriter& operator<<(const std::string& v);
  void end_row();

private:
  void sep();
  std::ostream& os_;
  std::size_t columns_;
  std::size_t at_ = 0;
};

void write_scan_csv(std::ostream& os, const std::vector<ScanRecord>& rows);
void write_fit_json(std::ostream& os, const FitResult& fit);
// lambda,mu,nu,trial,ortho_ratio,bilinear_ratio,c_estimate then provenance.
void write_bilinear_csv(std::ostream& os, int m, int n, const std::vector<BilinearRow>& rows);
void write_case_csv(std::ostream& os, const std::vector<CaseBoundRow>& rows, std::uint64_t seed);
void write_annulus_csv(std::ostream& os, const std::vector<AnnulusScanRow>& rows, std::uint64_t seed);
void write_diag_csv(std::ostream& os, const std::vector<Diagnostics>& rows);
void write_small_data_csv(std::ostream& os, int m, int n, const std::vector<SmallDataRow>& rows);

}  // namespace dlab
