#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace testsupport {

struct RunResult {
  int status = -1;
  std::string out;  // stdout and stderr interleaved
};

RunResult run(const std::string& command);
std::string slurp(const std::filesystem::path& p);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::size_t column(const std::string& name) const;
};

// Numeric CSV only.
Table read_csv(const std::filesystem::path& p);

}  // namespace testsupport
