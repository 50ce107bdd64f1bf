#include "dlab/field.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>

#include "json.hpp"

namespace dlab {

void write_le_doubles(std::ostream& os, const double* v, std::size_t count) {
  char buf[8];
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t bits;
    std::memcpy(&bits, &v[i], 8);
    for (int b = 0; b < 8; ++b) buf[b] = static_cast<char>((bits >> (8 * b)) & 0xffu);
    os.write(buf, 8);
  }
}

void read_le_doubles(std::istream& is, double* v, std::size_t count) {
  unsigned char buf[8];
  for (std::size_t i = 0; i < count; ++i) {
    if (!is.read(reinterpret_cast<char*>(buf), 8)) throw ConfigError("truncated field payload");
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(buf[b]) << (8 * b);
    std::memcpy(&v[i], &bits, 8);
  }
}

void write_field(std::ostream& os, const DomainSpec& spec, Rep rep, const CVec& data) {
  nlohmann::ordered_json h;
  h["spec"] = nlohmann::json::parse(spec.to_json());
  h["rep"] = rep == Rep::space ? "space" : "frequency";
  os << h.dump() << '\n';
  write_le_doubles(os, reinterpret_cast<const double*>(data.data()), 2 * data.size());
}

std::pair<DomainSpec, CVec> read_field(std::istream& is, Rep expected) {
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("missing field header");
  DomainSpec spec;
  try {
    const auto h = nlohmann::json::parse(line);
    spec = DomainSpec::from_json(h.at("spec").dump());
    const std::string rep = h.at("rep").get<std::string>();
    const std::string want = expected == Rep::space ? "space" : "frequency";
    if (rep != want) throw ConfigError("field is in " + rep + " representation, expected " + want);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad field header: ") + e.what());
  }
  CVec data(spec.size());
  read_le_doubles(is, reinterpret_cast<double*>(data.data()), 2 * data.size());
  return {std::move(spec), std::move(data)};
}

}  // namespace dlab
