#pragma once

#include <iosfwd>
#include <string>
#include <utility>

#include "dlab/aligned.hpp"
#include "dlab/domain.hpp"
#include "dlab/errors.hpp"

namespace dlab {

enum class Rep { space, frequency };

template <Rep R>
class Field {
public:
  Field() = default;
  explicit Field(DomainSpec spec) : spec_(std::move(spec)), data_(spec_.size()) {}
  Field(DomainSpec spec, CVec data) : spec_(std::move(spec)), data_(std::move(data)) {
    if (data_.size() != spec_.size())
      throw ConfigError("field data has " + std::to_string(data_.size()) +
                        " entries, domain expects " + std::to_string(spec_.size()));
  }

  static constexpr Rep rep() { return R; }

  const DomainSpec& spec() const { return spec_; }
  std::size_t size() const { return data_.size(); }
  CVec& data() { return data_; }
  const CVec& data() const { return data_; }
  cplx& operator[](std::size_t i) { return data_[i]; }
  const cplx& operator[](std::size_t i) const { return data_[i]; }

  Field& operator*=(cplx c) {
    for (auto& v : data_) v *= c;
    return *this;
  }
  Field& operator+=(const Field& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Field& operator-=(const Field& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }

  void check_same(const Field& o) const {
    if (!(spec_ == o.spec_)) throw ConfigError("fields live on different domains");
  }

private:
  DomainSpec spec_;
  CVec data_;
};

using SpatialField = Field<Rep::space>;
using FreqField = Field<Rep::frequency>;

template <Rep R>
Field<R> operator*(cplx c, Field<R> f) {
  f *= c;
  return f;
}
template <Rep R>
Field<R> operator+(Field<R> a, const Field<R>& b) {
  a += b;
  return a;
}
template <Rep R>
Field<R> operator-(Field<R> a, const Field<R>& b) {
  a -= b;
  return a;
}

// Binary layout: one line of compact JSON ({"spec":...,"rep":...}), a newline,
// then size() complex doubles as little-endian (re, im) pairs.
void write_field(std::ostream& os, const DomainSpec& spec, Rep rep, const CVec& data);
std::pair<DomainSpec, CVec> read_field(std::istream& is, Rep expected);

template <Rep R>
void write_field(std::ostream& os, const Field<R>& f) {
  write_field(os, f.spec(), R, f.data());
}
template <Rep R>
Field<R> read_field(std::istream& is) {
  auto [spec, data] = read_field(is, R);
  return Field<R>(std::move(spec), std::move(data));
}

// Raw helpers shared by the binary formats.
void write_le_doubles(std::ostream& os, const double* v, std::size_t count);
void read_le_doubles(std::istream& is, double* v, std::size_t count);

}  // namespace dlab
