#pragma once

#include <stdexcept>
#include <string>

namespace dlab {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Bad configuration: malformed DomainSpec, shape mismatch, unreadable config.
class ConfigError : public Error {
public:
  using Error::Error;
};

class ArgumentError : public Error {
public:
  using Error::Error;
};

// The input carries no signal (zero mass after projection, zero denominator).
class DegenerateInputError : public Error {
public:
  using Error::Error;
};

}  // namespace dlab
