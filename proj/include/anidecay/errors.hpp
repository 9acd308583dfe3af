#pragma once

#include <stdexcept>
#include <string>

namespace anidecay {

/// Base class for all structured errors thrown by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Mismatched grids / array sizes between operands.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// Bad user-facing parameters (config keys, exponent gates, window bounds).
class ParameterError : public Error {
public:
  using Error::Error;
};

/// Solution left the trust region (NaN/Inf or amplitude explosion).
class BlowUpError : public Error {
public:
  BlowUpError(const std::string& msg, double t) : Error(msg), time(t) {}
  double time;
};

/// File / serialization failures.
class IoError : public Error {
public:
  using Error::Error;
};

} // namespace anidecay
