#pragma once

#include <stdexcept>
#include <string>

namespace covering {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix or polynomial does not satisfy the admissibility conditions.
class NotAdmissible : public Error {
 public:
  using Error::Error;
};

/// The infimum of |r.a| over the lattice is a positive minimum (rank <= 1).
class NoAccumulation : public Error {
 public:
  using Error::Error;
};

/// A stated hypothesis failed; `detail` carries the certified data behind it.
class PreconditionFailed : public Error {
 public:
  PreconditionFailed(const std::string& what, std::string detail)
      : Error(what), detail_(std::move(detail)) {}
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

/// Not enough returns to fit a return-probability exponent.
class NoEstimate : public Error {
 public:
  using Error::Error;
};

/// Interval refinement hit the precision cap before a comparison resolved.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line, std::string field)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line),
        field_(std::move(field)) {}
  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  int line_;
  std::string field_;
};

}  // namespace covering
