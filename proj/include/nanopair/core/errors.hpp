#pragma once

#include <stdexcept>
#include <string>

namespace nanopair {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration value; `field()` names the offending key.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Malformed input deck line.
class ParseError : public Error {
 public:
  ParseError(int line, std::string field, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + field + ": " + what),
        line_(line),
        field_(std::move(field)) {}
  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  int line_;
  std::string field_;
};

/// Violation of the halo / migration protocol (lost particles, stale
/// neighborhoods, mismatched messages).
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// Coincident particles: the force law is undefined at zero separation.
class SingularityError : public Error {
 public:
  SingularityError(int i, int j, const std::string& what)
      : Error(what + " (pair " + std::to_string(i) + ", " + std::to_string(j) + ")"), i_(i), j_(j) {}
  int first() const noexcept { return i_; }
  int second() const noexcept { return j_; }

 private:
  int i_;
  int j_;
};

/// A particle moved further than half the Verlet buffer between rebuilds.
class GuardViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace nanopair
