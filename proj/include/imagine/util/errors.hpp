#pragma once

#include <stdexcept>
#include <string>

namespace imagine {

/// Base of every exception thrown by the library. `kind()` is a stable
/// machine-readable tag used by the CLI error JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error("parse_error", what) {}
};

class InvariantError : public Error {
 public:
  explicit InvariantError(const std::string& what) : Error("invariant_violation", what) {}
};

class UnknownCityError : public Error {
 public:
  explicit UnknownCityError(const std::string& city)
      : Error("unknown_city", "unknown city: " + city) {}
};

class ExhaustionError : public Error {
 public:
  explicit ExhaustionError(const std::string& what) : Error("exhaustion", what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error("config_error", what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error("io_error", what) {}
};

}  // namespace imagine
