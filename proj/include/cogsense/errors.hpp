#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace cogsense {

// Arguments outside an operation's contract (bad sizes, non-finite values,
// malformed parameter combinations).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Sample that is structurally valid but too degenerate for the requested
// statistic, e.g. the medcouple when no pair straddles the median. Kept
// distinct from InvalidInput so callers can tell the two apart.
class DegenerateSample : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A required input file does not exist.
class MissingInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Configuration file violates the schema; carries the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Filesystem failures while reading or emitting artifacts.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A simulation or aggregation invariant was breached; indicates a bug, not
// bad user input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cogsense
