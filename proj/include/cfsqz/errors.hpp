#pragma once

#include <stdexcept>
#include <string>

namespace cfsqz {

// A parameter fell outside its documented bounds.
class InvalidParameterError : public std::invalid_argument {
 public:
  explicit InvalidParameterError(const std::string& what)
      : std::invalid_argument(what) {}
};

// The requested operating point sits at or above an oscillation threshold,
// or a loop denominator is too close to zero to evaluate.
class ThresholdError : public std::domain_error {
 public:
  explicit ThresholdError(const std::string& what) : std::domain_error(what) {}
};

// Run-configuration text that cannot be parsed. Carries the 1-based line
// number of the offending line, or 0 when the problem is document-wide.
class ConfigParseError : public std::runtime_error {
 public:
  ConfigParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what
                                    : what),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// A file could not be read, written, or created.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cfsqz
