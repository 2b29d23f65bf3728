#pragma once
// Two error families so the CLI can map them to distinct exit codes:
// ParseError for malformed inputs (bad word files, bad config values) and
// NumericError for runs that were set up correctly but failed to produce a
// usable number (no Binder crossing in the grid, fit refused, budget blown).

#include <stdexcept>
#include <string>

namespace critlang {

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
  ParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg) {}
};

struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace critlang
