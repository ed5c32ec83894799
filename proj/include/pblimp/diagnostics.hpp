#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pblimp {

struct ParseError : std::runtime_error {
  ParseError(int line, int column, std::string message, std::vector<std::string> expected)
      : std::runtime_error(message), line(line), column(column), expected(std::move(expected)) {}
  int line;
  int column;
  std::vector<std::string> expected;
};

struct TypeError {
  std::string message;
  std::string variable;   // offending variable, may be empty
  std::string statement;  // pretty-printed head of the offending statement
  int line = 0;
};

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZeroProbabilityObservation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotExpressible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainRequired : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StrategyMissing : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnprovedInvariant : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnboundParameter : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pblimp
