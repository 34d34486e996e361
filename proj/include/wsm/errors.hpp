#pragma once

#include <stdexcept>
#include <string>

namespace wsm {

// Input outside the mathematical domain of a function (e.g. alpha >= 1/2,
// zeta outside [0, alpha], derivative evaluated at an endpoint).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A theorem-level parameter (x, y) below its threshold without an override.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Work budget or hard size cap exceeded.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A numeric routine failed to bracket or converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input (graph files, grid specs).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wsm
