#pragma once

#include <stdexcept>
#include <string>

namespace apbat {

// Malformed input file or a graph that violates the network assumptions.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inconsistent or missing caller-supplied parameters.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Enumeration size outside what the engine is willing to attempt.
class LimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace apbat
