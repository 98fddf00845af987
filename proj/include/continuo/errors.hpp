#pragma once

#include <stdexcept>
#include <string>

namespace continuo {

/// Input bytes/text that cannot be decoded (MIDI, alignment CSV, manifest).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structurally valid input that violates a dataset constraint.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical failure, e.g. the dual solver not converging.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace continuo
