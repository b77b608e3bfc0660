#pragma once

#include <stdexcept>
#include <string>

namespace weft {

// Malformed or inconsistent input: dimension mismatches, nonpositive
// weights, vectors outside a subspace, non-finite entries.
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// SPD solve refused because the operator is numerically singular.
class NotInvertible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A weighted family whose operator is singular where a frame is required.
class NotAFrame : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exhaustive enumeration was requested for an index set above the cap.
class PatternCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The aggregate local-frame hypothesis of the lifting bridge fails.
class HypothesisViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Problem-file syntax or schema violation; the message names the field.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Internal numerical breakdown (eigensolver non-convergence and the like).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace weft
