#pragma once

#include <stdexcept>
#include <string>

namespace gslab {

struct InvalidDimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Requested an L^q-type norm whose radial integrand does not decay fast
// enough to be integrable (algebraic tails only).
struct DivergentNormError : std::domain_error {
  using std::domain_error::domain_error;
};

struct IncompleteProfileError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct OutOfRangeError : std::domain_error {
  using std::domain_error::domain_error;
};

struct StiffnessError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoGroundStateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IterationLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct WitnessNotFoundError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace gslab
