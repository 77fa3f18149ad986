#pragma once
// Failure taxonomy shared by the library.  The CLI maps these onto exit
// codes: verification_error -> 1, argument_error -> 2 (usage), resource_error
// -> 3; numeric_error and degeneracy_error surface as generic failures (1).

#include <stdexcept>
#include <string>

namespace wsaw {

// Bad inputs: dimension/order mismatch, out-of-domain parameter, malformed
// rational, unsupported option.
struct argument_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Work-limit or memory-budget refusal; message carries the estimate.
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A numeric routine could not reach its tolerance; message carries the
// achieved error estimate.
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact-arithmetic degeneracy (vanishing denominator and the like).
struct degeneracy_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An exact identity failed; message names the first offending entry.
struct verification_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace wsaw
