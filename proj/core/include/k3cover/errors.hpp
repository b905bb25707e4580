#pragma once

#include <stdexcept>
#include <string>

namespace k3cover {

/// Bad user input: malformed file, polynomial that fails a precondition,
/// inconsistent dimensions.  CLI exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A verification check failed (criterion violated, count mismatch with a
/// proven value).  CLI exit code 1.
struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Numerics gave up after the prescribed retries (tracking underflow,
/// unmatched fibers, missing solutions).  CLI exit code 3.
struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace k3cover
