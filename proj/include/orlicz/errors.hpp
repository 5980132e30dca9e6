/// @file errors.hpp
#pragma once

#include <stdexcept>

namespace orlicz {

/// Invalid user-facing configuration (bad family parameters, malformed config
/// files, empty sample sets...).  The CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A numeric procedure could not reach its contract (failed bracketing,
/// degenerate geometry after retries).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace orlicz
