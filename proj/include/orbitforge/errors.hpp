#pragma once

#include <stdexcept>
#include <string>

namespace orbitforge {

/// Malformed or out-of-range input: unknown type strings, bad rational
/// literals, indices outside the rank, mismatched space tags.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Mathematically meaningful rejection: inadmissible seeds, degenerate
/// lambda, a pair that is not good, non-invariant bivectors, resource caps.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A violated internal expectation. Indicates a bug, never user error.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace orbitforge
