#pragma once

#include <stdexcept>
#include <string>

namespace dglie {

/// Malformed input: bad dimensions, unknown names, syntax.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The input parsed but violates a structural axiom (degree, d^2 = 0, ...).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The requested computation does not fit in the configured truncation.
struct WindowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An operation was asked for outside the mode it supports.
struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed. Always a bug.
struct InvariantError : std::logic_error {
  using std::logic_error::logic_error;
};

inline void check_invariant(bool ok, const std::string& what) {
  if (!ok) throw InvariantError(what);
}

}  // namespace dglie
