#pragma once

#include <stdexcept>
#include <string>

namespace invgen {

// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string &what) : std::runtime_error(what) {}
};

// Preconditions violated by the caller (degree mismatch, element not in
// group, malformed mask, ...).
struct InvalidArgument : Error {
  explicit InvalidArgument(const std::string &what) : Error(what) {}
};

// An operation needed the full element table but the group order exceeds
// the element cap.
struct CapExceeded : Error {
  explicit CapExceeded(const std::string &what) : Error(what) {}
};

// An exhaustive structure computation (subgroup lattice, automorphism
// backtracking, tuple enumeration) exceeds its budget.  Never downgraded
// to a partial result.
struct BudgetExceeded : Error {
  explicit BudgetExceeded(const std::string &what) : Error(what) {}
};

// quotient() was asked to factor by a subgroup that is not normal.
struct NotNormal : Error {
  explicit NotNormal(const std::string &what) : Error(what) {}
};

// Text input (cycle notation, group descriptors, matrix files) failed to
// parse; carries a position where known.
struct ParseError : Error {
  ParseError(const std::string &what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        pos(position) {}
  explicit ParseError(const std::string &what) : Error(what), pos(0) {}
  std::size_t pos;
};

// Internal consistency failure (e.g. a named group resolving to the wrong
// order).  Indicates a bug, not bad input.
struct InternalError : Error {
  explicit InternalError(const std::string &what) : Error(what) {}
};

} // namespace invgen
