#pragma once

#include <stdexcept>
#include <string>

namespace hnkit {

/// Thrown when an argument lies outside the mathematical domain of an
/// operation (a coordinate on the real axis, a nonpositive weight, a
/// dimension mismatch, ...).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Thrown when a stated precondition is violated (e.g. an inadmissible
/// moment index passed to a moment check).
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what)
      : std::invalid_argument(what) {}
};

}  // namespace hnkit
