#pragma once

#include <stdexcept>
#include <string>

namespace skewflow {

/// Raised when a time pair lies outside T (t < s, negative times) or a
/// discrete-only system is queried at non-integer times.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Invalid arguments: bad parameters, dimension mismatches, unusable samples.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// An internal assumption was contradicted by the data (e.g. a verdict that
/// is not monotone in its parameter).
class InconsistencyError : public std::runtime_error {
 public:
  explicit InconsistencyError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace skewflow
