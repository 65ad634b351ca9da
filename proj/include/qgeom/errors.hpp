#pragma once

#include <stdexcept>
#include <string>

namespace qgeom {

/// Argument outside the domain of a function (x <= 0, negative mean input, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Catalog parameter outside its admissible range (beta, gamma, unknown key).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A Chentsov-Morozova evaluation was requested on a state with a zero eigenvalue.
class SingularStateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Two independent routes to the same quantity disagree, or a quantity that is
/// nonnegative by theorem came out clearly negative. Always a bug, never input.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace qgeom
