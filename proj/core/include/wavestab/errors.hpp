#pragma once

#include <stdexcept>
#include <string>

namespace wavestab {

/// Invalid operator, grid or configuration parameter (D <= 0, undersized
/// sample grid, malformed config values).
class parameter_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A state violates a physical precondition, e.g. the constraint radicand
/// turned negative.
class nonphysical_state_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The Plotnikov transform (or its inverse) is singular because Re W lost
/// positivity somewhere on the boundary.
class singular_transform_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wavestab
