#pragma once

#include <stdexcept>
#include <string>

namespace curvball {

// Malformed or out-of-domain arguments (model violations, bad radii, ...).
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// Geometrically degenerate requests: antipodal geodesics, coincident
// bisector endpoints, sets with no sampleable volume.
class DegenerateError : public std::runtime_error {
 public:
  explicit DegenerateError(const std::string& what) : std::runtime_error(what) {}
};

// A generator could not realize the requested configuration.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

// A set oracle produced a member outside its certified bounding ball.
class BoundViolation : public std::logic_error {
 public:
  explicit BoundViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace curvball
