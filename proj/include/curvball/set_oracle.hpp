#pragma once

#include <functional>
#include <memory>
#include <string>

#include "curvball/geom_core.hpp"

namespace curvball {

enum class Descriptor { UnionOfBalls, BallIntersection, Symmetrized, Reflected, Composite, Empty };

std::string to_string(Descriptor d);

// A compact set given by an exact membership predicate and a certified
// bounding ball. Immutable; copies share the predicate.
class SetOracle {
 public:
  using Predicate = std::function<bool(const Point&)>;

  SetOracle(Space space, Predicate member, Ball bound, Descriptor descriptor);

  static SetOracle empty(const Space& space);

  bool contains(const Point& x) const { return (*member_)(x); }
  bool operator()(const Point& x) const { return contains(x); }

  const Space& space() const { return space_; }
  const Ball& bound() const { return bound_; }
  Descriptor descriptor() const { return descriptor_; }
  bool known_empty() const { return descriptor_ == Descriptor::Empty || bound_.empty; }

 private:
  Space space_;
  std::shared_ptr<const Predicate> member_;
  Ball bound_;
  Descriptor descriptor_;
};

}  // namespace curvball
