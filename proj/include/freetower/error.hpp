#pragma once

#include <stdexcept>
#include <string>

namespace freetower {

/// Input that violates a documented precondition or grammar (bad token,
/// index out of range, trivial word where a nontrivial one is required).
class MalformedInput : public std::invalid_argument {
 public:
  explicit MalformedInput(const std::string& what) : std::invalid_argument(what) {}
};

/// A floor construction whose gluing data cannot form a hyperbolic floor.
class InvalidFloor : public std::invalid_argument {
 public:
  explicit InvalidFloor(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace freetower
