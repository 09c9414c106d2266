#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pebbling {

/// Malformed input: bad graph, bad family parameters, k < 1, p < 2, ...
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotATree : public InvalidParameter {
 public:
  NotATree() : InvalidParameter("graph is not a tree") {}
};

/// A caller broke an operation's precondition on an otherwise valid state.
class PreconditionViolated : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when something that a theorem guarantees did not happen.
class InternalInvariant : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The search budget ran out. `lo` and `hi` bracket the quantity that was
/// being computed; for verdict-style searches they are left at zero.
class ResourceLimit : public std::runtime_error {
 public:
  ResourceLimit(const std::string& what, std::int64_t lo = 0, std::int64_t hi = 0)
      : std::runtime_error(what), lo_(lo), hi_(hi) {}

  std::int64_t lo() const noexcept { return lo_; }
  std::int64_t hi() const noexcept { return hi_; }

 private:
  std::int64_t lo_;
  std::int64_t hi_;
};

}  // namespace pebbling
