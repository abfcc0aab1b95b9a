#pragma once

#include <stdexcept>
#include <string>

namespace jsrec {

/// Thrown when an argument violates an operation's precondition
/// (bad dimensions, out-of-range parameters, empty inputs).
class precondition_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when the numerics of a recovery step break down on a valid
/// input, e.g. a projected dictionary block loses rank.
class recovery_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

[[noreturn]] inline void fail_precondition(const std::string& what) {
  throw precondition_error(what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) fail_precondition(what);
}

}  // namespace detail
}  // namespace jsrec
