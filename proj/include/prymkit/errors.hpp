#pragma once

#include <stdexcept>
#include <string>

namespace prymkit {

/// A caller-supplied value violates an operation's precondition.
/// The CLI maps this to exit code 2.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// An internal invariant failed; this is a bug or a genuine mathematical
/// inconsistency in the data. The CLI maps this to exit code 3.
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace prymkit
