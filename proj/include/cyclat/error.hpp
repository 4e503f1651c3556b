#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cyclat {

enum class ErrorKind {
  InvalidDimension,
  InvalidIndex,
  InvalidInput,
  ArithmeticOverflow,
  Domain,
  Precondition,
  NumericInconsistency,
  SingularLattice,
  BudgetExceeded,
  InvalidSpec,
  NoValidR0,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so that
/// callers (the CLI in particular) can map it to an exit code or a report flag.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace cyclat
