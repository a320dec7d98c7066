#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace systole {

enum class ErrorKind {
  InvalidInput,
  NonIntegralResult,
  NotUnimodular,
  NotSemisimple,
  ConvergenceFailure,
  DomainError,
  TraceTooSmall,
  NotHyperbolic,
  UnsupportedFamily,
  InvalidType,
  NotInSubgroup,
  RamifiedPrime,
  PrimeTooSmall,
  IdentityElement,
  NoWitness,
  LevelTooSmall,
  NotSplit,
  BudgetExceeded,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every domain failure in the library is reported through this type. The
// kind is stable and machine-checkable; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace systole
