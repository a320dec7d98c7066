#include "systole/error.hpp"

namespace systole {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NonIntegralResult: return "NonIntegralResult";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::NotSemisimple: return "NotSemisimple";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::TraceTooSmall: return "TraceTooSmall";
    case ErrorKind::NotHyperbolic: return "NotHyperbolic";
    case ErrorKind::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorKind::InvalidType: return "InvalidType";
    case ErrorKind::NotInSubgroup: return "NotInSubgroup";
    case ErrorKind::RamifiedPrime: return "RamifiedPrime";
    case ErrorKind::PrimeTooSmall: return "PrimeTooSmall";
    case ErrorKind::IdentityElement: return "IdentityElement";
    case ErrorKind::NoWitness: return "NoWitness";
    case ErrorKind::LevelTooSmall: return "LevelTooSmall";
    case ErrorKind::NotSplit: return "NotSplit";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
  }
  return "Unknown";
}

}  // namespace systole
