#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pgl3 {

enum class ErrorKind {
  InvalidInput,
  ParseError,
  DivisionByZero,
  FieldMismatch,
  NotASubfield,
  SingularMatrix,
  OrderNotFound,
  NotFiniteOrder,
  IdentityElement,
  ClosureExceedsCap,
  NotSubgroupOfAmbient,
  CriterionFailed,
  DegenerateParams,
  BadParameters,
  NoGenerators,
  ZeroLeadingCoefficient,
  PreconditionFailed,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::NotASubfield: return "NotASubfield";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::OrderNotFound: return "OrderNotFound";
    case ErrorKind::NotFiniteOrder: return "NotFiniteOrder";
    case ErrorKind::IdentityElement: return "IdentityElement";
    case ErrorKind::ClosureExceedsCap: return "ClosureExceedsCap";
    case ErrorKind::NotSubgroupOfAmbient: return "NotSubgroupOfAmbient";
    case ErrorKind::CriterionFailed: return "CriterionFailed";
    case ErrorKind::DegenerateParams: return "DegenerateParams";
    case ErrorKind::BadParameters: return "BadParameters";
    case ErrorKind::NoGenerators: return "NoGenerators";
    case ErrorKind::ZeroLeadingCoefficient: return "ZeroLeadingCoefficient";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
        kind_(kind), detail_(detail) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

private:
  ErrorKind kind_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& detail) {
  throw Error(kind, detail);
}

} // namespace pgl3
