#pragma once

#include <stdexcept>
#include <string>

namespace lipfrac {

enum class ErrorCode {
  EmptyInput,
  InvalidInput,
  ParseError,
  GcdViolation,
  NotPrimitiveInput,
  ZeroIdeal,
  OwnerMismatch,
  DegreeUnsupported,
  NotPositive,
  NotMember,
  NotInIdeal,
  NonCommensurable,
  NotComparable,
  ExplosionGuard,
  PredicateUnresolved,
  DecompositionFailed,
  RegionNotInvariant,
  NotClosed,
  SingularSystem,
  IdealNotExact,
  FieldMismatch,
  FamilyMismatch,
  EmptyFamily,
  VerificationFailed,
  TargetsInfeasible,
  AlphabetNotInIdeal,
  RouteUnsupported,
  FieldUnsupported,
  EmptySubsystem,
  SubstitutionInvalid,
  DimensionUnsupported,
};

const char *error_name(ErrorCode c);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode c, const std::string &msg) {
  throw Error(c, msg);
}

} // namespace lipfrac
