#pragma once

#include <stdexcept>
#include <string>

namespace symred {

enum class ErrorCode {
  GroupMismatch,
  DerivativeFailure,
  BoundaryViolation,
  ArityMismatch,
  SpaceMismatch,
  RankAmbiguity,
  GaugeChartMiss,
  LevelViolation,
  EmptyCatalog,
  NonFreePoint,
  UnknownScenario,
  ConfigError,
};

const char* to_string(ErrorCode code);

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

#define SYMRED_DEFINE_ERROR(Name)                                      \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& what) : Error(ErrorCode::Name, what) {} \
  };

SYMRED_DEFINE_ERROR(GroupMismatch)
SYMRED_DEFINE_ERROR(DerivativeFailure)
SYMRED_DEFINE_ERROR(BoundaryViolation)
SYMRED_DEFINE_ERROR(ArityMismatch)
SYMRED_DEFINE_ERROR(SpaceMismatch)
SYMRED_DEFINE_ERROR(RankAmbiguity)
SYMRED_DEFINE_ERROR(GaugeChartMiss)
SYMRED_DEFINE_ERROR(LevelViolation)
SYMRED_DEFINE_ERROR(EmptyCatalog)
SYMRED_DEFINE_ERROR(NonFreePoint)
SYMRED_DEFINE_ERROR(UnknownScenario)
SYMRED_DEFINE_ERROR(ConfigError)

#undef SYMRED_DEFINE_ERROR

}  // namespace symred
