#include "symred/errors.hpp"

namespace symred {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::GroupMismatch: return "GroupMismatch";
    case ErrorCode::DerivativeFailure: return "DerivativeFailure";
    case ErrorCode::BoundaryViolation: return "BoundaryViolation";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::SpaceMismatch: return "SpaceMismatch";
    case ErrorCode::RankAmbiguity: return "RankAmbiguity";
    case ErrorCode::GaugeChartMiss: return "GaugeChartMiss";
    case ErrorCode::LevelViolation: return "LevelViolation";
    case ErrorCode::EmptyCatalog: return "EmptyCatalog";
    case ErrorCode::NonFreePoint: return "NonFreePoint";
    case ErrorCode::UnknownScenario: return "UnknownScenario";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace symred
