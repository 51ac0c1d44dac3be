#include "flatmod/error.hpp"

namespace flatmod {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Validation: return "ValidationError";
    case ErrorKind::EmptyGraph: return "EmptyGraph";
    case ErrorKind::UnknownCluster: return "UnknownCluster";
    case ErrorKind::TraceMismatch: return "TraceMismatch";
    case ErrorKind::InfeasibleDegrees: return "InfeasibleDegrees";
    case ErrorKind::InfeasiblePartition: return "InfeasiblePartition";
    case ErrorKind::GenerationFailure: return "GenerationFailure";
    case ErrorKind::VertexSetMismatch: return "VertexSetMismatch";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::MissingResults: return "MissingResults";
    case ErrorKind::Config: return "ConfigError";
  }
  return "Error";
}

}  // namespace flatmod
