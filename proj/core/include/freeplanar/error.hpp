#pragma once

#include <stdexcept>
#include <string>

namespace freeplanar {

// Error classes map to CLI exit codes: usage -> 1 (handled by the CLI parser),
// domain/validation -> 2, numeric failure -> 3.
enum class ErrorKind {
  InvalidWord,
  BoundaryMismatch,
  SideWordMismatch,
  NotAnInsertion,
  DegenerateDelta,
  Disconnected,
  TooFewEdges,
  WeightInvalid,
  ShapeUnsupported,
  NotNormalized,
  InvalidWeights,
  PartitionInvalid,
  PFViolated,
  NonInvertible,
  InsufficientMoments,
  BudgetExceeded,
  SchemaError,
  BranchAmbiguity,
  NumericFailure,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidWord: return "InvalidWord";
    case ErrorKind::BoundaryMismatch: return "BoundaryMismatch";
    case ErrorKind::SideWordMismatch: return "SideWordMismatch";
    case ErrorKind::NotAnInsertion: return "NotAnInsertion";
    case ErrorKind::DegenerateDelta: return "DegenerateDelta";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::TooFewEdges: return "TooFewEdges";
    case ErrorKind::WeightInvalid: return "WeightInvalid";
    case ErrorKind::ShapeUnsupported: return "ShapeUnsupported";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::InvalidWeights: return "InvalidWeights";
    case ErrorKind::PartitionInvalid: return "PartitionInvalid";
    case ErrorKind::PFViolated: return "PFViolated";
    case ErrorKind::NonInvertible: return "NonInvertible";
    case ErrorKind::InsufficientMoments: return "InsufficientMoments";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::BranchAmbiguity: return "BranchAmbiguity";
    case ErrorKind::NumericFailure: return "NumericFailure";
  }
  return "Error";
}

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }
  bool numeric() const {
    return kind_ == ErrorKind::NumericFailure || kind_ == ErrorKind::BranchAmbiguity;
  }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

} // namespace freeplanar
