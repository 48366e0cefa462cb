#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace matchkast {

enum class ErrorCode {
  // planar-graph / pbg
  Parse,
  NotBipartite,
  BadRotation,
  NotGenusZero,
  DanglingReference,
  BadOuterFace,
  DuplicateId,
  NotASimpleCycle,
  // weight-ring
  NotDivisible,
  DivisionByZero,
  UnboundVariable,
  NotSquare,
  // kasteleyn-core / oracle
  OuterFaceGiven,
  UnbalancedColors,
  BudgetExceeded,
  // compound
  StemColorViolation,
  LeafColorViolation,
  InequivalentStemEndpoints,
  NotOuterFaceVertex,
  CountMismatch,
  InvalidInputSign,
  PlacementImpossible,
  NotConnected,
  UnfaithfulEmbedding,
  // regions
  DivisibilityPreconditionViolated,
  PrecisionInsufficient,
  // ciucu
  NonAlternating,
  ColorImbalance,
  NotOuterFace,
  // misc
  InvalidArgument,
  Io,
};

constexpr std::string_view to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::NotBipartite: return "NotBipartite";
    case ErrorCode::BadRotation: return "BadRotation";
    case ErrorCode::NotGenusZero: return "NotGenusZero";
    case ErrorCode::DanglingReference: return "DanglingReference";
    case ErrorCode::BadOuterFace: return "BadOuterFace";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::NotASimpleCycle: return "NotASimpleCycle";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::OuterFaceGiven: return "OuterFaceGiven";
    case ErrorCode::UnbalancedColors: return "UnbalancedColors";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::StemColorViolation: return "StemColorViolation";
    case ErrorCode::LeafColorViolation: return "LeafColorViolation";
    case ErrorCode::InequivalentStemEndpoints: return "InequivalentStemEndpoints";
    case ErrorCode::NotOuterFaceVertex: return "NotOuterFaceVertex";
    case ErrorCode::CountMismatch: return "CountMismatch";
    case ErrorCode::InvalidInputSign: return "InvalidInputSign";
    case ErrorCode::PlacementImpossible: return "PlacementImpossible";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::UnfaithfulEmbedding: return "UnfaithfulEmbedding";
    case ErrorCode::DivisibilityPreconditionViolated: return "DivisibilityPreconditionViolated";
    case ErrorCode::PrecisionInsufficient: return "PrecisionInsufficient";
    case ErrorCode::NonAlternating: return "NonAlternating";
    case ErrorCode::ColorImbalance: return "ColorImbalance";
    case ErrorCode::NotOuterFace: return "NotOuterFace";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above; the
/// message is meant for humans and may include a line number or an id.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace matchkast
