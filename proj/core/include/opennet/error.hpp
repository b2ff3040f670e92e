#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace opennet {

enum class ErrorCode {
  NotSubmultiset,
  ProjectionMismatch,
  CountOverflow,
  DomainMismatch,
  InvalidMorphism,
  NotEmbedding,
  SourceMismatch,
  NotComposable,
  NotEnabled,
  IllegalEvent,
  NotCompatible,
  InitialExceedsCap,
  NotACorrespondence,
  PairExceedsCap,
  UnsupportedMode,
  UnknownPlace,
  PlaceNotOpen,
  ConditionsViolated,
  NotProper,
  NotComposableRight,
  EtaUndefined,
  NameClash,
  BudgetExceeded,
  Syntax,
  Semantic,
};

inline std::string_view to_string(ErrorCode code) noexcept;

// All library failures are reported through this type; `code()` identifies
// the contract that was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotSubmultiset: return "NotSubmultiset";
    case ErrorCode::ProjectionMismatch: return "ProjectionMismatch";
    case ErrorCode::CountOverflow: return "CountOverflow";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::InvalidMorphism: return "InvalidMorphism";
    case ErrorCode::NotEmbedding: return "NotEmbedding";
    case ErrorCode::SourceMismatch: return "SourceMismatch";
    case ErrorCode::NotComposable: return "NotComposable";
    case ErrorCode::NotEnabled: return "NotEnabled";
    case ErrorCode::IllegalEvent: return "IllegalEvent";
    case ErrorCode::NotCompatible: return "NotCompatible";
    case ErrorCode::InitialExceedsCap: return "InitialExceedsCap";
    case ErrorCode::NotACorrespondence: return "NotACorrespondence";
    case ErrorCode::PairExceedsCap: return "PairExceedsCap";
    case ErrorCode::UnsupportedMode: return "UnsupportedMode";
    case ErrorCode::UnknownPlace: return "UnknownPlace";
    case ErrorCode::PlaceNotOpen: return "PlaceNotOpen";
    case ErrorCode::ConditionsViolated: return "ConditionsViolated";
    case ErrorCode::NotProper: return "NotProper";
    case ErrorCode::NotComposableRight: return "NotComposableRight";
    case ErrorCode::EtaUndefined: return "EtaUndefined";
    case ErrorCode::NameClash: return "NameClash";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::Syntax: return "Syntax";
    case ErrorCode::Semantic: return "Semantic";
  }
  return "Unknown";
}

}  // namespace opennet
