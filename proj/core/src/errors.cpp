#include "hklab/errors.hpp"

namespace hklab {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotRealSpectrum: return "NotRealSpectrum";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::RankAmbiguous: return "RankAmbiguous";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::SingularGauge: return "SingularGauge";
    case ErrorCode::TemplateResidual: return "TemplateResidual";
    case ErrorCode::UnsupportedOrdering: return "UnsupportedOrdering";
    case ErrorCode::BalanceFailure: return "BalanceFailure";
    case ErrorCode::WrongAlgebra: return "WrongAlgebra";
    case ErrorCode::UnsupportedForm: return "UnsupportedForm";
    case ErrorCode::CorrectorStall: return "CorrectorStall";
    case ErrorCode::StepFloorReached: return "StepFloorReached";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_validation_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotRealSpectrum:
    case ErrorCode::NonSquare:
    case ErrorCode::ShapeMismatch:
    case ErrorCode::UnsupportedOrdering:
    case ErrorCode::WrongAlgebra:
    case ErrorCode::UnsupportedForm:
    case ErrorCode::SizeMismatch:
    case ErrorCode::InvalidArgument:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

}  // namespace hklab
