#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hklab {

enum class ErrorCode {
  NotRealSpectrum,
  NonSquare,
  RankAmbiguous,
  ShapeMismatch,
  SingularGauge,
  TemplateResidual,
  UnsupportedOrdering,
  BalanceFailure,
  WrongAlgebra,
  UnsupportedForm,
  CorrectorStall,
  StepFloorReached,
  SizeMismatch,
  InvalidArgument,
};

std::string_view error_name(ErrorCode code);

// Input problems map to CLI exit 4; everything else is a numerical failure (exit 3).
bool is_validation_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hklab
