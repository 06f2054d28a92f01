#pragma once

#include <optional>
#include <vector>

#include "hklab/errors.hpp"
#include "hklab/involution.hpp"
#include "hklab/linalg.hpp"

namespace hklab {

struct TraceSample {
  double a = 0.0;
  Matrix M;
  double corrector_residual = 0.0;  // ||alpha_a(M) - M|| at unit norm
  int corrector_iterations = 0;
  double spectral_drift = 0.0;      // charpoly drift against the source
};

struct TracePath {
  std::vector<TraceSample> samples;
  Matrix source;
  Matrix target;
  double scale = 0.0;   // ||M0||_F; the march runs at unit norm and is rescaled
  JordanType jordan;
  int steps = 0;
  int halvings = 0;
  double max_corrector_residual = 0.0;
  double max_spectral_drift = 0.0;
  double max_similarity_condition = 1.0;
  bool complete = false;
};

class StepFloorReachedError : public Error {
 public:
  StepFloorReachedError(const std::string& what, TracePath partial)
      : Error(ErrorCode::StepFloorReached, what), partial_(std::move(partial)) {}
  const TracePath& partial() const { return partial_; }

 private:
  TracePath partial_;
};

struct CorrectorResult {
  Matrix M;
  Matrix similarity;  // M = similarity * input * similarity^-1
  double residual = 0.0;
  int iterations = 0;
};

// Solves [xi, M] = F in the least-squares sense; the minimum-norm xi is tangent to the orbit.
Matrix solve_commutator(const Matrix& M, const Matrix& F, double rcond = 1e-10);

// Involution averaging projected onto the similarity orbit: M <- e^xi M e^-xi with
// [xi, M] = (alpha_a(M) - M)/2. The spectrum and Jordan type are untouched by construction.
CorrectorResult corrector_detailed(const Matrix& M, InvolutionParam a, const Tolerances& tol,
                                   int max_iter, const std::optional<JordanType>& known = {});
Matrix corrector(const Matrix& M, InvolutionParam a, const Tolerances& tol, int max_iter = 8);

TracePath trace(const Matrix& M0, int steps, const Tolerances& tol);

struct KsEndpointReport {
  double source_imag = 0.0;
  double symmetry_residual = 0.0;
  double spectral_drift = 0.0;
  bool jordan_equal = false;
  JordanType source_type;
  JordanType target_type;
  std::optional<Partition> ks_label;
};

KsEndpointReport verify_ks_endpoint(const TracePath& path, const Tolerances& tol);

}  // namespace hklab
