#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "hklab/linalg.hpp"
#include "hklab/quiver.hpp"

namespace hklab {

enum class BalanceMethod { newton, gradient };
enum class BalanceStatus { converged, max_iter_exceeded, stalled };

std::string_view to_string(BalanceMethod m);
std::string_view to_string(BalanceStatus s);

struct BalanceStep {
  double step = 0.0;
  double residual = 0.0;
};

struct BalanceReport {
  BalanceMethod method = BalanceMethod::newton;
  BalanceStatus status = BalanceStatus::converged;
  int iterations = 0;
  double initial_residual = 0.0;
  double final_residual = 0.0;  // ||mu_R||, Frobenius over vertices
  std::vector<BalanceStep> step_history;
  bool converged = false;
};

// Drives mu_R to zero inside the GL(V)-orbit by hermitian gauge steps exp(t*xi). Newton
// solves the linearised equation for xi; gradient uses xi = -H. Both backtrack on ||mu_R||^2.
std::pair<QuiverRep, BalanceReport> balance(const QuiverRep& rep, const Tolerances& tol,
                                            int max_iter = 2000,
                                            BalanceMethod method = BalanceMethod::newton);

// The dictionary is fixed as y*x = M / kKappa; decode may use a different kappa only when a
// broken convention is injected on purpose.
inline const cplx kKappa{0.0, 1.0};

struct SpectralLevel {
  std::vector<double> ordered;   // lambda_1..lambda_n
  std::vector<int> cluster_of;   // cluster index of each lambda_k
  std::vector<cplx> zeta;        // zeta_k = c_k - c_{k-1}, c_k = -lambda_k / kKappa
  std::vector<Matrix> targets;   // mu_C level: -zeta_k * I on V_k
};

// Zero cluster first (if present), remaining clusters in decreasing order.
std::vector<int> default_cluster_order(const SpectralData& zeta, double zero_tol);

// Orders are permutations of cluster indices. Equal eigenvalues stay contiguous by construction.
SpectralLevel spectral_level(const SpectralData& zeta, const DimensionVector& dims,
                             const std::vector<int>& cluster_order);

struct EncodeOptions {
  std::vector<int> cluster_order;           // empty: default order
  std::optional<JordanType> known_type;     // skips rank decisions when the orbit is known
  Conventions conv;
};

struct EncodedPoint {
  QuiverRep rep;
  SpectralData zeta;
  JordanType jordan;
  std::vector<int> cluster_order;
  SpectralLevel level;
  BalanceReport balance;
  cplx kappa = kKappa;
  double level_residual = 0.0;
  double decode_residual = 0.0;
};

EncodedPoint encode(const Matrix& M, const Tolerances& tol, const EncodeOptions& opts = {});

// encode followed by balance; the report lands in EncodedPoint::balance.
EncodedPoint encode_balanced(const Matrix& M, const Tolerances& tol, const EncodeOptions& opts = {},
                             int max_iter = 2000, BalanceMethod method = BalanceMethod::newton);

Matrix decode(const QuiverRep& rep, const Conventions& conv = {});

double level_residual(const QuiverRep& rep, const SpectralLevel& level, const Conventions& conv = {});

}  // namespace hklab
