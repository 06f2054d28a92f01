#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hklab/linalg.hpp"
#include "hklab/mv_bridge.hpp"
#include "hklab/quiver.hpp"

namespace hklab {

struct InvolutionParam {
  double a = 0.0;

  explicit InvolutionParam(double a_value);
  double angle() const;  // s = a * pi / 2
};

enum class Family {
  gl_split,
  sl_split,
  sl_quaternionic,
  su_pq,
  so_pq,
  so_star,
  sp_split,
  sp_pq,
  gl_complex,  // complex group viewed as a real form
  sl_complex,
};

std::string_view to_string(Family f);
Family family_from_string(std::string_view s);

struct RealFormSpec {
  Family family = Family::gl_split;
  int n = 1;
  int p = 0;

  void validate() const;
};

struct AlphaOptions {
  Conventions conv;
  std::vector<int> cluster_order;
  std::optional<JordanType> known_type;
  BalanceMethod method = BalanceMethod::newton;
  int max_iter = 2000;
};

struct AlphaResult {
  Matrix value;
  EncodedPoint point;  // balanced representative of the input
  QuiverRep rotated;
};

// (cos s * I + sin s * K) o conj, blockwise.
QuiverRep rotate_rep(const QuiverRep& rep, double s);

AlphaResult alpha_gl_detailed(const Matrix& M, InvolutionParam a, const Tolerances& tol,
                              const AlphaOptions& opts = {});
Matrix alpha_gl(const Matrix& M, InvolutionParam a, const Tolerances& tol,
                const AlphaOptions& opts = {});

// d/da alpha_a(M) at fixed M, from the rotation of one balanced representative.
Matrix alpha_gl_derivative(const Matrix& M, InvolutionParam a, const Tolerances& tol,
                           const AlphaOptions& opts = {});

// Closed form on a balanced representative: c^2 conj(M) + s^2 M^T + i c s conj(yy^+ - x^+x).
Matrix alpha_closed_form(const QuiverRep& balanced, InvolutionParam a);

Matrix beta_gl(const Matrix& M);

double membership_residual(const RealFormSpec& form, const Matrix& M);
Matrix theta_form(const RealFormSpec& form, const Matrix& M, const Tolerances& tol);
Matrix eta_form(const RealFormSpec& form, const Matrix& M);
Matrix alpha_classical(const RealFormSpec& form, const Matrix& M, InvolutionParam a,
                       const Tolerances& tol, const AlphaOptions& opts = {});

// S_m = [[0, -I], [I, 0]], I_{p,q} = diag(I_p, -I_q), K_{p,m-p} = diag(I_{p,m-p}, I_{p,m-p}).
Matrix symplectic_form(int m);
Matrix signature_matrix(int p, int q);

struct EquivarianceReport {
  double orthogonal = 0.0;     // ||alpha(k M k^-1) - k alpha(M) k^-1||
  double scaling = 0.0;        // ||alpha(t^2 M) - t^2 alpha(M)||, t in R^x
  double beta = 0.0;           // ||alpha(beta M) - beta alpha(M)||
  double involutivity = 0.0;   // ||alpha(alpha(M)) - M||
  double charpoly = 0.0;
  int trials = 0;
};

// Raw Frobenius residuals, maximised over trials.
EquivarianceReport equivariance_suite(const Matrix& M, InvolutionParam a, int trials,
                                      std::uint64_t seed, const Tolerances& tol);

}  // namespace hklab
