#pragma once

#include <vector>

#include "hklab/linalg.hpp"

namespace hklab {

// A_n chain with framing at vertex 1. Vertices are stored 0-based: v[0] is V_1.
struct DimensionVector {
  std::vector<int> v;
  std::vector<int> w;

  int vertices() const { return static_cast<int>(v.size()); }
  void validate() const;

  // v = (n, n-1, ..., 1), w = (n, 0, ..., 0).
  static DimensionVector chain(int n);

  friend bool operator==(const DimensionVector&, const DimensionVector&) = default;
};

// X[k]: V_{k+1} -> V_{k+2} and Y[k]: V_{k+2} -> V_{k+1} in 1-based vertex names;
// x: W_1 -> V_1, y: V_1 -> W_1.
struct QuiverRep {
  DimensionVector dims;
  std::vector<Matrix> X;
  std::vector<Matrix> Y;
  Matrix x;
  Matrix y;

  static QuiverRep zero(const DimensionVector& dims);
  void validate() const;
  int n() const { return dims.w.empty() ? 0 : dims.w.front(); }
};

struct MomentValue {
  std::vector<Matrix> real;     // skew-hermitian per vertex
  std::vector<Matrix> complex;
};

struct GaugeElement {
  std::vector<Matrix> g;

  static GaugeElement identity(const DimensionVector& dims);
  GaugeElement inverse() const;
};

// Assembly signs of the complex moment map. The defaults are the frozen convention; the
// alternatives exist so that deliberately broken pipelines can be exercised.
struct Conventions {
  cplx kappa{0.0, 1.0};        // decode: M = kappa * y * x
  double framing_sign = 1.0;   // coefficient of x*y at vertex 1
  double bracket_sign = 1.0;   // coefficient of X_{k-1}Y_{k-1} - Y_k X_k

  bool is_default() const;
};

// H_k = X_{k-1}X_{k-1}^+ - Y_{k-1}^+Y_{k-1} + Y_kY_k^+ - X_k^+X_k, with (x, y) in the
// role of (X_0, Y_0). mu_R,k = (i/2) H_k.
std::vector<Matrix> real_moment_hermitian(const QuiverRep& rep);

MomentValue mu(const QuiverRep& rep, const Conventions& conv = {});
std::vector<Matrix> mu_real(const QuiverRep& rep);
std::vector<Matrix> mu_complex(const QuiverRep& rep, const Conventions& conv = {});

// Frobenius norm over all vertices.
double moment_norm(const std::vector<Matrix>& blocks);

QuiverRep apply_I(const QuiverRep& rep);
QuiverRep apply_J(const QuiverRep& rep);
QuiverRep apply_K(const QuiverRep& rep);
QuiverRep conj_rep(const QuiverRep& rep);

QuiverRep gauge_act(const QuiverRep& rep, const GaugeElement& g);
QuiverRep glW_act(const QuiverRep& rep, const Matrix& gw);

double rep_norm(const QuiverRep& rep);
QuiverRep scale(const QuiverRep& rep, double t);

QuiverRep add(const QuiverRep& a, const QuiverRep& b, cplx sb = 1.0);
double rep_distance(const QuiverRep& a, const QuiverRep& b);

QuiverRep random_rep(const DimensionVector& dims, Rng& rng);
GaugeElement random_gauge(const DimensionVector& dims, Rng& rng, double spread);
GaugeElement random_unitary_gauge(const DimensionVector& dims, Rng& rng);

}  // namespace hklab
