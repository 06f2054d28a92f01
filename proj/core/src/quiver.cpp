#include "hklab/quiver.hpp"

#include <cmath>

#include "hklab/errors.hpp"

namespace hklab {

namespace {

const cplx kI{0.0, 1.0};

Matrix zeros(int r, int c) { return Matrix::Zero(r, c); }

void check_shape(const Matrix& m, int r, int c, const char* what) {
  if (m.rows() != r || m.cols() != c)
    throw Error(ErrorCode::ShapeMismatch, std::string(what) + " has shape " +
                                              std::to_string(m.rows()) + "x" +
                                              std::to_string(m.cols()) + ", expected " +
                                              std::to_string(r) + "x" + std::to_string(c));
  if (!m.allFinite()) throw Error(ErrorCode::InvalidArgument, std::string(what) + " is not finite");
}

Matrix safe_inverse(const Matrix& g) {
  if (g.size() == 0) return g;
  Eigen::JacobiSVD<Matrix> svd(g);
  const auto& sv = svd.singularValues();
  if (!(sv(sv.size() - 1) > 1e-14 * sv(0)))
    throw Error(ErrorCode::SingularGauge, "gauge block is numerically singular");
  return g.inverse();
}

template <class F>
QuiverRep map_blocks(const QuiverRep& rep, F&& f) {
  QuiverRep out;
  out.dims = rep.dims;
  for (const auto& m : rep.X) out.X.push_back(f(m));
  for (const auto& m : rep.Y) out.Y.push_back(f(m));
  out.x = f(rep.x);
  out.y = f(rep.y);
  return out;
}

Matrix random_unitary(int n, Rng& rng) {
  if (n == 0) return zeros(0, 0);
  const Matrix G = gaussian_complex(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(G);
  Matrix Q = qr.householderQ();
  for (int j = 0; j < n; ++j) {
    const cplx d = qr.matrixQR()(j, j);
    if (std::abs(d) > 0.0) Q.col(j) *= d / std::abs(d);
  }
  return Q;
}

}  // namespace

void DimensionVector::validate() const {
  if (v.size() != w.size() || v.empty())
    throw Error(ErrorCode::ShapeMismatch, "dimension vector: v and w must be non-empty, equal length");
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] < 0 || w[k] < 0) throw Error(ErrorCode::ShapeMismatch, "negative dimension");
    if (k > 0 && w[k] != 0)
      throw Error(ErrorCode::ShapeMismatch, "framing is supported at vertex 1 only");
  }
}

DimensionVector DimensionVector::chain(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "chain quiver needs n >= 1");
  DimensionVector d;
  for (int k = 0; k < n; ++k) {
    d.v.push_back(n - k);
    d.w.push_back(k == 0 ? n : 0);
  }
  return d;
}

QuiverRep QuiverRep::zero(const DimensionVector& dims) {
  dims.validate();
  QuiverRep r;
  r.dims = dims;
  const auto& v = dims.v;
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    r.X.push_back(zeros(v[k + 1], v[k]));
    r.Y.push_back(zeros(v[k], v[k + 1]));
  }
  r.x = zeros(v[0], dims.w[0]);
  r.y = zeros(dims.w[0], v[0]);
  return r;
}

void QuiverRep::validate() const {
  dims.validate();
  const auto& v = dims.v;
  if (X.size() + 1 != v.size() || Y.size() + 1 != v.size())
    throw Error(ErrorCode::ShapeMismatch, "arrow count does not match vertex count");
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    check_shape(X[k], v[k + 1], v[k], "X");
    check_shape(Y[k], v[k], v[k + 1], "Y");
  }
  check_shape(x, v[0], dims.w[0], "x");
  check_shape(y, dims.w[0], v[0], "y");
}

GaugeElement GaugeElement::identity(const DimensionVector& dims) {
  GaugeElement g;
  for (int d : dims.v) g.g.push_back(Matrix::Identity(d, d));
  return g;
}

GaugeElement GaugeElement::inverse() const {
  GaugeElement out;
  for (const auto& b : g) out.g.push_back(safe_inverse(b));
  return out;
}

bool Conventions::is_default() const {
  return kappa == cplx(0.0, 1.0) && framing_sign == 1.0 && bracket_sign == 1.0;
}

std::vector<Matrix> real_moment_hermitian(const QuiverRep& rep) {
  rep.validate();
  const auto& v = rep.dims.v;
  const std::size_t m = v.size();
  std::vector<Matrix> H;
  for (std::size_t k = 0; k < m; ++k) {
    Matrix h = zeros(v[k], v[k]);
    if (k == 0)
      h += rep.x * rep.x.adjoint() - rep.y.adjoint() * rep.y;
    else
      h += rep.X[k - 1] * rep.X[k - 1].adjoint() - rep.Y[k - 1].adjoint() * rep.Y[k - 1];
    if (k + 1 < m) h += rep.Y[k] * rep.Y[k].adjoint() - rep.X[k].adjoint() * rep.X[k];
    H.push_back(std::move(h));
  }
  return H;
}

std::vector<Matrix> mu_real(const QuiverRep& rep) {
  auto H = real_moment_hermitian(rep);
  for (auto& h : H) h *= 0.5 * kI;
  return H;
}

std::vector<Matrix> mu_complex(const QuiverRep& rep, const Conventions& conv) {
  rep.validate();
  const auto& v = rep.dims.v;
  const std::size_t m = v.size();
  std::vector<Matrix> C;
  for (std::size_t k = 0; k < m; ++k) {
    Matrix c = zeros(v[k], v[k]);
    if (k == 0)
      c += conv.framing_sign * (rep.x * rep.y);
    else
      c += conv.bracket_sign * (rep.X[k - 1] * rep.Y[k - 1]);
    if (k + 1 < m) c -= conv.bracket_sign * (rep.Y[k] * rep.X[k]);
    C.push_back(std::move(c));
  }
  return C;
}

MomentValue mu(const QuiverRep& rep, const Conventions& conv) {
  return {mu_real(rep), mu_complex(rep, conv)};
}

double moment_norm(const std::vector<Matrix>& blocks) {
  double s = 0.0;
  for (const auto& b : blocks) s += b.squaredNorm();
  return std::sqrt(s);
}

QuiverRep apply_I(const QuiverRep& rep) {
  return map_blocks(rep, [](const Matrix& m) -> Matrix { return kI * m; });
}

QuiverRep apply_J(const QuiverRep& rep) {
  QuiverRep out;
  out.dims = rep.dims;
  for (const auto& Y : rep.Y) out.X.push_back(-Y.adjoint());
  for (const auto& X : rep.X) out.Y.push_back(X.adjoint());
  out.x = -rep.y.adjoint();
  out.y = rep.x.adjoint();
  return out;
}

QuiverRep apply_K(const QuiverRep& rep) { return apply_I(apply_J(rep)); }

QuiverRep conj_rep(const QuiverRep& rep) {
  return map_blocks(rep, [](const Matrix& m) -> Matrix { return m.conjugate(); });
}

QuiverRep gauge_act(const QuiverRep& rep, const GaugeElement& g) {
  rep.validate();
  const auto& v = rep.dims.v;
  if (g.g.size() != v.size()) throw Error(ErrorCode::ShapeMismatch, "gauge vertex count");
  for (std::size_t k = 0; k < v.size(); ++k) check_shape(g.g[k], v[k], v[k], "gauge block");
  const GaugeElement gi = g.inverse();
  QuiverRep out;
  out.dims = rep.dims;
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    out.X.push_back(g.g[k + 1] * rep.X[k] * gi.g[k]);
    out.Y.push_back(g.g[k] * rep.Y[k] * gi.g[k + 1]);
  }
  out.x = g.g[0] * rep.x;
  out.y = rep.y * gi.g[0];
  return out;
}

QuiverRep glW_act(const QuiverRep& rep, const Matrix& gw) {
  rep.validate();
  check_shape(gw, rep.dims.w[0], rep.dims.w[0], "GL(W) element");
  QuiverRep out = rep;
  out.x = rep.x * safe_inverse(gw);
  out.y = gw * rep.y;
  return out;
}

double rep_norm(const QuiverRep& rep) {
  double s = rep.x.squaredNorm() + rep.y.squaredNorm();
  for (const auto& m : rep.X) s += m.squaredNorm();
  for (const auto& m : rep.Y) s += m.squaredNorm();
  return std::sqrt(s);
}

QuiverRep scale(const QuiverRep& rep, double t) {
  return map_blocks(rep, [t](const Matrix& m) -> Matrix { return t * m; });
}

QuiverRep add(const QuiverRep& a, const QuiverRep& b, cplx sb) {
  if (!(a.dims == b.dims)) throw Error(ErrorCode::ShapeMismatch, "add: dimension vectors differ");
  QuiverRep out = a;
  for (std::size_t k = 0; k < a.X.size(); ++k) {
    out.X[k] += sb * b.X[k];
    out.Y[k] += sb * b.Y[k];
  }
  out.x += sb * b.x;
  out.y += sb * b.y;
  return out;
}

double rep_distance(const QuiverRep& a, const QuiverRep& b) { return rep_norm(add(a, b, -1.0)); }

QuiverRep random_rep(const DimensionVector& dims, Rng& rng) {
  QuiverRep r = QuiverRep::zero(dims);
  return map_blocks(r, [&rng](const Matrix& m) -> Matrix {
    return gaussian_complex(static_cast<int>(m.rows()), static_cast<int>(m.cols()), rng);
  });
}

GaugeElement random_gauge(const DimensionVector& dims, Rng& rng, double spread) {
  GaugeElement g;
  for (int d : dims.v) g.g.push_back(expm(spread * gaussian_complex(d, d, rng)));
  return g;
}

GaugeElement random_unitary_gauge(const DimensionVector& dims, Rng& rng) {
  GaugeElement g;
  for (int d : dims.v) g.g.push_back(random_unitary(d, rng));
  return g;
}

}  // namespace hklab
