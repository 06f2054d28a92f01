#include "hklab/involution.hpp"

#include <cmath>
#include <numbers>

#include "hklab/errors.hpp"

namespace hklab {

namespace {

const cplx kI{0.0, 1.0};

bool needs_even(Family f) {
  return f == Family::sl_quaternionic || f == Family::so_star || f == Family::sp_split ||
         f == Family::sp_pq;
}

bool has_signature(Family f) {
  return f == Family::su_pq || f == Family::so_pq || f == Family::sp_pq;
}

enum class Algebra { gl, sl, so, sp };

Algebra complex_algebra(Family f) {
  switch (f) {
    case Family::gl_split:
    case Family::gl_complex: return Algebra::gl;
    case Family::sl_split:
    case Family::sl_quaternionic:
    case Family::su_pq:
    case Family::sl_complex: return Algebra::sl;
    case Family::so_pq:
    case Family::so_star: return Algebra::so;
    case Family::sp_split:
    case Family::sp_pq: return Algebra::sp;
  }
  return Algebra::gl;
}

Matrix k_matrix(int p, int m) {
  const Matrix Ip = signature_matrix(p, m - p);
  Matrix K = Matrix::Zero(2 * m, 2 * m);
  K.topLeftCorner(m, m) = Ip;
  K.bottomRightCorner(m, m) = Ip;
  return K;
}

}  // namespace

InvolutionParam::InvolutionParam(double a_value) : a(a_value) {
  if (!(a >= 0.0 && a <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "involution parameter a must lie in [0, 1]");
}

double InvolutionParam::angle() const { return a * std::numbers::pi / 2.0; }

std::string_view to_string(Family f) {
  switch (f) {
    case Family::gl_split: return "gl_split";
    case Family::sl_split: return "sl_split";
    case Family::sl_quaternionic: return "sl_quaternionic";
    case Family::su_pq: return "su_pq";
    case Family::so_pq: return "so_pq";
    case Family::so_star: return "so_star";
    case Family::sp_split: return "sp_split";
    case Family::sp_pq: return "sp_pq";
    case Family::gl_complex: return "gl_complex";
    case Family::sl_complex: return "sl_complex";
  }
  return "unknown";
}

Family family_from_string(std::string_view s) {
  for (Family f : {Family::gl_split, Family::sl_split, Family::sl_quaternionic, Family::su_pq,
                   Family::so_pq, Family::so_star, Family::sp_split, Family::sp_pq,
                   Family::gl_complex, Family::sl_complex})
    if (to_string(f) == s) return f;
  if (s == "gl") return Family::gl_split;
  if (s == "sl") return Family::sl_split;
  throw Error(ErrorCode::InvalidArgument, "unknown real form family '" + std::string(s) + "'");
}

void RealFormSpec::validate() const {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "real form needs n >= 1");
  if (needs_even(family) && n % 2 != 0)
    throw Error(ErrorCode::InvalidArgument, std::string(to_string(family)) + " needs even n");
  if (has_signature(family)) {
    const int cap = family == Family::sp_pq ? n / 2 : n;
    if (p < 0 || p > cap) throw Error(ErrorCode::InvalidArgument, "signature p out of range");
  }
}

Matrix symplectic_form(int m) {
  Matrix S = Matrix::Zero(2 * m, 2 * m);
  S.topRightCorner(m, m) = -Matrix::Identity(m, m);
  S.bottomLeftCorner(m, m) = Matrix::Identity(m, m);
  return S;
}

Matrix signature_matrix(int p, int q) {
  Matrix D = Matrix::Zero(p + q, p + q);
  for (int i = 0; i < p + q; ++i) D(i, i) = i < p ? 1.0 : -1.0;
  return D;
}

QuiverRep rotate_rep(const QuiverRep& rep, double s) {
  const double c = std::cos(s);
  const double sn = std::sin(s);
  QuiverRep out;
  out.dims = rep.dims;
  for (std::size_t k = 0; k < rep.X.size(); ++k) {
    out.X.push_back(kI * (c * rep.X[k].conjugate() - sn * rep.Y[k].transpose()));
    out.Y.push_back(kI * (c * rep.Y[k].conjugate() + sn * rep.X[k].transpose()));
  }
  out.x = kI * (c * rep.x.conjugate() - sn * rep.y.transpose());
  out.y = kI * (c * rep.y.conjugate() + sn * rep.x.transpose());
  return out;
}

AlphaResult alpha_gl_detailed(const Matrix& M, InvolutionParam a, const Tolerances& tol,
                              const AlphaOptions& opts) {
  EncodeOptions eo;
  eo.cluster_order = opts.cluster_order;
  eo.known_type = opts.known_type;
  eo.conv = opts.conv;
  AlphaResult out;
  out.point = encode_balanced(M, tol, eo, opts.max_iter, opts.method);
  if (!out.point.balance.converged)
    throw Error(ErrorCode::BalanceFailure,
                "balance ended " + std::string(to_string(out.point.balance.status)) +
                    " at residual " + std::to_string(out.point.balance.final_residual));
  out.rotated = rotate_rep(out.point.rep, a.angle());
  out.value = decode(out.rotated, opts.conv);
  return out;
}

Matrix alpha_gl(const Matrix& M, InvolutionParam a, const Tolerances& tol, const AlphaOptions& opts) {
  return alpha_gl_detailed(M, a, tol, opts).value;
}

Matrix alpha_gl_derivative(const Matrix& M, InvolutionParam a, const Tolerances& tol,
                           const AlphaOptions& opts) {
  const AlphaResult r = alpha_gl_detailed(M, a, tol, opts);
  const QuiverRep& rep = r.point.rep;
  const double s = a.angle();
  const double c = std::cos(s);
  const double sn = std::sin(s);
  const Matrix xs = kI * (c * rep.x.conjugate() - sn * rep.y.transpose());
  const Matrix ys = kI * (c * rep.y.conjugate() + sn * rep.x.transpose());
  const Matrix dx = kI * (-sn * rep.x.conjugate() - c * rep.y.transpose());
  const Matrix dy = kI * (-sn * rep.y.conjugate() + c * rep.x.transpose());
  return opts.conv.kappa * (dy * xs + ys * dx) * (std::numbers::pi / 2.0);
}

Matrix alpha_closed_form(const QuiverRep& balanced, InvolutionParam a) {
  const double s = a.angle();
  const double c = std::cos(s);
  const double sn = std::sin(s);
  const Matrix M = kKappa * (balanced.y * balanced.x);
  const Matrix D = balanced.y * balanced.y.adjoint() - balanced.x.adjoint() * balanced.x;
  return c * c * M.conjugate() + sn * sn * M.transpose() + kI * c * sn * D.conjugate();
}

Matrix beta_gl(const Matrix& M) { return -M.transpose(); }

double membership_residual(const RealFormSpec& form, const Matrix& M) {
  switch (complex_algebra(form.family)) {
    case Algebra::gl: return 0.0;
    case Algebra::sl: return std::abs(M.trace());
    case Algebra::so: return (M.transpose() + M).norm();
    case Algebra::sp: {
      const Matrix S = symplectic_form(form.n / 2);
      return (M.transpose() * S + S * M).norm();
    }
  }
  return 0.0;
}

namespace {

void check_member(const RealFormSpec& form, const Matrix& M, const Tolerances& tol) {
  form.validate();
  if (M.rows() != M.cols()) throw Error(ErrorCode::NonSquare, "real form input must be square");
  if (M.rows() != form.n) throw Error(ErrorCode::SizeMismatch, "matrix size differs from form n");
  const double r = membership_residual(form, M);
  if (!(r <= tol.eig_real * (1.0 + frob(M))))
    throw Error(ErrorCode::WrongAlgebra, std::string(to_string(form.family)) +
                                             " membership residual " + std::to_string(r));
}

}  // namespace

Matrix theta_form(const RealFormSpec& form, const Matrix& M, const Tolerances& tol) {
  check_member(form, M, tol);
  const int n = form.n;
  switch (form.family) {
    case Family::gl_split:
    case Family::sl_split: return -M.transpose();
    case Family::sl_quaternionic: {
      const Matrix S = symplectic_form(n / 2);
      return -S * M.transpose() * S.inverse();
    }
    case Family::su_pq:
    case Family::so_pq: {
      const Matrix D = signature_matrix(form.p, n - form.p);
      return D * M * D;
    }
    case Family::so_star:
    case Family::sp_split: {
      const Matrix S = symplectic_form(n / 2);
      return S * M * S.inverse();
    }
    case Family::sp_pq: {
      const Matrix K = k_matrix(form.p, n / 2);
      return K * M * K;
    }
    case Family::gl_complex:
    case Family::sl_complex: break;
  }
  throw Error(ErrorCode::UnsupportedForm,
              std::string(to_string(form.family)) + " has no tabulated Cartan involution here");
}

Matrix eta_form(const RealFormSpec& form, const Matrix& M) {
  form.validate();
  const int n = form.n;
  switch (form.family) {
    case Family::gl_split:
    case Family::sl_split:
    case Family::sp_split: return M.conjugate();
    case Family::sl_quaternionic:
    case Family::so_star: {
      const Matrix S = symplectic_form(n / 2);
      return S * M.conjugate() * S.inverse();
    }
    case Family::su_pq: {
      const Matrix D = signature_matrix(form.p, n - form.p);
      return -D * M.adjoint() * D;
    }
    case Family::so_pq: {
      const Matrix D = signature_matrix(form.p, n - form.p);
      return D * M.conjugate() * D;
    }
    case Family::sp_pq: {
      const Matrix K = k_matrix(form.p, n / 2);
      return -K * M.adjoint() * K;
    }
    case Family::gl_complex:
    case Family::sl_complex: break;
  }
  throw Error(ErrorCode::UnsupportedForm,
              std::string(to_string(form.family)) + " has no tabulated conjugation here");
}

Matrix alpha_classical(const RealFormSpec& form, const Matrix& M, InvolutionParam a,
                       const Tolerances& tol, const AlphaOptions& opts) {
  return alpha_gl(beta_gl(theta_form(form, M, tol)), a, tol, opts);
}

EquivarianceReport equivariance_suite(const Matrix& M, InvolutionParam a, int trials,
                                      std::uint64_t seed, const Tolerances& tol) {
  EquivarianceReport rep;
  rep.trials = trials;
  const int n = static_cast<int>(M.rows());
  const Matrix base = alpha_gl(M, a, tol);

  rep.involutivity = (alpha_gl(base, a, tol) - M).norm();
  rep.charpoly = charpoly_drift(base, M);
  rep.beta = (alpha_gl(beta_gl(M), a, tol) - beta_gl(base)).norm();

  Rng rng(mix_seed(seed, 0x5ca1e));
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    const Matrix k = random_orthogonal(n, mix_seed(seed, static_cast<std::uint64_t>(t))).cast<cplx>();
    const Matrix kt = k.transpose();
    rep.orthogonal = std::max(rep.orthogonal, (alpha_gl(k * M * kt, a, tol) - k * base * kt).norm());

    // R^x acts on matrices through t^2: the quiver scaling by t multiplies y*x by t^2.
    const double u = ud(rng);
    const double tt = (ud(rng) < 0.0 ? -1.0 : 1.0) * std::exp(u);
    const double t2 = tt * tt;
    rep.scaling = std::max(rep.scaling, (alpha_gl(t2 * M, a, tol) - t2 * base).norm());
  }
  return rep;
}

}  // namespace hklab
