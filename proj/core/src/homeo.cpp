#include "hklab/homeo.hpp"

#include <algorithm>
#include <cmath>

namespace hklab {

namespace {

// alpha evaluations inside the march run with a tighter balance target than the fixed-point
// tolerance they are compared against.
Tolerances inner_tolerances(const Tolerances& tol) {
  Tolerances t = tol;
  t.residual = 1e-2 * tol.residual;
  return t;
}

double condition(const Matrix& g) {
  Eigen::JacobiSVD<Matrix> svd(g);
  const auto& sv = svd.singularValues();
  return sv(0) / sv(sv.size() - 1);
}

}  // namespace

Matrix solve_commutator(const Matrix& M, const Matrix& F, double rcond) {
  const Eigen::Index n = M.rows();
  const Matrix I = Matrix::Identity(n, n);
  // Column-major vec: vec(xi M) = (M^T kron I) vec(xi), vec(M xi) = (I kron M) vec(xi).
  Matrix A = Matrix::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      A.block(i * n, j * n, n, n) += M(j, i) * I;
      if (i == j) A.block(i * n, j * n, n, n) -= M;
    }
  const Eigen::VectorXcd rhs = Eigen::Map<const Eigen::VectorXcd>(F.data(), n * n);
  const Eigen::VectorXcd sol = lstsq(A, rhs, rcond);
  return Eigen::Map<const Matrix>(sol.data(), n, n);
}

CorrectorResult corrector_detailed(const Matrix& M, InvolutionParam a, const Tolerances& tol,
                                   int max_iter, const std::optional<JordanType>& known) {
  AlphaOptions opts;
  opts.known_type = known;
  const Tolerances inner = inner_tolerances(tol);
  const double target = tol.residual * (1.0 + frob(M));

  CorrectorResult out;
  out.M = M;
  out.similarity = Matrix::Identity(M.rows(), M.cols());
  Matrix A = alpha_gl(out.M, a, inner, opts);
  out.residual = (A - out.M).norm();
  if (!(out.residual <= 0.1 * (1.0 + frob(M))))
    throw Error(ErrorCode::InvalidArgument,
                "corrector input is too far from the fixed locus: " + std::to_string(out.residual));

  while (out.residual > target) {
    if (out.iterations >= max_iter)
      throw Error(ErrorCode::CorrectorStall,
                  "no convergence after " + std::to_string(max_iter) + " iterations, residual " +
                      std::to_string(out.residual));
    const Matrix xi = solve_commutator(out.M, 0.5 * (A - out.M));
    const Matrix S = expm(xi);
    const Matrix Si = expm(-xi);
    out.M = S * out.M * Si;
    out.similarity = S * out.similarity;
    ++out.iterations;
    A = alpha_gl(out.M, a, inner, opts);
    const double r = (A - out.M).norm();
    if (!(r < out.residual))
      throw Error(ErrorCode::CorrectorStall, "residual plateau at " + std::to_string(r));
    out.residual = r;
  }
  return out;
}

Matrix corrector(const Matrix& M, InvolutionParam a, const Tolerances& tol, int max_iter) {
  return corrector_detailed(M, a, tol, max_iter).M;
}

TracePath trace(const Matrix& M0, int steps, const Tolerances& tol) {
  tol.validate();
  if (steps < 1) throw Error(ErrorCode::InvalidArgument, "trace needs steps >= 1");
  if (M0.rows() != M0.cols()) throw Error(ErrorCode::NonSquare, "trace needs a square matrix");
  const Eigen::Index n = M0.rows();
  if (!(imag_residual(M0) <= tol.eig_real * (1.0 + frob(M0))))
    throw Error(ErrorCode::InvalidArgument, "trace source must have real entries");

  TracePath path;
  path.steps = steps;
  path.scale = frob(M0);
  path.source = M0.real().cast<cplx>();

  if (path.scale == 0.0) {
    path.jordan.blocks[0.0] = Partition(static_cast<std::size_t>(n), 1);
    for (int k = 0; k <= steps; ++k)
      path.samples.push_back({static_cast<double>(k) / steps, Matrix::Zero(n, n), 0.0, 0, 0.0});
    path.target = Matrix::Zero(n, n);
    path.complete = true;
    return path;
  }

  const Matrix base = path.source / path.scale;
  path.jordan = jordan_type(base, tol);
  const Tolerances inner = inner_tolerances(tol);
  AlphaOptions opts;
  opts.known_type = path.jordan;

  Matrix g = Matrix::Identity(n, n);
  auto current = [&](const Matrix& gg) -> Matrix { return gg * base * gg.inverse(); };

  // d/da of the fixed point is half the a-derivative of alpha at that point; it is lifted to
  // the similarity g so that every intermediate point stays on the source orbit.
  auto velocity = [&](double a, const Matrix& gg) -> Matrix {
    const Matrix M = current(gg);
    const Matrix F = 0.5 * alpha_gl_derivative(M, InvolutionParam(a), inner, opts);
    return solve_commutator(M, F) * gg;
  };

  auto record = [&](double a, const Matrix& M, double residual, int iters) {
    TraceSample s;
    s.a = a;
    s.M = path.scale * M;
    s.corrector_residual = residual;
    s.corrector_iterations = iters;
    s.spectral_drift = charpoly_drift(M, base);
    path.max_corrector_residual = std::max(path.max_corrector_residual, residual);
    path.max_spectral_drift = std::max(path.max_spectral_drift, s.spectral_drift);
    path.max_similarity_condition = std::max(path.max_similarity_condition, condition(g));
    path.samples.push_back(std::move(s));
  };

  {
    const CorrectorResult c0 = corrector_detailed(base, InvolutionParam(0.0), tol, 8, path.jordan);
    g = c0.similarity;
    record(0.0, c0.M, c0.residual, c0.iterations);
  }

  const double nominal = 1.0 / steps;
  const double floor = nominal / 64.0;
  double h = nominal;
  double a = 0.0;
  while (a < 1.0) {
    h = std::min(h, 1.0 - a);
    const double a1 = (1.0 - a - h) < 1e-14 ? 1.0 : a + h;
    bool ok = false;
    CorrectorResult corr;
    Matrix g_new;
    try {
      const Matrix k1 = velocity(a, g);
      const Matrix k2 = velocity(a + 0.5 * h, g + 0.5 * h * k1);
      const Matrix k3 = velocity(a + 0.5 * h, g + 0.5 * h * k2);
      const Matrix k4 = velocity(a1, g + h * k3);
      g_new = g + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      corr = corrector_detailed(current(g_new), InvolutionParam(a1), tol, 8, path.jordan);
      ok = true;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NotRealSpectrum || e.code() == ErrorCode::NonSquare) throw;
    }
    if (!ok) {
      h *= 0.5;
      ++path.halvings;
      if (h < floor * (1.0 - 1e-12)) {
        path.target = path.samples.back().M;
        throw StepFloorReachedError("step fell below 1/(64*steps) at a = " + std::to_string(a),
                                    std::move(path));
      }
      continue;
    }
    g = corr.similarity * g_new;
    a = a1;
    record(a, corr.M, corr.residual, corr.iterations);
    h = std::min(nominal, 2.0 * h);
  }

  path.target = path.samples.back().M;
  path.complete = true;
  return path;
}

KsEndpointReport verify_ks_endpoint(const TracePath& path, const Tolerances& tol) {
  KsEndpointReport r;
  r.source_imag = imag_residual(path.source);
  r.symmetry_residual = symmetry_residual(path.target);
  r.spectral_drift = charpoly_drift(path.target, path.source);
  r.source_type = jordan_type(path.source, tol);
  r.target_type = jordan_type(path.target, tol);
  r.jordan_equal = same_jordan_type(r.source_type, r.target_type);
  if (r.jordan_equal && r.source_type.is_nilpotent(tol.cluster * (1.0 + frob(path.source))))
    r.ks_label = r.source_type.blocks.begin()->second;
  return r;
}

}  // namespace hklab
