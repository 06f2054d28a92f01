#include "hklab/mv_bridge.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hklab/errors.hpp"

namespace hklab {

std::string_view to_string(BalanceMethod m) {
  return m == BalanceMethod::newton ? "newton" : "gradient";
}

std::string_view to_string(BalanceStatus s) {
  switch (s) {
    case BalanceStatus::converged: return "converged";
    case BalanceStatus::max_iter_exceeded: return "max_iter_exceeded";
    case BalanceStatus::stalled: return "stalled";
  }
  return "unknown";
}

namespace {

// Q(a, b)_k = a.X_{k-1} b.X_{k-1}^+ - a.Y_{k-1}^+ b.Y_{k-1} + a.Y_k b.Y_k^+ - a.X_k^+ b.X_k,
// so that H(rep) = Q(rep, rep).
std::vector<Matrix> moment_form(const QuiverRep& a, const QuiverRep& b) {
  const auto& v = a.dims.v;
  const std::size_t m = v.size();
  std::vector<Matrix> H;
  H.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    Matrix h = Matrix::Zero(v[k], v[k]);
    if (k == 0)
      h += a.x * b.x.adjoint() - a.y.adjoint() * b.y;
    else
      h += a.X[k - 1] * b.X[k - 1].adjoint() - a.Y[k - 1].adjoint() * b.Y[k - 1];
    if (k + 1 < m) h += a.Y[k] * b.Y[k].adjoint() - a.X[k].adjoint() * b.X[k];
    H.push_back(std::move(h));
  }
  return H;
}

// Infinitesimal action of a hermitian gauge direction xi.
QuiverRep gauge_tangent(const QuiverRep& rep, const std::vector<Matrix>& xi) {
  QuiverRep d;
  d.dims = rep.dims;
  for (std::size_t k = 0; k < rep.X.size(); ++k) {
    d.X.push_back(xi[k + 1] * rep.X[k] - rep.X[k] * xi[k]);
    d.Y.push_back(xi[k] * rep.Y[k] - rep.Y[k] * xi[k + 1]);
  }
  d.x = xi[0] * rep.x;
  d.y = -rep.y * xi[0];
  return d;
}

// Orthonormal basis of hermitian matrices under Re tr(A B^+).
struct HermCoord {
  int vertex;
  int i;
  int j;
  int kind;  // 0 diagonal, 1 symmetric, 2 antisymmetric imaginary
};

std::vector<HermCoord> herm_basis(const DimensionVector& dims) {
  std::vector<HermCoord> basis;
  for (int k = 0; k < dims.vertices(); ++k) {
    const int d = dims.v[k];
    for (int i = 0; i < d; ++i) {
      basis.push_back({k, i, i, 0});
      for (int j = i + 1; j < d; ++j) {
        basis.push_back({k, i, j, 1});
        basis.push_back({k, i, j, 2});
      }
    }
  }
  return basis;
}

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void add_basis_element(Matrix& m, const HermCoord& b, double coef) {
  switch (b.kind) {
    case 0:
      m(b.i, b.i) += coef;
      break;
    case 1:
      m(b.i, b.j) += coef * kInvSqrt2;
      m(b.j, b.i) += coef * kInvSqrt2;
      break;
    default:
      m(b.i, b.j) += cplx(0.0, coef * kInvSqrt2);
      m(b.j, b.i) += cplx(0.0, -coef * kInvSqrt2);
      break;
  }
}

double basis_coordinate(const Matrix& h, const HermCoord& b) {
  switch (b.kind) {
    case 0: return h(b.i, b.i).real();
    case 1: return (h(b.i, b.j).real() + h(b.j, b.i).real()) * kInvSqrt2;
    default: return (h(b.i, b.j).imag() - h(b.j, b.i).imag()) * kInvSqrt2;
  }
}

Eigen::VectorXd coordinates(const std::vector<Matrix>& H, const std::vector<HermCoord>& basis) {
  Eigen::VectorXd c(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t a = 0; a < basis.size(); ++a)
    c(static_cast<Eigen::Index>(a)) = basis_coordinate(H[basis[a].vertex], basis[a]);
  return c;
}

std::vector<Matrix> zero_blocks(const DimensionVector& dims) {
  std::vector<Matrix> z;
  for (int d : dims.v) z.push_back(Matrix::Zero(d, d));
  return z;
}

std::vector<Matrix> newton_direction(const QuiverRep& rep, const std::vector<Matrix>& H,
                                     const std::vector<HermCoord>& basis) {
  const auto D = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd L(D, D);
  for (Eigen::Index a = 0; a < D; ++a) {
    auto xi = zero_blocks(rep.dims);
    add_basis_element(xi[basis[a].vertex], basis[a], 1.0);
    const QuiverRep d = gauge_tangent(rep, xi);
    auto dH = moment_form(d, rep);
    const auto dH2 = moment_form(rep, d);
    for (std::size_t k = 0; k < dH.size(); ++k) dH[k] += dH2[k];
    L.col(a) = coordinates(dH, basis);
  }
  const Eigen::VectorXd rhs = -coordinates(H, basis);
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
  cod.setThreshold(1e-12);
  cod.compute(L);
  const Eigen::VectorXd sol = cod.solve(rhs);
  auto xi = zero_blocks(rep.dims);
  for (Eigen::Index a = 0; a < D; ++a) add_basis_element(xi[basis[a].vertex], basis[a], sol(a));
  return xi;
}

QuiverRep hermitian_step(const QuiverRep& rep, const std::vector<Matrix>& xi, double t) {
  GaugeElement g;
  for (const auto& b : xi) g.g.push_back(expm_hermitian(b, t));
  return gauge_act(rep, g);
}

double squared(const std::vector<Matrix>& H) {
  double s = 0.0;
  for (const auto& h : H) s += h.squaredNorm();
  return s;
}

}  // namespace

std::pair<QuiverRep, BalanceReport> balance(const QuiverRep& rep, const Tolerances& tol,
                                            int max_iter, BalanceMethod method) {
  tol.validate();
  rep.validate();
  BalanceReport report;
  report.method = method;

  QuiverRep cur = rep;
  auto H = real_moment_hermitian(cur);
  double f = squared(H);
  report.initial_residual = 0.5 * std::sqrt(f);
  report.final_residual = report.initial_residual;
  if (report.final_residual <= tol.residual) {
    report.converged = true;
    return {cur, report};
  }

  const auto basis = herm_basis(cur.dims);
  const double rn = rep_norm(cur);
  double eps = 0.1 / (1.0 + rn * rn);
  constexpr double kArmijo = 1e-4;
  constexpr double kMinStep = 1e-12;

  report.status = BalanceStatus::max_iter_exceeded;
  while (report.iterations < max_iter) {
    std::vector<Matrix> xi;
    double t;
    if (method == BalanceMethod::newton) {
      xi = newton_direction(cur, H, basis);
      t = 1.0;
    } else {
      for (const auto& h : H) xi.push_back(-h);
      t = eps;
    }

    bool accepted = false;
    QuiverRep trial;
    std::vector<Matrix> trial_H;
    double trial_f = f;
    while (t >= kMinStep * (method == BalanceMethod::newton ? 1.0 : eps)) {
      trial = hermitian_step(cur, xi, t);
      trial_H = real_moment_hermitian(trial);
      trial_f = squared(trial_H);
      const double factor = method == BalanceMethod::newton ? (1.0 - 2.0 * kArmijo * t) : (1.0 - kArmijo);
      if (std::isfinite(trial_f) && trial_f <= factor * f) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      report.status = BalanceStatus::stalled;
      break;
    }
    if (method == BalanceMethod::gradient) eps = 1.5 * t;

    cur = std::move(trial);
    H = std::move(trial_H);
    f = trial_f;
    ++report.iterations;
    report.final_residual = 0.5 * std::sqrt(f);
    report.step_history.push_back({t, report.final_residual});
    if (report.final_residual <= tol.residual) {
      report.status = BalanceStatus::converged;
      break;
    }
  }
  report.converged = report.status == BalanceStatus::converged;
  return {cur, report};
}

std::vector<int> default_cluster_order(const SpectralData& zeta, double zero_tol) {
  std::vector<int> order(zeta.values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const bool za = std::abs(zeta.values[a]) <= zero_tol;
    const bool zb = std::abs(zeta.values[b]) <= zero_tol;
    if (za != zb) return za;
    return zeta.values[a] > zeta.values[b];
  });
  return order;
}

SpectralLevel spectral_level(const SpectralData& zeta, const DimensionVector& dims,
                             const std::vector<int>& cluster_order) {
  const int n = zeta.size();
  if (dims.vertices() != n) throw Error(ErrorCode::SizeMismatch, "spectral level: vertex count != n");
  std::vector<int> seen(zeta.values.size(), 0);
  if (cluster_order.size() != zeta.values.size())
    throw Error(ErrorCode::UnsupportedOrdering, "cluster order must list every cluster once");
  for (int c : cluster_order) {
    if (c < 0 || c >= static_cast<int>(seen.size()) || seen[c]++)
      throw Error(ErrorCode::UnsupportedOrdering, "cluster order is not a permutation");
  }

  SpectralLevel lv;
  for (int c : cluster_order)
    for (int j = 0; j < zeta.multiplicities[c]; ++j) {
      lv.ordered.push_back(zeta.values[c]);
      lv.cluster_of.push_back(c);
    }
  cplx prev = 0.0;
  for (int k = 0; k < n; ++k) {
    const cplx ck = -lv.ordered[k] / kKappa;
    lv.zeta.push_back(ck - prev);
    prev = ck;
    lv.targets.push_back(-lv.zeta.back() * Matrix::Identity(dims.v[k], dims.v[k]));
  }
  return lv;
}

double level_residual(const QuiverRep& rep, const SpectralLevel& level, const Conventions& conv) {
  const auto C = mu_complex(rep, conv);
  double s = 0.0;
  for (std::size_t k = 0; k < C.size(); ++k) s += (C[k] - level.targets[k]).squaredNorm();
  return std::sqrt(s);
}

Matrix decode(const QuiverRep& rep, const Conventions& conv) {
  rep.validate();
  return conv.kappa * (rep.y * rep.x);
}

EncodedPoint encode(const Matrix& M, const Tolerances& tol, const EncodeOptions& opts) {
  tol.validate();
  if (M.rows() != M.cols()) throw Error(ErrorCode::NonSquare, "encode needs a square matrix");
  const int n = static_cast<int>(M.rows());
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "encode needs n >= 1");

  EncodedPoint ep;
  if (opts.known_type) {
    if (opts.known_type->size() != n)
      throw Error(ErrorCode::SizeMismatch, "known Jordan type has the wrong size");
    ep.jordan = *opts.known_type;
  } else {
    ep.jordan = jordan_type(M, tol);
  }
  ep.zeta = ep.jordan.spectrum();
  const double scale = 1.0 + frob(M);
  const double zero_tol = tol.cluster * scale;
  ep.cluster_order = opts.cluster_order.empty() ? default_cluster_order(ep.zeta, zero_tol)
                                                 : opts.cluster_order;

  const auto dims = DimensionVector::chain(n);
  ep.level = spectral_level(ep.zeta, dims, ep.cluster_order);

  int zero_cluster = -1;
  for (std::size_t c = 0; c < ep.zeta.values.size(); ++c)
    if (std::abs(ep.zeta.values[c]) <= zero_tol) zero_cluster = static_cast<int>(c);
  if (zero_cluster >= 0 && ep.cluster_order.front() != zero_cluster)
    throw Error(ErrorCode::UnsupportedOrdering, "the zero eigenvalue cluster must come first");

  // V_k = image of N * prod_{j<k} (N + c_j), N = y*x. The chain of images carries the whole
  // representation: X_k is N + c_k restricted to V_k, Y_k the inclusion V_{k+1} -> V_k.
  const Matrix N = M / kKappa;
  const Matrix I = Matrix::Identity(n, n);
  std::vector<cplx> c(n);
  for (int k = 0; k < n; ++k) c[k] = -ep.level.ordered[k] / kKappa;

  std::vector<int> kills(ep.zeta.values.size(), 0);
  if (zero_cluster >= 0) kills[zero_cluster] = 1;
  auto expected_rank = [&]() {
    int r = n;
    std::size_t idx = 0;
    for (const auto& [center, parts] : ep.jordan.blocks) {
      for (int p : parts) r -= std::min(p, kills[idx]);
      ++idx;
    }
    return r;
  };

  std::vector<Matrix> Q;
  Matrix image = N;
  for (int k = 0; k < n; ++k) {
    if (k > 0) {
      ++kills[ep.level.cluster_of[k - 1]];
      image = (N + c[k - 1] * I) * Q.back();
    }
    const int r = expected_rank();
    if (r > dims.v[k] || r < 0)
      throw Error(ErrorCode::TemplateResidual, "image rank exceeds the vertex dimension");
    if (r == 0 || image.cols() == 0) {
      Q.push_back(Matrix::Zero(n, 0));
      continue;
    }
    Eigen::JacobiSVD<Matrix> svd(image, Eigen::ComputeThinU);
    if (svd.matrixU().cols() < r)
      throw Error(ErrorCode::TemplateResidual, "image has fewer directions than its expected rank");
    Q.push_back(svd.matrixU().leftCols(r));
  }

  QuiverRep rep = QuiverRep::zero(dims);
  const auto r0 = Q[0].cols();
  rep.x.topRows(r0) = Q[0].adjoint() * N;
  rep.y.leftCols(r0) = Q[0];
  for (int k = 0; k + 1 < n; ++k) {
    const auto rk = Q[k].cols();
    const auto rk1 = Q[k + 1].cols();
    rep.X[k].topLeftCorner(rk1, rk) = Q[k + 1].adjoint() * (N + c[k] * I) * Q[k];
    rep.Y[k].topLeftCorner(rk, rk1) = Q[k].adjoint() * Q[k + 1];
  }

  ep.level_residual = level_residual(rep, ep.level, opts.conv);
  if (!(ep.level_residual <= tol.residual * scale))
    throw Error(ErrorCode::TemplateResidual,
                "complex moment map misses its level by " + std::to_string(ep.level_residual));
  ep.decode_residual = frob(kKappa * (rep.y * rep.x) - M);
  ep.rep = std::move(rep);

  ep.balance.initial_residual = moment_norm(mu_real(ep.rep));
  ep.balance.final_residual = ep.balance.initial_residual;
  ep.balance.converged = ep.balance.final_residual <= tol.residual;
  ep.balance.status = ep.balance.converged ? BalanceStatus::converged : BalanceStatus::max_iter_exceeded;
  return ep;
}

EncodedPoint encode_balanced(const Matrix& M, const Tolerances& tol, const EncodeOptions& opts,
                             int max_iter, BalanceMethod method) {
  EncodedPoint ep = encode(M, tol, opts);
  auto [rep, report] = balance(ep.rep, tol, max_iter, method);
  ep.rep = std::move(rep);
  ep.balance = std::move(report);
  return ep;
}

}  // namespace hklab
