#include "hklab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <unsupported/Eigen/MatrixFunctions>

#include "hklab/errors.hpp"

namespace hklab {

void Tolerances::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(rank_rel) || !positive(eig_real) || !positive(cluster) || !positive(residual) ||
      rank_rel >= 1.0)
    throw Error(ErrorCode::InvalidArgument, "tolerances must be positive with rank_rel < 1");
}

int SpectralData::size() const {
  return std::accumulate(multiplicities.begin(), multiplicities.end(), 0);
}

int JordanType::size() const {
  int n = 0;
  for (const auto& [center, parts] : blocks) n += partition_size(parts);
  return n;
}

SpectralData JordanType::spectrum() const {
  SpectralData s;
  for (const auto& [center, parts] : blocks) {
    s.values.push_back(center);
    s.multiplicities.push_back(partition_size(parts));
  }
  return s;
}

bool JordanType::is_nilpotent(double center_tol) const {
  return blocks.size() == 1 && std::abs(blocks.begin()->first) <= center_tol;
}

bool same_jordan_type(const JordanType& lhs, const JordanType& rhs, double center_tol) {
  if (lhs.blocks.size() != rhs.blocks.size()) return false;
  auto it = rhs.blocks.begin();
  for (const auto& [center, parts] : lhs.blocks) {
    if (std::abs(center - it->first) > center_tol * (1.0 + std::abs(center))) return false;
    if (parts != it->second) return false;
    ++it;
  }
  return true;
}

namespace {

void require_square(const Matrix& M) {
  if (M.rows() != M.cols())
    throw Error(ErrorCode::NonSquare, "matrix is " + std::to_string(M.rows()) + "x" +
                                          std::to_string(M.cols()));
  if (!M.allFinite()) throw Error(ErrorCode::InvalidArgument, "matrix has non-finite entries");
}

struct Cluster {
  std::vector<cplx> members;
  cplx mean() const {
    cplx s = 0.0;
    for (const auto& z : members) s += z;
    return s / static_cast<double>(members.size());
  }
};

// A defective eigenvalue of multiplicity m splits by ~eps^(1/m). With eps = 100 c^2 (two decades
// above the pipeline accuracy implied by c) the admissible diameter is (100 c^2)^(1/m), never
// below c.
double diameter_bound(std::size_t m, double c, double scale) {
  if (m <= 1) return 0.0;
  return scale * std::max(c, std::pow(100.0 * c * c, 1.0 / static_cast<double>(m)));
}

double diameter(const std::vector<cplx>& pts) {
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, std::abs(pts[i] - pts[j]));
  return d;
}

std::vector<std::vector<cplx>> single_link(const std::vector<cplx>& pts, double radius) {
  const std::size_t m = pts.size();
  std::vector<int> comp(m, -1);
  int next = 0;
  for (std::size_t s = 0; s < m; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<std::size_t> stack{s};
    comp[s] = next;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < m; ++j)
        if (comp[j] < 0 && std::abs(pts[i] - pts[j]) <= radius) {
          comp[j] = next;
          stack.push_back(j);
        }
    }
    ++next;
  }
  std::vector<std::vector<cplx>> out(static_cast<std::size_t>(next));
  for (std::size_t i = 0; i < m; ++i) out[static_cast<std::size_t>(comp[i])].push_back(pts[i]);
  return out;
}

// Divisive: a group is one cluster when its diameter fits the bound for its size; otherwise it
// is split by single linkage at the bound of the next smaller size, tightening until it breaks.
void split_group(const std::vector<cplx>& pts, double c, double scale, std::vector<Cluster>& out) {
  if (pts.size() <= 1 || diameter(pts) <= diameter_bound(pts.size(), c, scale)) {
    out.push_back({pts});
    return;
  }
  for (std::size_t k = pts.size() - 1; k >= 1; --k) {
    auto parts = single_link(pts, diameter_bound(k, c, scale));
    if (parts.size() > 1) {
      for (const auto& part : parts) split_group(part, c, scale, out);
      return;
    }
  }
}

std::vector<Cluster> cluster_eigenvalues(const Eigen::VectorXcd& ev, double c, double scale) {
  std::vector<cplx> pts(ev.data(), ev.data() + ev.size());
  std::vector<Cluster> clusters;
  split_group(pts, c, scale, clusters);
  return clusters;
}

struct RealCluster {
  double center;
  int multiplicity;
};

std::vector<RealCluster> real_clusters(const Matrix& M, const Tolerances& tol) {
  tol.validate();
  require_square(M);
  const Eigen::Index n = M.rows();
  if (n == 0) return {};
  const double scale = 1.0 + frob(M);
  Eigen::ComplexEigenSolver<Matrix> es(M, false);
  if (es.info() != Eigen::Success)
    throw Error(ErrorCode::InvalidArgument, "eigenvalue iteration did not converge");

  auto clusters = cluster_eigenvalues(es.eigenvalues(), tol.cluster, scale);
  std::vector<RealCluster> out;
  for (const auto& cl : clusters) {
    const cplx mu = cl.mean();
    const double member_bound =
        std::max(tol.eig_real * scale, diameter_bound(cl.members.size(), tol.cluster, scale));
    bool real = std::abs(mu.imag()) <= tol.eig_real * scale;
    for (const auto& z : cl.members) real = real && std::abs(z.imag()) <= member_bound;
    if (!real)
      throw Error(ErrorCode::NotRealSpectrum,
                  "eigenvalue cluster at " + std::to_string(mu.real()) + (mu.imag() < 0 ? "" : "+") +
                      std::to_string(mu.imag()) + "i");
    out.push_back({mu.real(), static_cast<int>(cl.members.size())});
  }
  std::sort(out.begin(), out.end(),
            [](const RealCluster& a, const RealCluster& b) { return a.center < b.center; });
  return out;
}

}  // namespace

SpectralData eig_real_check(const Matrix& M, const Tolerances& tol) {
  SpectralData s;
  for (const auto& c : real_clusters(M, tol)) {
    s.values.push_back(c.center);
    s.multiplicities.push_back(c.multiplicity);
  }
  return s;
}

JordanAnalysis analyze_jordan(const Matrix& M, const Tolerances& tol) {
  const auto clusters = real_clusters(M, tol);
  const Eigen::Index n = M.rows();
  const double m_norm = n == 0 ? 0.0 : M.operatorNorm();
  JordanAnalysis out;
  for (const auto& cl : clusters) {
    const Matrix A = M - cl.center * Matrix::Identity(n, n);
    const double a_norm = std::max(A.operatorNorm(), m_norm);
    ClusterRanks cr;
    cr.center = cl.center;
    cr.multiplicity = cl.multiplicity;
    cr.worst_gap = std::numeric_limits<double>::infinity();
    Matrix power = Matrix::Identity(n, n);
    for (int k = 1; k <= cl.multiplicity; ++k) {
      power = power * A;
      // Scale by max(||A||, ||M||)^k rather than sigma_max(A^k): a numerically zero power must
      // stay rank 0, and rounding noise of size eps * ||M|| must sit far below the cutoff.
      const double cutoff = tol.rank_rel * std::pow(a_norm, k);
      Eigen::JacobiSVD<Matrix> svd(power);
      const auto& sv = svd.singularValues();
      int r = 0;
      for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > cutoff && sv(i) > 0.0) ++r;
        if (cutoff > 0.0 && sv(i) > 0.0) {
          const double decades = std::abs(std::log10(sv(i) / cutoff));
          cr.worst_gap = std::min(cr.worst_gap, decades);
          if (decades < 1.0)
            throw Error(ErrorCode::RankAmbiguous,
                        "singular value " + std::to_string(sv(i)) + " within a factor 10 of cutoff " +
                            std::to_string(cutoff) + " at eigenvalue " + std::to_string(cl.center));
        }
      }
      cr.ranks.push_back(r);
    }
    if (cr.ranks.back() != n - cl.multiplicity)
      throw Error(ErrorCode::RankAmbiguous,
                  "rank sequence at eigenvalue " + std::to_string(cl.center) +
                      " does not stabilise at n - multiplicity");

    // Number of blocks of size >= k is r_{k-1} - r_k.
    std::vector<int> at_least(cl.multiplicity + 2, 0);
    int prev = static_cast<int>(n);
    for (int k = 1; k <= cl.multiplicity; ++k) {
      at_least[k] = prev - cr.ranks[k - 1];
      prev = cr.ranks[k - 1];
    }
    Partition parts;
    for (int k = cl.multiplicity; k >= 1; --k) {
      const int exact = at_least[k] - at_least[k + 1];
      if (exact < 0)
        throw Error(ErrorCode::RankAmbiguous,
                    "rank sequence is not concave at eigenvalue " + std::to_string(cl.center));
      for (int j = 0; j < exact; ++j) parts.push_back(k);
    }
    if (partition_size(parts) != cl.multiplicity)
      throw Error(ErrorCode::RankAmbiguous,
                  "partition size disagrees with multiplicity at " + std::to_string(cl.center));
    out.type.blocks[cl.center] = parts;
    out.clusters.push_back(std::move(cr));
  }
  return out;
}

JordanType jordan_type(const Matrix& M, const Tolerances& tol) { return analyze_jordan(M, tol).type; }

int rank_tol(const Matrix& M, const Tolerances& tol) {
  if (M.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(M);
  const auto& sv = svd.singularValues();
  const double cutoff = tol.rank_rel * sv(0);
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff && sv(i) > 0.0) ++r;
  return r;
}

RealMatrix random_orthogonal(int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "random_orthogonal needs n >= 1");
  Rng rng(seed);
  const RealMatrix G = gaussian_real(n, n, rng);
  Eigen::HouseholderQR<RealMatrix> qr(G);
  RealMatrix Q = qr.householderQ();
  const RealMatrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (R(j, j) < 0.0) Q.col(j) *= -1.0;
  return Q;
}

RealMatrix random_conditioned(int n, std::uint64_t seed, double cond_max) {
  if (!(cond_max >= 1.0)) throw Error(ErrorCode::InvalidArgument, "cond_max must be >= 1");
  const RealMatrix U = random_orthogonal(n, mix_seed(seed, 1));
  const RealMatrix V = random_orthogonal(n, mix_seed(seed, 2));
  Rng rng(mix_seed(seed, 3));
  std::uniform_real_distribution<double> ud(0.0, std::log(cond_max));
  Eigen::VectorXd sigma(n);
  for (int i = 0; i < n; ++i) sigma(i) = std::exp(ud(rng));
  return U * sigma.asDiagonal() * V.transpose();
}

int partition_size(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }

Partition conjugate_partition(const Partition& p) {
  Partition t;
  if (p.empty()) return t;
  const int largest = *std::max_element(p.begin(), p.end());
  for (int k = 1; k <= largest; ++k)
    t.push_back(static_cast<int>(std::count_if(p.begin(), p.end(), [k](int v) { return v >= k; })));
  return t;
}

std::vector<int> ranks_from_partition(const Partition& p, int n, int max_power) {
  std::vector<int> ranks;
  for (int k = 1; k <= max_power; ++k) {
    int killed = 0;
    for (int part : p) killed += std::min(part, k);
    ranks.push_back(n - killed);
  }
  return ranks;
}

Eigen::VectorXcd charpoly(const Matrix& M) {
  require_square(M);
  const Eigen::Index n = M.rows();
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(n + 1);
  c(0) = 1.0;
  if (n == 0) return c;
  Eigen::ComplexEigenSolver<Matrix> es(M, false);
  // Multiply out prod (z - lambda_i); backward stability of QR keeps these coefficients accurate
  // even where individual defective eigenvalues are not.
  for (Eigen::Index i = 0; i < n; ++i) {
    const cplx lam = es.eigenvalues()(i);
    for (Eigen::Index k = i + 1; k >= 1; --k) c(k) -= lam * c(k - 1);
  }
  return c;
}

double charpoly_drift(const Matrix& A, const Matrix& B) {
  const auto ca = charpoly(A);
  const auto cb = charpoly(B);
  if (ca.size() != cb.size()) throw Error(ErrorCode::SizeMismatch, "charpoly_drift sizes differ");
  const double s = 1.0 + frob(B);
  double drift = 0.0;
  for (Eigen::Index k = 1; k < ca.size(); ++k)
    drift = std::max(drift, std::abs(ca(k) - cb(k)) / std::pow(s, static_cast<double>(k)));
  return drift;
}

double frob(const Matrix& M) { return M.norm(); }

double symmetry_residual(const Matrix& M) { return (M - M.transpose()).norm(); }

double imag_residual(const Matrix& M) { return M.imag().norm(); }

Matrix expm(const Matrix& A) { return A.exp(); }

Matrix expm_hermitian(const Matrix& H, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(H);
  const Eigen::VectorXcd d = (t * es.eigenvalues().array()).exp().cast<cplx>();
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::VectorXcd lstsq(const Matrix& A, const Eigen::VectorXcd& b, double rcond) {
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod;
  cod.setThreshold(rcond);
  cod.compute(A);
  return cod.solve(b);
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RealMatrix gaussian_real(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  RealMatrix G(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) G(i, j) = nd(rng);
  return G;
}

Matrix gaussian_complex(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Matrix G(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) G(i, j) = cplx(nd(rng), nd(rng));
  return G;
}

}  // namespace hklab
