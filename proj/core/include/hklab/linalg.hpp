#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace hklab {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using Rng = std::mt19937_64;

// eig_real and cluster are relative: the effective bound is value * (1 + ||M||_F).
struct Tolerances {
  double rank_rel = 1e-9;
  double eig_real = 1e-8;
  double cluster = 1e-6;
  double residual = 1e-10;

  void validate() const;
};

struct SpectralData {
  std::vector<double> values;       // strictly increasing cluster centers
  std::vector<int> multiplicities;  // positive, summing to n

  int size() const;
};

using Partition = std::vector<int>;

struct JordanType {
  std::map<double, Partition> blocks;

  int size() const;
  SpectralData spectrum() const;
  bool is_nilpotent(double center_tol = 1e-9) const;
};

// Same cluster count, centers within center_tol * (1 + |center|), identical partitions.
bool same_jordan_type(const JordanType& lhs, const JordanType& rhs, double center_tol = 1e-6);

struct ClusterRanks {
  double center = 0.0;
  int multiplicity = 0;
  std::vector<int> ranks;     // rank((M - center)^k), k = 1..multiplicity
  double worst_gap = 0.0;     // min over k of distance (in decades) from the cutoff
};

struct JordanAnalysis {
  JordanType type;
  std::vector<ClusterRanks> clusters;
};

SpectralData eig_real_check(const Matrix& M, const Tolerances& tol);
JordanType jordan_type(const Matrix& M, const Tolerances& tol);
JordanAnalysis analyze_jordan(const Matrix& M, const Tolerances& tol);
int rank_tol(const Matrix& M, const Tolerances& tol);

RealMatrix random_orthogonal(int n, std::uint64_t seed);

// U diag(sigma) V^T with log-uniform sigma in [1, cond_max]; condition number <= cond_max.
RealMatrix random_conditioned(int n, std::uint64_t seed, double cond_max);

Partition conjugate_partition(const Partition& p);
int partition_size(const Partition& p);

// Rank sequence rank(A^k), k = 1..max_power, implied by a nilpotent of the given type.
std::vector<int> ranks_from_partition(const Partition& p, int n, int max_power);

// Monic characteristic polynomial coefficients c_0 = 1, c_1, ..., c_n.
Eigen::VectorXcd charpoly(const Matrix& M);

// max_k |c_k(A) - c_k(B)| / (1 + ||B||_F)^k.
double charpoly_drift(const Matrix& A, const Matrix& B);

double frob(const Matrix& M);
double symmetry_residual(const Matrix& M);
double imag_residual(const Matrix& M);

Matrix expm(const Matrix& A);
Matrix expm_hermitian(const Matrix& H, double t);

// Minimum-norm least-squares solution; singular directions below rcond * max pivot are dropped.
Eigen::VectorXcd lstsq(const Matrix& A, const Eigen::VectorXcd& b, double rcond);

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);
RealMatrix gaussian_real(int rows, int cols, Rng& rng);
Matrix gaussian_complex(int rows, int cols, Rng& rng);

}  // namespace hklab
