#include <gtest/gtest.h>

#include "hklab/errors.hpp"
#include "hklab/homeo.hpp"
#include "hklab/ks_orbits.hpp"
#include "hklab/verify.hpp"

using namespace hklab;

namespace {

Matrix real_of_type(const JordanType& J, std::uint64_t seed) {
  return random_real_spectrum_matrix(J.size(), J, seed);
}

JordanType distinct(int n) {
  JordanType J;
  for (int i = 0; i < n; ++i) J.blocks[0.9 * i - 0.4 * n] = {1};
  return J;
}

}  // namespace

TEST(SolveCommutator, RecoversConsistentRightHandSide) {
  Rng rng(1);
  for (int n = 2; n <= 5; ++n) {
    const Matrix M = real_of_type(distinct(n), 10 + n);
    const Matrix xi0 = gaussian_complex(n, n, rng);
    const Matrix F = xi0 * M - M * xi0;
    const Matrix xi = solve_commutator(M, F);
    EXPECT_LE((xi * M - M * xi - F).norm(), 1e-9 * (1 + F.norm()));
  }
}

TEST(Corrector, LandsOnFixedPointOfTheOrbit) {
  // A real matrix is fixed at a = 0; a short step in a is within the corrector's reach.
  const Tolerances tol;
  for (int n = 1; n <= 4; ++n) {
    const Matrix M0 = real_of_type(distinct(n), 3 * n);
    const Matrix M = M0 / frob(M0);
    const InvolutionParam a(0.05);
    const CorrectorResult c = corrector_detailed(M, a, tol, 8);
    EXPECT_LE(c.residual, 1e-9);
    EXPECT_LE(frob(alpha_gl(c.M, a, tol) - c.M), 1e-8);
    EXPECT_LE(charpoly_drift(c.M, M), 1e-10);
    EXPECT_LE(frob(c.similarity * M * c.similarity.inverse() - c.M), 1e-9);
  }
  Matrix far = Matrix::Zero(2, 2);
  far(0, 1) = 1.0;
  EXPECT_THROW(corrector_detailed(far, InvolutionParam(1.0), tol, 8), Error);
}

TEST(Trace, ZeroMatrix) {
  const TracePath p = trace(Matrix::Zero(3, 3), 4, Tolerances{});
  EXPECT_TRUE(p.complete);
  EXPECT_EQ(p.target.norm(), 0.0);
  EXPECT_EQ(p.samples.size(), 5u);
}

TEST(Trace, RejectsBadInput) {
  Matrix C = Matrix::Identity(2, 2);
  C(0, 1) = cplx(0, 1);
  EXPECT_THROW(trace(C, 8, Tolerances{}), Error);
  EXPECT_THROW(trace(Matrix::Identity(2, 2), 0, Tolerances{}), Error);
  EXPECT_THROW(trace(Matrix::Zero(2, 3), 4, Tolerances{}), Error);
}

TEST(Trace, RealNilpotentsReachSymmetricNilpotents) {
  const Tolerances tol;
  for (int n = 1; n <= 4; ++n)
    for (const Partition& lam : partitions(n)) {
      JordanType J;
      J.blocks[0.0] = lam;
      const Matrix M = real_of_type(J, 400 + 10 * n + lam.size());
      const TracePath p = trace(M, 16, tol);
      ASSERT_TRUE(p.complete);
      const KsEndpointReport r = verify_ks_endpoint(p, tol);
      EXPECT_EQ(r.source_imag, 0.0);
      EXPECT_LE(r.symmetry_residual, 1e-6);
      EXPECT_TRUE(r.jordan_equal);
      ASSERT_TRUE(r.ks_label.has_value());
      EXPECT_EQ(*r.ks_label, lam);
      EXPECT_NEAR(p.samples.front().a, 0.0, 0.0);
      EXPECT_NEAR(p.samples.back().a, 1.0, 1e-15);
      EXPECT_LE(frob(p.samples.front().M - M), 1e-8 * (1 + frob(M)));
    }
}

TEST(Trace, DistinctSpectrumStaysOnItsFibre) {
  const Tolerances tol;
  for (int n = 2; n <= 4; ++n) {
    const JordanType J = distinct(n);
    const Matrix M = real_of_type(J, 70 + n);
    const TracePath p = trace(M, 16, tol);
    EXPECT_LE(p.max_spectral_drift, 1e-6);
    EXPECT_LE(symmetry_residual(p.target), 10 * tol.residual * (1 + frob(M)) + 1e-9);
    for (const auto& s : p.samples) EXPECT_TRUE(same_jordan_type(jordan_type(s.M, tol), J)) << s.a;
    // a monotone, every sample an alpha_a fixed point.
    for (std::size_t i = 1; i < p.samples.size(); ++i) EXPECT_GT(p.samples[i].a, p.samples[i - 1].a);
    for (const auto& s : p.samples) EXPECT_LE(s.corrector_residual, 1e-8);
  }
}

TEST(Trace, Equivariance) {
  const Tolerances tol;
  for (int n = 2; n <= 4; ++n) {
    const Matrix M = real_of_type(distinct(n), 90 + n);
    const TracePath p = trace(M, 16, tol);
    const Matrix k = random_orthogonal(n, 5 + n).cast<cplx>();
    EXPECT_LE(frob(trace(k * M * k.transpose(), 16, tol).target - k * p.target * k.transpose()), 1e-5);
    EXPECT_LE(frob(trace(0.4 * M, 16, tol).target - 0.4 * p.target), 1e-5);
  }
}

TEST(Trace, MixedJordanType) {
  const Tolerances tol;
  JordanType J;
  J.blocks[0.0] = {2};
  J.blocks[1.5] = {1};
  const Matrix M = real_of_type(J, 5);
  const TracePath p = trace(M, 16, tol);
  const KsEndpointReport r = verify_ks_endpoint(p, tol);
  EXPECT_TRUE(r.jordan_equal);
  EXPECT_LE(r.symmetry_residual, 1e-6);
  EXPECT_FALSE(r.ks_label.has_value());
}
