#include <gtest/gtest.h>

#include "hklab/errors.hpp"
#include "hklab/mv_bridge.hpp"
#include "hklab/quiver.hpp"

using namespace hklab;

namespace {

double moment_gap(const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
  double r = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) r = std::max(r, (a[k] - b[k]).norm());
  return r;
}

std::vector<Matrix> conjugated(const std::vector<Matrix>& m, const GaugeElement& g) {
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < m.size(); ++k) out.push_back(g.g[k] * m[k] * g.g[k].inverse());
  return out;
}

}  // namespace

TEST(DimensionVector, Chain) {
  const DimensionVector d = DimensionVector::chain(4);
  EXPECT_EQ(d.v, (std::vector<int>{4, 3, 2, 1}));
  EXPECT_EQ(d.w, (std::vector<int>{4, 0, 0, 0}));
  EXPECT_NO_THROW(d.validate());
  EXPECT_THROW(DimensionVector::chain(0), Error);
}

TEST(DimensionVector, FramingOnlyAtFirstVertex) {
  DimensionVector d = DimensionVector::chain(3);
  d.w[1] = 1;
  try {
    d.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ShapeMismatch);
  }
}

TEST(QuiverRep, ShapeValidation) {
  QuiverRep r = QuiverRep::zero(DimensionVector::chain(3));
  EXPECT_NO_THROW(r.validate());
  r.X[0] = Matrix::Zero(3, 3);
  EXPECT_THROW(r.validate(), Error);
}

TEST(Moment, RealPartIsSkewHermitian) {
  Rng rng(1);
  for (int n = 1; n <= 5; ++n) {
    const QuiverRep r = random_rep(DimensionVector::chain(n), rng);
    for (const Matrix& m : mu_real(r)) EXPECT_LE((m + m.adjoint()).norm(), 1e-12 * (1 + m.norm()));
  }
}

TEST(Moment, ZeroRepHasZeroMoment) {
  const QuiverRep r = QuiverRep::zero(DimensionVector::chain(3));
  EXPECT_EQ(moment_norm(mu_real(r)), 0.0);
  EXPECT_EQ(moment_norm(mu_complex(r)), 0.0);
}

TEST(Moment, QuadraticScaling) {
  Rng rng(2);
  for (int n = 1; n <= 4; ++n) {
    const QuiverRep r = random_rep(DimensionVector::chain(n), rng);
    const auto a = mu(r), b = mu(scale(r, -1.7));
    for (std::size_t k = 0; k < a.real.size(); ++k) {
      EXPECT_LE((b.real[k] - 1.7 * 1.7 * a.real[k]).norm(), 1e-11);
      EXPECT_LE((b.complex[k] - 1.7 * 1.7 * a.complex[k]).norm(), 1e-11);
    }
  }
}

TEST(Moment, ComplexPartIsGaugeEquivariant) {
  Rng rng(3);
  for (int n = 1; n <= 4; ++n) {
    const QuiverRep r = random_rep(DimensionVector::chain(n), rng);
    const GaugeElement g = random_gauge(r.dims, rng, 0.5);
    EXPECT_LE(moment_gap(mu_complex(gauge_act(r, g)), conjugated(mu_complex(r), g)), 1e-10);
  }
}

TEST(Moment, RealPartIsUnitaryEquivariantOnly) {
  Rng rng(4);
  const QuiverRep r = random_rep(DimensionVector::chain(3), rng);
  const GaugeElement u = random_unitary_gauge(r.dims, rng);
  EXPECT_LE(moment_gap(mu_real(gauge_act(r, u)), conjugated(mu_real(r), u)), 1e-10);
  const GaugeElement g = random_gauge(r.dims, rng, 0.8);
  EXPECT_GT(moment_gap(mu_real(gauge_act(r, g)), conjugated(mu_real(r), g)), 1e-6);
}

TEST(Moment, ConjugationIntertwines) {
  Rng rng(5);
  for (int n = 1; n <= 4; ++n) {
    const QuiverRep r = random_rep(DimensionVector::chain(n), rng);
    const auto a = mu(r), b = mu(conj_rep(r));
    for (std::size_t k = 0; k < a.real.size(); ++k) {
      EXPECT_LE((b.complex[k] - a.complex[k].conjugate()).norm(), 1e-12);
      EXPECT_LE((b.real[k] + a.real[k].conjugate()).norm(), 1e-12);
    }
  }
}

TEST(Quaternionic, Relations) {
  Rng rng(6);
  const QuiverRep r = random_rep(DimensionVector::chain(3), rng);
  const QuiverRep minus = scale(r, -1.0);
  EXPECT_LE(rep_distance(apply_I(apply_I(r)), minus), 1e-14);
  EXPECT_LE(rep_distance(apply_J(apply_J(r)), minus), 1e-14);
  EXPECT_LE(rep_distance(apply_K(apply_K(r)), minus), 1e-14);
  EXPECT_LE(rep_distance(apply_J(apply_I(r)), scale(apply_K(r), -1.0)), 1e-14);
}

TEST(Quaternionic, JNegatesTheRealMoment) {
  Rng rng(10);
  const QuiverRep r = random_rep(DimensionVector::chain(4), rng);
  const auto a = mu_real(r), b = mu_real(apply_J(r));
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_LE((a[k] + b[k]).norm(), 1e-12);
}

TEST(Gauge, InverseAndSingular) {
  Rng rng(7);
  const DimensionVector d = DimensionVector::chain(3);
  const QuiverRep r = random_rep(d, rng);
  const GaugeElement g = random_gauge(d, rng, 0.6);
  EXPECT_LE(rep_distance(gauge_act(gauge_act(r, g), g.inverse()), r), 1e-10);

  GaugeElement bad = GaugeElement::identity(d);
  bad.g[0](1, 1) = 0.0;
  bad.g[0](1, 0) = 0.0;
  bad.g[0](1, 2) = 0.0;
  try {
    gauge_act(r, bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularGauge);
  }
}

TEST(Gauge, DecodeIsGaugeInvariant) {
  Rng rng(8);
  const QuiverRep r = random_rep(DimensionVector::chain(4), rng);
  const GaugeElement g = random_gauge(r.dims, rng, 0.5);
  EXPECT_LE((decode(gauge_act(r, g)) - decode(r)).norm(), 1e-10 * (1 + decode(r).norm()));
}

TEST(Gauge, FramingActionConjugatesDecode) {
  Rng rng(9);
  const QuiverRep r = random_rep(DimensionVector::chain(3), rng);
  const Matrix h = gaussian_complex(3, 3, rng) + 3.0 * Matrix::Identity(3, 3);
  EXPECT_LE((decode(glW_act(r, h)) - h * decode(r) * h.inverse()).norm(), 1e-10);
}
