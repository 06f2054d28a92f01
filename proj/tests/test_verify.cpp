#include <gtest/gtest.h>

#include <set>

#include "hklab/errors.hpp"
#include "hklab/verify.hpp"

using namespace hklab;

namespace {

SuiteConfig small_config(std::uint64_t seed = 3) {
  SuiteConfig c;
  c.n_max = 3;
  c.samples_per_case = 2;
  c.seed = seed;
  c.trace_n_max = 2;
  c.trace_steps = 8;
  c.semismall_n_max = 3;
  c.equivariance_trials = 4;
  return c;
}

}  // namespace

TEST(Registry, IdsUniqueSortedAndCovered) {
  const auto& reg = claim_registry();
  ASSERT_FALSE(reg.empty());
  std::set<std::string> modules;
  for (std::size_t i = 0; i < reg.size(); ++i) {
    if (i) EXPECT_LT(reg[i - 1].id, reg[i].id);
    EXPECT_FALSE(reg[i].statement.empty());
    modules.insert(reg[i].module);
  }
  for (const char* m : {"quiver_core", "mv_bridge", "involution", "homeo_tracer", "ks_orbits", "springer_hecke"})
    EXPECT_TRUE(modules.count(m)) << m;
  int controls = 0;
  for (const auto& c : reg) controls += c.negative_control;
  EXPECT_GE(controls, 2);
}

TEST(Suite, EveryClaimReportedOnceAndPasses) {
  const SuiteReport r = run_suite(small_config());
  ASSERT_EQ(r.claims.size(), claim_registry().size());
  for (std::size_t i = 0; i < r.claims.size(); ++i) {
    EXPECT_EQ(r.claims[i].id, claim_registry()[i].id);
    EXPECT_TRUE(r.claims[i].pass) << r.claims[i].id << " residual " << r.claims[i].max_residual;
    EXPECT_GT(r.claims[i].cases, 0) << r.claims[i].id;
    EXPECT_FALSE(r.claims[i].counterexample.has_value()) << r.claims[i].id;
  }
  EXPECT_TRUE(r.all_pass());
  EXPECT_NE(r.find(r.claims.front().id), nullptr);
  EXPECT_EQ(r.find("no-such-claim"), nullptr);
  EXPECT_GT(r.runtime_seconds, 0.0);
}

TEST(Suite, DeterministicForFixedSeed) {
  const SuiteReport a = run_suite(small_config(11));
  const SuiteReport b = run_suite(small_config(11));
  ASSERT_EQ(a.claims.size(), b.claims.size());
  EXPECT_EQ(a.seed, b.seed);
  for (std::size_t i = 0; i < a.claims.size(); ++i) {
    EXPECT_EQ(a.claims[i].pass, b.claims[i].pass);
    EXPECT_EQ(a.claims[i].cases, b.claims[i].cases);
    EXPECT_EQ(a.claims[i].max_residual, b.claims[i].max_residual) << a.claims[i].id;
  }
}

TEST(Suite, NegativeControlsCanBeSkipped) {
  SuiteConfig c = small_config();
  c.negative_controls = false;
  const SuiteReport r = run_suite(c);
  for (const auto& claim : r.claims) EXPECT_FALSE(claim.negative_control) << claim.id;
  for (const auto& info : claim_registry())
    if (!info.negative_control) EXPECT_NE(r.find(info.id), nullptr) << info.id;
}

TEST(Suite, ImpossibleToleranceYieldsCounterexample) {
  SuiteConfig c = small_config();
  c.tol.residual = 1e-16;
  c.trace_n_max = 0;
  c.negative_controls = false;
  const SuiteReport r = run_suite(c);
  EXPECT_FALSE(r.all_pass());
  bool seen = false;
  for (const auto& claim : r.claims) {
    if (claim.pass) continue;
    ASSERT_TRUE(claim.counterexample.has_value()) << claim.id;
    EXPECT_FALSE(claim.counterexample->case_id.empty());
    seen = true;
  }
  EXPECT_TRUE(seen);
}

TEST(Config, Validation) {
  EXPECT_NO_THROW(SuiteConfig{}.validate());
  auto bad = [](auto mutate) {
    SuiteConfig c;
    mutate(c);
    EXPECT_THROW(c.validate(), Error);
  };
  bad([](SuiteConfig& c) { c.n_max = 0; });
  bad([](SuiteConfig& c) { c.n_max = 9; });
  bad([](SuiteConfig& c) { c.samples_per_case = 0; });
  bad([](SuiteConfig& c) { c.semismall_n_max = 7; });
  bad([](SuiteConfig& c) { c.a_grid = {0.0, 0.5}; });
  bad([](SuiteConfig& c) { c.a_grid = {0.0, 1.0, 1.2}; });
}

TEST(Samples, RealSpectrumMatricesHaveTheirType) {
  const Tolerances tol;
  for (int n = 1; n <= 5; ++n)
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      const JordanType J = random_jordan_type(n, seed);
      EXPECT_EQ(J.size(), n);
      const Matrix M = random_real_spectrum_matrix(n, J, seed);
      EXPECT_EQ(M.imag().norm(), 0.0);
      EXPECT_TRUE(same_jordan_type(jordan_type(M, tol), J));
      const Matrix C = complexify_entries(M, seed);
      // Scalar matrices are fixed by every similarity.
      if ((M - M(0, 0) * Matrix::Identity(n, n)).norm() > 0) EXPECT_GT(C.imag().norm(), 1e-3);
      EXPECT_TRUE(same_jordan_type(jordan_type(C, tol), J));
      EXPECT_LE(charpoly_drift(C, M), 1e-9);
    }
}

TEST(Samples, JordanNormalForm) {
  JordanType J;
  J.blocks[1.5] = {2};
  J.blocks[-1.0] = {1};
  const Matrix N = jordan_normal_form(J);
  ASSERT_EQ(N.rows(), 3);
  EXPECT_EQ(N.imag().norm(), 0.0);
  EXPECT_EQ((N.diagonal().real().array() == 1.5).count(), 2);
  EXPECT_EQ(std::abs(N.sum() - cplx(1.5 * 2 - 1.0 + 1.0)), 0.0);
}

TEST(Samples, IdsAndComplexity) {
  SuiteConfig c;
  c.n_max = 2;
  c.samples_per_case = 3;
  const auto s = suite_samples(c);
  ASSERT_EQ(s.size(), 6u);
  EXPECT_EQ(s[0].id, "n1-s0");
  EXPECT_EQ(s[4].id, "n2-s1");
  EXPECT_GT(s[4].M.imag().norm(), 0.0);
  EXPECT_EQ(s[3].M.imag().norm(), 0.0);
}
