#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hklab/linalg.hpp"

namespace hklab {

struct SuiteConfig {
  int n_max = 4;
  int samples_per_case = 4;
  std::vector<double> a_grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  std::uint64_t seed = 7;
  Tolerances tol;
  int equivariance_trials = 20;
  int trace_n_max = 4;
  int trace_steps = 16;
  int semismall_n_max = 6;
  bool negative_controls = true;

  void validate() const;
};

struct Counterexample {
  std::string case_id;
  std::uint64_t seed = 0;
  double a = 0.0;
  Matrix M;
  std::string detail;
};

struct ClaimResult {
  std::string id;
  std::string statement;
  bool negative_control = false;
  bool pass = true;
  int cases = 0;
  double max_residual = 0.0;
  double threshold = 0.0;
  std::optional<Counterexample> counterexample;
};

struct SuiteReport {
  std::uint64_t seed = 0;
  std::vector<ClaimResult> claims;  // sorted by id
  double runtime_seconds = 0.0;

  bool all_pass() const;
  const ClaimResult* find(const std::string& id) const;
};

struct ClaimInfo {
  std::string id;
  std::string module;
  std::string statement;
  bool negative_control = false;
};

const std::vector<ClaimInfo>& claim_registry();

SuiteReport run_suite(const SuiteConfig& config);

// Jordan normal form of the given type conjugated by a seeded real P with cond(P) <= 10.
Matrix random_real_spectrum_matrix(int n, const JordanType& jordan, std::uint64_t seed);

// Same spectrum and orbit, conjugated further by a complex similarity with cond <= 10.
Matrix complexify_entries(const Matrix& M, std::uint64_t seed);

// Random clusters on a grid of step 0.75 in [-3, 3], random partitions per cluster.
JordanType random_jordan_type(int n, std::uint64_t seed);

Matrix jordan_normal_form(const JordanType& jordan);

struct SuiteSample {
  std::string id;
  std::uint64_t seed = 0;
  int n = 0;
  JordanType type;
  Matrix M;
};

// samples_per_case matrices for each n = 1..n_max; odd-indexed samples have complex entries.
std::vector<SuiteSample> suite_samples(const SuiteConfig& config);

}  // namespace hklab
