#include <benchmark/benchmark.h>

#include "hklab/homeo.hpp"
#include "hklab/involution.hpp"
#include "hklab/mv_bridge.hpp"
#include "hklab/verify.hpp"

using namespace hklab;

namespace {

Matrix sample(int n) {
  return complexify_entries(random_real_spectrum_matrix(n, random_jordan_type(n, 17), 17), 17);
}

void BM_Balance(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const Tolerances tol;
  const EncodedPoint raw = encode(sample(n), tol);
  for (auto _ : st) benchmark::DoNotOptimize(balance(raw.rep, tol));
}

void BM_BalanceGradient(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const Tolerances tol;
  const EncodedPoint raw = encode(sample(n), tol);
  for (auto _ : st) benchmark::DoNotOptimize(balance(raw.rep, tol, 2000, BalanceMethod::gradient));
}

void BM_Alpha(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const Tolerances tol;
  const Matrix M = sample(n);
  for (auto _ : st) benchmark::DoNotOptimize(alpha_gl(M, InvolutionParam(0.5), tol));
}

void BM_Trace(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const Tolerances tol;
  JordanType J;
  J.blocks[0.0] = {n};
  const Matrix M = random_real_spectrum_matrix(n, J, 3);
  for (auto _ : st) benchmark::DoNotOptimize(trace(M, 16, tol));
}

}  // namespace

BENCHMARK(BM_Balance)->DenseRange(2, 6, 2)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_BalanceGradient)->DenseRange(2, 4, 2)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Alpha)->DenseRange(2, 6, 2)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Trace)->DenseRange(2, 4, 1)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
