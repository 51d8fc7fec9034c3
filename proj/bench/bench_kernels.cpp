// Threaded kernels against their serial references. Set OMP_NUM_THREADS to
// compare thread counts; on one core the pairs should run neck and neck.

#include <random>

#include <benchmark/benchmark.h>

#include "pptkit/classify.hpp"
#include "pptkit/mpstate.hpp"
#include "pptkit/permanent.hpp"
#include "pptkit/prodvec.hpp"

using namespace pptkit;

namespace {

SignMatrix random_sign(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::int8_t> e(static_cast<std::size_t>(n) * n);
  for (auto& x : e) x = (rng() & 1U) ? -1 : 1;
  return SignMatrix(n, n, std::move(e));
}

ProblemSpec segre_spec() {
  ProblemSpec s;
  s.dims = {3, 3};
  s.constraints.push_back({PartySet(), 4, std::nullopt});
  return s;
}

void BM_Ryser(benchmark::State& st) {
  const auto m = random_sign(static_cast<int>(st.range(0)), 1);
  for (auto _ : st) benchmark::DoNotOptimize(permanent(m));
}

void BM_RyserSerial(benchmark::State& st) {
  const auto m = random_sign(static_cast<int>(st.range(0)), 1);
  for (auto _ : st) benchmark::DoNotOptimize(reference::permanent_ryser(m));
}

void BM_Classify4(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(classify_vanishing(4, SweepMode::Exhaustive));
}

void BM_Classify4Serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(reference::classify_vanishing(4, SweepMode::Exhaustive));
}

void BM_Solve(benchmark::State& st) {
  const auto spec = segre_spec();
  const auto inst = random_instance(spec, 1);
  SolverConfig cfg;
  cfg.restarts = 500;
  for (auto _ : st) benchmark::DoNotOptimize(solve(inst, spec.dims, cfg));
}

void BM_SolveSerial(benchmark::State& st) {
  const auto spec = segre_spec();
  const auto inst = random_instance(spec, 1);
  SolverConfig cfg;
  cfg.restarts = 500;
  for (auto _ : st) benchmark::DoNotOptimize(reference::solve(inst, spec.dims, cfg));
}

const std::vector<int> kStateDims{2, 3, 2, 3, 2};

void BM_PartialTranspose(benchmark::State& st) {
  const auto rho = random_state(kStateDims, 3);
  for (auto _ : st) benchmark::DoNotOptimize(partial_transpose(rho, PartySet(0b10110)));
}

void BM_PartialTransposeSerial(benchmark::State& st) {
  const auto rho = random_state(kStateDims, 3);
  for (auto _ : st) benchmark::DoNotOptimize(reference::partial_transpose(rho, PartySet(0b10110)));
}

void BM_RankProfile(benchmark::State& st) {
  const auto rho = random_state({2, 2, 3}, 4, 5);
  for (auto _ : st) benchmark::DoNotOptimize(rank_profile(rho));
}

void BM_RankProfileSerial(benchmark::State& st) {
  const auto rho = random_state({2, 2, 3}, 4, 5);
  for (auto _ : st) benchmark::DoNotOptimize(reference::rank_profile(rho));
}

}  // namespace

BENCHMARK(BM_Ryser)->DenseRange(14, 20, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RyserSerial)->DenseRange(14, 20, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Classify4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Classify4Serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Solve)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PartialTranspose)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_PartialTransposeSerial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_RankProfile)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_RankProfileSerial)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
