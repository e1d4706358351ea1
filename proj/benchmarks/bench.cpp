// Microbenchmarks for the layers that dominate end-to-end cost: special
// functions, face weights, one-row monodromy entries, the factorizing
// twist, and the determinant formulas.

#include <benchmark/benchmark.h>

#include <openxyz/bethe.hpp>
#include <openxyz/determinant.hpp>
#include <openxyz/fbasis.hpp>

namespace {

using oxyz::cx;
using oxyz::ModelParams;

const ModelParams& params(int sites) {
  static std::map<int, ModelParams> cache;
  auto it = cache.find(sites);
  if (it == cache.end())
    it = cache.emplace(sites, ModelParams::fixture(sites)).first;
  return it->second;
}

std::vector<cx> merged_parameters(const ModelParams& p) {
  std::vector<cx> ubar;
  for (int k = 0; k < p.N(); ++k)
    ubar.push_back(cx(0.11 + 0.07 * k, 0.02 - 0.01 * k));
  return ubar;
}

void SigmaEvaluation(benchmark::State& state) {
  const oxyz::Elliptic e(cx(0.0, 1.0));
  const cx u(0.31, 0.07);
  for (auto _ : state) benchmark::DoNotOptimize(e.sigma(u));
}
BENCHMARK(SigmaEvaluation);

void FaceWeightMatrix(benchmark::State& state) {
  const ModelParams& p = params(2);
  const oxyz::Elliptic e(p.tau);
  const oxyz::Weight m = p.lambda();
  const cx u(0.23, 0.11);
  for (auto _ : state) benchmark::DoNotOptimize(oxyz::face_r(e, p.eta, m, u));
}
BENCHMARK(FaceWeightMatrix);

void FaceOneRow(benchmark::State& state) {
  const int sites = static_cast<int>(state.range(0));
  const ModelParams& p = params(sites);
  const cx u(0.23, 0.11);
  for (auto _ : state)
    benchmark::DoNotOptimize(oxyz::face_one_row(p, p.lambda(), u, 1, 1));
}
BENCHMARK(FaceOneRow)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void FactorizingTwist(benchmark::State& state) {
  const int sites = static_cast<int>(state.range(0));
  const ModelParams& p = params(sites);
  for (auto _ : state)
    benchmark::DoNotOptimize(oxyz::f_matrix(p, p.lambda()));
}
BENCHMARK(FactorizingTwist)->Arg(2)->Arg(3)->Arg(4)->Unit(
    benchmark::kMillisecond);

void PartitionDeterminant(benchmark::State& state) {
  const int sites = static_cast<int>(state.range(0));
  const ModelParams& p = params(sites);
  const auto ubar = merged_parameters(p);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        oxyz::partition_function(p, oxyz::ScalarKind::I_II, ubar));
}
BENCHMARK(PartitionDeterminant)->Arg(2)->Arg(4)->Arg(8);

void PartitionLadder(benchmark::State& state) {
  const int sites = static_cast<int>(state.range(0));
  const ModelParams& p = params(sites);
  const auto ubar = merged_parameters(p);
  const std::vector<cx> u(ubar.begin(), ubar.begin() + p.M());
  const std::vector<cx> v(ubar.begin() + p.M(), ubar.end());
  for (auto _ : state)
    benchmark::DoNotOptimize(
        oxyz::scalar_product_ladder(p, oxyz::ScalarKind::I_II, u, v));
}
BENCHMARK(PartitionLadder)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void EquationSolve(benchmark::State& state) {
  const int sites = static_cast<int>(state.range(0));
  const ModelParams& p = params(sites);
  oxyz::SolverConfig cfg;
  cfg.seeds = 8;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        oxyz::solve_bae(p, oxyz::BetheFamily::One, p.M(), cfg));
}
BENCHMARK(EquationSolve)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void ScalarDeterminant(benchmark::State& state) {
  const int sites = static_cast<int>(state.range(0));
  const ModelParams& p = params(sites);
  const auto sets = oxyz::solve_bae(p, oxyz::BetheFamily::One, p.M());
  std::vector<cx> v;
  for (const auto& s : sets)
    if (oxyz::roots_generic(p, s.v)) {
      v = s.v;
      break;
    }
  if (v.empty()) {
    state.SkipWithError("no usable on-shell roots");
    return;
  }
  std::vector<cx> u;
  for (int k = 0; k < p.M(); ++k) u.push_back(cx(0.05 + 0.04 * k, 0.03));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        oxyz::scalar_product_det(p, oxyz::ScalarKind::I_I, u, v));
}
BENCHMARK(ScalarDeterminant)->Arg(2)->Arg(4);

}  // namespace
