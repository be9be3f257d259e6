#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "hyden/geometry.hpp"
#include "hyden/graph.hpp"
#include "hyden/noise.hpp"
#include "hyden/relaxation.hpp"
#include "hyden/solvers.hpp"
#include "hyden/tvprox.hpp"

using namespace hyden;

namespace {

Matrix noisy_h1_line(int n) {
  Matrix truth(2, n);
  for (int i = 0; i < n; ++i) truth.col(i) = param_h1(std::sin(0.03 * i));
  return add_noise(truth, {NoiseKind::tangential, 0.6, 7});
}

Matrix noisy_h2_line(int n) {
  Matrix truth(3, n);
  for (int i = 0; i < n; ++i) truth.col(i) = param_h2(1.0 + 0.3 * std::sin(0.05 * i), 0.02 * i);
  return add_noise(truth, {NoiseKind::ambient, 0.3, 7});
}

void BM_ProjPsd(benchmark::State& state) {
  const auto D = static_cast<Eigen::Index>(state.range(0));
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  Matrix a(D, D);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = nd(rng);
  const SymMat m = 0.5 * (a + a.transpose());
  PsdProjector p(D);
  Matrix out(D, D);
  for (auto _ : state) {
    p.project(m, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_ProjPsd)->Arg(6)->Arg(7)->Arg(8);

void BM_Tv1dProx(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(6);
  std::normal_distribution<double> nd;
  std::vector<double> y(n), x(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = std::sin(0.01 * i) + 0.3 * nd(rng);
  for (auto _ : state) {
    tv1d_prox(y, 0.5, x);
    benchmark::DoNotOptimize(x.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}
BENCHMARK(BM_Tv1dProx)->Arg(64)->Arg(400)->Arg(4096);

void BM_TikhonovStepH1(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  TikhonovAdmm solver({Graph::line(static_cast<std::size_t>(n)), noisy_h1_line(n), 6.0, 0.1});
  for (auto _ : state) solver.step();
}
BENCHMARK(BM_TikhonovStepH1)->Arg(400)->Unit(benchmark::kMicrosecond);

void BM_TvStepH2(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  TvAdmm solver({Graph::line(static_cast<std::size_t>(n)), noisy_h2_line(n), 0.1, 1.0, {}});
  for (auto _ : state) solver.step();
}
BENCHMARK(BM_TvStepH2)->Arg(400)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
