#include <random>

#include <benchmark/benchmark.h>

#include "laurent/kernels.hpp"
#include "laurent/schur_chain.hpp"

using namespace laurent;
namespace k = laurent::kernels;

namespace {

BlockLaurentCoefficients random_symbol(int d, int band) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g(0.0, 1.0);
  BlockLaurentCoefficients c(d);
  for (int n = -band; n <= band; ++n) {
    CMatrix M(d, d);
    for (int r = 0; r < d; ++r)
      for (int s = 0; s < d; ++s) M(r, s) = cd(g(rng), g(rng));
    c.set(n, M);
  }
  return c;
}

// Threads: 0 runs the serial reference, otherwise the OpenMP kernel with that team size.
template <typename Serial, typename Parallel>
void run(benchmark::State& state, Serial serial, Parallel parallel) {
  const int threads = static_cast<int>(state.range(0));
  k::set_thread_limit(threads);
  for (auto _ : state) {
    if (threads == 0)
      benchmark::DoNotOptimize(serial());
    else
      benchmark::DoNotOptimize(parallel());
  }
  k::set_thread_limit(0);
  state.SetLabel(threads == 0 ? "serial" : "omp");
}

void BM_SampleGrid(benchmark::State& state) {
  const auto c = random_symbol(4, 3);
  run(state, [&] { return k::serial::sample_grid(c, 1024); }, [&] { return k::sample_grid(c, 1024); });
}

void BM_FourierSum(benchmark::State& state) {
  const auto values = k::serial::sample_grid(random_symbol(4, 3), 1024);
  run(state, [&] { return k::serial::fourier_sum(values, -16, 16); }, [&] { return k::fourier_sum(values, -16, 16); });
}

void BM_GridEigenvalues(benchmark::State& state) {
  const auto values = k::serial::sample_grid(random_symbol(4, 2), 512);
  run(state, [&] { return k::serial::grid_eigenvalues(values, 1e-6); }, [&] { return k::grid_eigenvalues(values, 1e-6); });
}

void BM_ConjugateStrictUpper(benchmark::State& state) {
  const auto frames = track_frames(sample_symbol(random_symbol(3, 1), 512));
  run(state, [&] { return k::serial::conjugate_strict_upper(frames.U, frames.T); },
      [&] { return k::conjugate_strict_upper(frames.U, frames.T); });
}

void BM_TrigEval(benchmark::State& state) {
  const auto values = k::serial::sample_grid(random_symbol(3, 2), 256);
  const auto coeffs = k::serial::fourier_sum(values, -64, 64);
  std::vector<double> params(2048);
  for (size_t i = 0; i < params.size(); ++i) params[i] = 6.283185307179586 * static_cast<double>(i) / 2048.0;
  run(state, [&] { return k::serial::trig_eval(coeffs, -64, params); }, [&] { return k::trig_eval(coeffs, -64, params); });
}

void BM_CompanionRoots(benchmark::State& state) {
  const std::vector<cd> poly{cd(0.3, 0.1), -1.0, cd(0.0, 0.5), 2.0, -0.7, 1.0};
  std::vector<cd> shifts(2048);
  for (size_t j = 0; j < shifts.size(); ++j) shifts[j] = std::polar(1.5, 0.003 * static_cast<double>(j));
  run(state, [&] { return k::serial::companion_root_sweep(poly, shifts); },
      [&] { return k::companion_root_sweep(poly, shifts); });
}

}  // namespace

#define LAURENT_BENCH(fn) BENCHMARK(fn)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime()

LAURENT_BENCH(BM_SampleGrid);
LAURENT_BENCH(BM_FourierSum);
LAURENT_BENCH(BM_GridEigenvalues);
LAURENT_BENCH(BM_ConjugateStrictUpper);
LAURENT_BENCH(BM_TrigEval);
LAURENT_BENCH(BM_CompanionRoots);

BENCHMARK_MAIN();
