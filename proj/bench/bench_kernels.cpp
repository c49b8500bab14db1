// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "sobolev_pqc/kernels.hpp"
#include "sobolev_pqc/pqc.hpp"
#include "sobolev_pqc/trainer.hpp"
#include "sobolev_pqc/trigseries.hpp"

using namespace spqc;

namespace {

kernels::Exec exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? kernels::Exec::Serial : kernels::Exec::Parallel;
}

void BM_MapPointsCircuit(benchmark::State& state) {
  const Circuit c(CircuitSpec::reference());
  const auto theta = initial_theta(6, 1);
  const Function f = [&](std::span<const double> x) { return c.evaluate(theta, x); };
  std::vector<double> pts(4096), out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = -kPi + kTwoPi * i / pts.size();
  for (auto _ : state) {
    kernels::map_points(f, pts, 1, out, exec_of(state));
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_Dft2D(benchmark::State& state) {
  const int P = 256;
  const auto pts = periodic_grid_points(2, P);
  std::vector<double> samples(pts.size() / 2);
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = std::cos(pts[2 * i]) * std::sin(3 * pts[2 * i + 1]);
  for (auto _ : state) {
    auto c = dft_coefficients(samples, 2, P, 16, exec_of(state));
    benchmark::DoNotOptimize(c.data());
  }
}

void BM_RunExperiment(benchmark::State& state) {
  ExperimentConfig c;
  c.repeats = 8;
  c.epochs = 20;
  for (auto _ : state) {
    auto r = run_experiment(c, exec_of(state));
    benchmark::DoNotOptimize(r.median_dist_C0);
  }
}

}  // namespace

BENCHMARK(BM_MapPointsCircuit)->Arg(0)->Arg(1)->ArgName("parallel");
BENCHMARK(BM_Dft2D)->Arg(0)->Arg(1)->ArgName("parallel");
BENCHMARK(BM_RunExperiment)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
