#include "sobolev_pqc/kernels.hpp"

#include <atomic>

namespace spqc::kernels {

namespace {
std::atomic<Exec> g_exec{Exec::Parallel};

double pairwise_range(const double* v, std::size_t n) {
  if (n <= 8) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += v[i];
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_range(v, half) + pairwise_range(v + half, n - half);
}
}  // namespace

Exec default_exec() { return g_exec.load(); }
void set_default_exec(Exec exec) { g_exec.store(exec); }

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

double pairwise_sum(std::span<const double> values) {
  return pairwise_range(values.data(), values.size());
}

void map_points_serial(const Function& f, std::span<const double> points, int dim,
                       std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(points.subspan(i * dim, dim));
}

void map_points_parallel(const Function& f, std::span<const double> points, int dim,
                         std::span<double> out) {
#ifdef _OPENMP
  const long long n = static_cast<long long>(out.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    out[idx] = f(points.subspan(idx * dim, dim));
  }
#else
  map_points_serial(f, points, dim, out);
#endif
}

}  // namespace spqc::kernels
