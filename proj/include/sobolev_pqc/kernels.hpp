#pragma once

// Data-parallel kernels. Every kernel has a serial reference implementation
// that the tests compare against; the parallel variants must produce
// bit-identical results because each output slot is written by exactly one
// iteration and reductions use a fixed pairwise tree.

#include <cstddef>
#include <span>
#include <vector>

#include "sobolev_pqc/types.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace spqc::kernels {

enum class Exec { Serial, Parallel };

// Selected by default for library entry points.
Exec default_exec();
void set_default_exec(Exec exec);

int max_threads();
void set_threads(int n);

// fn(i) for i in [0, n). `fn` must only write to state owned by index i.
template <class Fn>
void for_each_index(std::size_t n, Fn&& fn, Exec exec = default_exec()) {
  if (exec == Exec::Serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
#ifdef _OPENMP
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < count; ++i) fn(static_cast<std::size_t>(i));
#else
  for (std::size_t i = 0; i < n; ++i) fn(i);
#endif
}

// Pairwise (fixed-tree) summation; result independent of thread count.
double pairwise_sum(std::span<const double> values);

// out[i] = f(points[i*dim .. i*dim+dim)).
void map_points_serial(const Function& f, std::span<const double> points, int dim,
                       std::span<double> out);
void map_points_parallel(const Function& f, std::span<const double> points, int dim,
                         std::span<double> out);
inline void map_points(const Function& f, std::span<const double> points, int dim,
                       std::span<double> out, Exec exec = default_exec()) {
  if (exec == Exec::Serial)
    map_points_serial(f, points, dim, out);
  else
    map_points_parallel(f, points, dim, out);
}

}  // namespace spqc::kernels
