#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sobolev_pqc/kernels.hpp"
#include "sobolev_pqc/rng.hpp"

using namespace spqc;

TEST_CASE("pairwise sum") {
  CHECK(kernels::pairwise_sum({}) == 0.0);
  const std::vector<double> one{2.5};
  CHECK(kernels::pairwise_sum(one) == 2.5);
  std::vector<double> v(10000);
  std::iota(v.begin(), v.end(), 1.0);
  CHECK(kernels::pairwise_sum(v) == 10000.0 * 10001.0 / 2.0);
  // Small terms survive next to a large one far better than in a naive loop.
  std::vector<double> w(1 << 20, 1e-16);
  w[0] = 1.0;
  CHECK(kernels::pairwise_sum(w) == doctest::Approx(1.0 + (w.size() - 1) * 1e-16).epsilon(1e-15));
}

TEST_CASE("serial and parallel map_points are identical") {
  SplitMix64 rng(77);
  for (int dim : {1, 2, 3}) {
    std::vector<double> pts(999 * dim);
    for (auto& p : pts) p = rng.uniform(-3, 3);
    const Function f = [dim](std::span<const double> x) {
      double s = 0;
      for (int d = 0; d < dim; ++d) s += std::sin((d + 1) * x[d]);
      return s;
    };
    std::vector<double> a(999), b(999), c(999);
    kernels::map_points_serial(f, pts, dim, a);
    kernels::map_points_parallel(f, pts, dim, b);
    kernels::map_points(f, pts, dim, c, kernels::Exec::Serial);
    CHECK(a == b);
    CHECK(a == c);
    CHECK(a[5] == f(std::span<const double>(pts).subspan(5 * dim, dim)));
  }
}

TEST_CASE("for_each_index visits every index once") {
  for (auto exec : {kernels::Exec::Serial, kernels::Exec::Parallel}) {
    std::vector<int> hits(1000, 0);
    kernels::for_each_index(hits.size(), [&](std::size_t i) { hits[i] += 1; }, exec);
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  }
  CHECK(kernels::max_threads() >= 1);
}
