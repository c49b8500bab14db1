#include <doctest.h>

#include <cmath>

#include "sobolev_pqc/metrics.hpp"
#include "sobolev_pqc/rng.hpp"
#include "sobolev_pqc/trigseries.hpp"

using namespace spqc;

namespace {

const Function zero = [](std::span<const double>) { return 0.0; };
const Function sine = [](std::span<const double> x) { return std::sin(x[0]); };

SobolevFunction sine_h() {
  return {1, 2, [](std::span<const double> x, const MultiIndex& a) {
            switch (a[0] % 4) {
              case 0: return std::sin(x[0]);
              case 1: return std::cos(x[0]);
              case 2: return -std::sin(x[0]);
              default: return -std::cos(x[0]);
            }
          }};
}

Dataset one_point(double y, double dy) {
  Dataset d;
  d.order = 1;
  d.points = {0.0};
  d.labels = {y};
  d.derivatives = {dy};
  return d;
}

}  // namespace

TEST_CASE("grid nodes and weights") {
  const auto g = GridSpec::interval(0.0, 1.0, 5);
  const auto n = g.nodes();
  CHECK(n.size() == 5);
  CHECK(n.front() == 0.0);
  CHECK(n.back() == 1.0);
  const auto w = g.weights();
  double s = 0.0;
  for (double v : w) s += v;
  CHECK(s == doctest::Approx(1.0));
  CHECK(w[0] == doctest::Approx(0.125));
  const GridSpec g2{Box::cube(2, 0.0, 1.0), 3};
  CHECK(g2.size() == 9);
  CHECK_THROWS(GridSpec::interval(0, 1, 1).validate());
  CHECK_THROWS(GridSpec::interval(1, 0, 10).validate());
}

TEST_CASE("multi-indices and derivative counts") {
  CHECK(count_derivatives(1, 1) == 1);
  CHECK(count_derivatives(2, 2) == 5);
  CHECK(count_derivatives(3, 1) == 3);
  CHECK(count_derivatives(2, 0) == 0);
  const auto m = multi_indices(2, 2);
  REQUIRE(m.size() == 6);
  CHECK(m[0] == MultiIndex{0, 0, 0});
  CHECK(m[1] == MultiIndex{1, 0, 0});
  CHECK(m[2] == MultiIndex{0, 1, 0});
  CHECK(m[3] == MultiIndex{2, 0, 0});
  CHECK(m[4] == MultiIndex{1, 1, 0});
  CHECK(m[5] == MultiIndex{0, 2, 0});
  for (int N = 1; N <= 3; ++N)
    for (int k = 0; k <= 4; ++k)
      CHECK(static_cast<long long>(multi_indices(N, k).size()) == 1 + count_derivatives(N, k));
}

TEST_CASE("continuous distances") {
  const auto g = GridSpec::interval(0.0, kTwoPi, 1001);
  CHECK(dist_Lp(sine, sine, 2.0, g) == 0.0);
  CHECK(dist_Lp(sine, zero, 2.0, g) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(dist_Lp(sine, zero, 1.0, g) == doctest::Approx(2.0 / kPi).epsilon(1e-5));
  CHECK_THROWS(dist_Lp(sine, zero, 0.5, g));
  const Function id = [](std::span<const double> x) { return x[0]; };
  CHECK(dist_C0(id, zero, GridSpec::interval(0.0, kPi, 1001)) == doctest::Approx(kPi));
  CHECK(dist_Hk(sine_h(), SobolevFunction::constant_zero(1, 2), 1, g) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(dist_Hk(sine_h(), sine_h(), 2, g) == 0.0);
  CHECK(dist_Hk(sine_h(), SobolevFunction::constant_zero(1, 2), 0, g) ==
        dist_Lp(sine, zero, 2.0, g));
  CHECK_THROWS(dist_Hk(sine_h(), SobolevFunction::constant_zero(1, 1), 2, g));
}

TEST_CASE("distance orderings and grid convergence") {
  SplitMix64 rng(3);
  const auto g = GridSpec::interval(-1.0, 2.0, 1001);
  for (int t = 0; t < 10; ++t) {
    const double a = rng.uniform(-2, 2), b = rng.uniform(0.5, 3);
    const Function f = [a, b](std::span<const double> x) { return std::exp(a * x[0]) * std::cos(b * x[0]); };
    const double l1 = dist_Lp(f, zero, 1.0, g), l2 = dist_Lp(f, zero, 2.0, g), l4 = dist_Lp(f, zero, 4.0, g);
    CHECK(l1 <= l2);
    CHECK(l2 <= l4);
    CHECK(l4 <= dist_C0(f, zero, g) + 1e-9);
    const double fine = dist_Lp(f, zero, 2.0, GridSpec::interval(-1.0, 2.0, 2001));
    CHECK(std::abs(fine - l2) / l2 < 1e-4);
  }
}

TEST_CASE("sawtooth Fejer distance is stable under grid refinement") {
  const Function saw = [](std::span<const double> x) { return x[0] / kTwoPi; };
  const auto sigma = fejer_mean(saw, 1, 16, 4096);
  const Function s = [&sigma](std::span<const double> x) { return sigma(x); };
  const double coarse = dist_Lp(saw, s, 1.0, GridSpec::interval(0.0, kTwoPi, 1001));
  const double fine = dist_Lp(saw, s, 1.0, GridSpec::interval(0.0, kTwoPi, 10001));
  CHECK(std::abs(coarse - fine) / fine < 1e-4);
}

TEST_CASE("empirical losses") {
  Dataset d = one_point(1.0, 0.0);
  d.order = 0;
  d.derivatives.clear();
  CHECK(loss_l2(d, zero) == doctest::Approx(1.0));
  const Dataset h = one_point(0.3, 0.4);
  CHECK(loss_hk(h, SobolevFunction::constant_zero(1, 1), 1) == doctest::Approx(0.5));
  CHECK(loss_hk(h, SobolevFunction::constant_zero(1, 1), 0) == loss_l2(h, zero));
  CHECK_THROWS(loss_hk(h, SobolevFunction::constant_zero(1, 2), 2));
  CHECK_THROWS(loss_l2(Dataset{}, zero));

  Dataset r;
  r.points = {0.0, 1.0};
  r.labels = {0.1, -0.3};
  CHECK(loss_linf(r, zero) == doctest::Approx(0.3));

  SplitMix64 rng(4);
  Dataset big;
  big.order = 2;
  double ssq = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double x = rng.uniform(0, kTwoPi);
    big.points.push_back(x);
    big.labels.push_back(rng.uniform(-1, 1));
    big.derivatives.push_back(rng.uniform(-1, 1));
    big.derivatives.push_back(rng.uniform(-1, 1));
    ssq += std::pow(big.labels.back() - std::sin(x), 2);
  }
  CHECK(loss_l2(big, sine) * loss_l2(big, sine) * 10 == doctest::Approx(ssq));
  CHECK(loss_linf(big, sine) >= loss_l2(big, sine));
  const double h0 = loss_hk(big, sine_h(), 0), h1 = loss_hk(big, sine_h(), 1), h2 = loss_hk(big, sine_h(), 2);
  CHECK(h0 <= h1);
  CHECK(h1 <= h2);
  CHECK(loss_hk_squared(big, sine_h(), 2) == doctest::Approx(h2 * h2));
}

TEST_CASE("dataset text round trip") {
  Dataset d;
  d.input_dim = 2;
  d.order = 1;
  d.points = {0.1, 0.2, 1.0 / 3.0, -4.5};
  d.labels = {1e-17, 2.0};
  d.derivatives = {0.5, -0.25, 3.0, 7.0};
  const auto text = dataset_to_string(d);
  const auto back = dataset_from_string(text);
  CHECK(back.input_dim == 2);
  CHECK(back.order == 1);
  CHECK(back.points == d.points);
  CHECK(back.labels == d.labels);
  CHECK(back.derivatives == d.derivatives);
  CHECK(dataset_to_string(back) == text);
}
