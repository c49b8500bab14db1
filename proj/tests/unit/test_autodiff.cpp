#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "sobolev_pqc/autodiff.hpp"
#include "sobolev_pqc/rng.hpp"
#include "sobolev_pqc/trainer.hpp"

using namespace spqc;

namespace {
std::span<const double> one(const double& x) { return {&x, 1}; }
}  // namespace

TEST_CASE("parameter shift matches a dense-matrix finite difference") {
  const Circuit c(CircuitSpec::reference());
  SplitMix64 rng(41);
  for (int t = 0; t < 10; ++t) {
    auto theta = initial_theta(6, rng.next());
    const double x = rng.uniform(-kPi, kPi);
    const auto g = grad_theta(c, theta, one(x));
    REQUIRE(g.size() == 6);
    for (int j = 0; j < 6; ++j) {
      auto tp = theta, tm = theta;
      tp[j] += 1e-5;
      tm[j] -= 1e-5;
      const double fd = (oracle::reference_model(tp, x) - oracle::reference_model(tm, x)) / 2e-5;
      CHECK(g[j] == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
    }
    const double fx = (oracle::reference_model(theta, x + 1e-5) - oracle::reference_model(theta, x - 1e-5)) / 2e-5;
    CHECK(grad_x(c, theta, one(x))[0] == doctest::Approx(fx).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("gradient report bundles value and counts evaluations") {
  const Circuit c(CircuitSpec::reference());
  const auto theta = initial_theta(6, 5);
  const double x = 0.4;
  const auto r = gradients(c, theta, one(x));
  CHECK(r.value == doctest::Approx(c.evaluate(theta, one(x))));
  CHECK(r.d_theta == grad_theta(c, theta, one(x)));
  CHECK(r.d_x == grad_x(c, theta, one(x)));
  CHECK(r.evaluations == 1 + 2 * 6 + 2 * 6);
}

TEST_CASE("spectral derivatives agree with shift rules and differences") {
  const Circuit c(CircuitSpec::reference());
  SplitMix64 rng(42);
  for (int t = 0; t < 10; ++t) {
    const auto theta = initial_theta(6, rng.next());
    const double x = rng.uniform(-kPi, kPi);
    CHECK(spectral_derivative(c, theta, one(x), {0, 0, 0}) == doctest::Approx(c.evaluate(theta, one(x))));
    CHECK(spectral_derivative(c, theta, one(x), {1, 0, 0}) ==
          doctest::Approx(grad_x(c, theta, one(x))[0]).epsilon(1e-10).scale(1.0));
    // Second derivative against a difference of first derivatives.
    const double h = 1e-4;
    const double xp = x + h, xm = x - h;
    const double d2fd = (grad_x(c, theta, one(xp))[0] - grad_x(c, theta, one(xm))[0]) / (2 * h);
    CHECK(spectral_derivative(c, theta, one(x), {2, 0, 0}) == doctest::Approx(d2fd).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("model series reproduces the circuit") {
  const Circuit c(CircuitSpec::reference());
  const auto theta = initial_theta(6, 9);
  const auto s = model_series(c, theta);
  CHECK(s.max_degree() <= 6);
  for (double x = -3.0; x <= 3.0; x += 0.37)
    CHECK(s(one(x)) == doctest::Approx(c.evaluate(theta, one(x))).epsilon(1e-12).scale(1.0));
  const auto f = model_sobolev(c, theta, 2);
  CHECK(f.order == 2);
  const double x = 0.8;
  CHECK(f(one(x), {1, 0, 0}) == doctest::Approx(grad_x(c, theta, one(x))[0]).scale(1.0));
}

TEST_CASE("encoding scale multiplies input derivatives") {
  auto spec = CircuitSpec::reference();
  spec.encoding_scale = 2.0;
  const Circuit c2(spec);
  const Circuit c1(CircuitSpec::reference());
  const auto theta = initial_theta(6, 17);
  const double x = 0.3, x2 = 0.6;
  CHECK(c2.evaluate(theta, one(x)) == doctest::Approx(c1.evaluate(theta, one(x2))));
  CHECK(grad_x(c2, theta, one(x))[0] == doctest::Approx(2.0 * grad_x(c1, theta, one(x2))[0]).scale(1.0));
  CHECK(finite_difference_x(c2, theta, one(x))[0] == doctest::Approx(grad_x(c2, theta, one(x))[0]).epsilon(1e-6).scale(1.0));
}

TEST_CASE("two-input gradients") {
  auto spec = CircuitSpec::reference();
  spec.input_dim = 2;
  const Circuit c(spec);
  const auto theta = initial_theta(spec.parameter_count(), 3);
  const std::vector<double> x{0.2, -1.1};
  const auto gx = grad_x(c, theta, x);
  const auto fx = finite_difference_x(c, theta, x);
  REQUIRE(gx.size() == 2);
  for (int d = 0; d < 2; ++d) CHECK(gx[d] == doctest::Approx(fx[d]).epsilon(1e-6).scale(1.0));
  CHECK(spectral_derivative(c, theta, x, {1, 1, 0}) ==
        doctest::Approx((grad_x(c, theta, std::vector<double>{0.2, -1.1 + 1e-4})[0] -
                         grad_x(c, theta, std::vector<double>{0.2, -1.1 - 1e-4})[0]) / 2e-4)
            .epsilon(1e-6)
            .scale(1.0));
}
