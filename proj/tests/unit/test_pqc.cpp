#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "sobolev_pqc/pqc.hpp"
#include "sobolev_pqc/rng.hpp"
#include "sobolev_pqc/trainer.hpp"
#include "sobolev_pqc/trigseries.hpp"

using namespace spqc;

namespace {
double eval1(const Circuit& c, const std::vector<double>& theta, double x) {
  return c.evaluate(theta, std::span<const double>(&x, 1));
}
}  // namespace

TEST_CASE("reference circuit fixed points") {
  const Circuit c(CircuitSpec::reference());
  const std::vector<double> zero(6, 0.0);
  CHECK(eval1(c, zero, 0.0) == doctest::Approx(1.0));
  CHECK(eval1(c, zero, kTwoPi) == doctest::Approx(1.0));
  CHECK(c.spec().parameter_count() == 6);
  CHECK(param_index(c.spec(), 1, 2) == 5);
}

TEST_CASE("circuit matches the dense-matrix oracle") {
  const Circuit c(CircuitSpec::reference());
  CircuitSpec ry = CircuitSpec::reference();
  ry.encoding_gate = EncodingGate::RY;
  const Circuit cy(ry);
  SplitMix64 rng(7);
  for (int t = 0; t < 30; ++t) {
    const auto theta = initial_theta(6, rng.next());
    const double x = rng.uniform(-4, 4);
    CHECK(eval1(c, theta, x) == doctest::Approx(oracle::reference_model(theta, x)).epsilon(1e-12));
    CHECK(eval1(cy, theta, x) ==
          doctest::Approx(oracle::reference_model(theta, x, 3, true)).epsilon(1e-12));
  }
}

TEST_CASE("rx encoding with real trainable gates gives an even model") {
  const Circuit c(CircuitSpec::reference());
  SplitMix64 rng(8);
  for (int t = 0; t < 20; ++t) {
    const auto theta = initial_theta(6, rng.next());
    const double x = rng.uniform(0, kPi);
    CHECK(std::abs(eval1(c, theta, x) - eval1(c, theta, -x)) < 1e-12);
  }
}

TEST_CASE("periodicity, output bound and band limit") {
  const Circuit c(CircuitSpec::reference());
  SplitMix64 rng(9);
  for (int t = 0; t < 5; ++t) {
    const auto theta = initial_theta(6, rng.next());
    for (int i = 0; i <= 100; ++i) {
      const double x = -kPi + kTwoPi * i / 100.0;
      CHECK(std::abs(eval1(c, theta, x) - eval1(c, theta, x + kTwoPi)) < 1e-10);
      CHECK(std::abs(eval1(c, theta, x)) <= 1.0 + 1e-12);
    }
    // DFT far above the claimed degree: nothing beyond |w| = 6.
    const auto s = extract_series([&](std::span<const double> x) { return c.evaluate(theta, x); }, 1, 20, 4096);
    double tail = 0.0;
    for (int w = 7; w <= 20; ++w) tail += std::norm(s.coefficient({w, 0, 0}));
    CHECK(std::sqrt(tail) < 1e-10);
  }
}

TEST_CASE("frequency spectra") {
  const std::vector<double> one{-0.5, 0.5};
  CHECK(frequency_spectrum(one).frequencies == std::vector<double>{-1, 0, 1});
  const std::vector<double> two{-1, 0, 0, 1};
  CHECK(frequency_spectrum(two).frequencies == std::vector<double>{-2, -1, 0, 1, 2});
  const std::vector<double> zero{0.0};
  CHECK(frequency_spectrum(zero).frequencies == std::vector<double>{0});
  CHECK_THROWS(frequency_spectrum(std::vector<double>{}));
  const auto fs = frequency_spectrum(two);
  CHECK(fs.contains(2.0));
  CHECK_FALSE(fs.contains(3.0));
  CHECK(fs.max_frequency() == 2.0);
}

TEST_CASE("model degree") {
  const auto d = model_degree(CircuitSpec::reference());
  CHECK(d.integral);
  CHECK(d.K == 6);
  CHECK(d.spectrum.frequencies.size() == 13);
  CircuitSpec one;
  one.n_qubits = 1;
  one.n_layers = 1;
  one.entanglers.clear();
  one.observable = Observable::mean_z(1);
  CHECK(model_degree(one).K == 1);
  one.n_layers = 2;
  CHECK(model_degree(one).K == 2);
  one.encoding_scale = 0.5;
  CHECK_FALSE(model_degree(one).integral);
  CHECK(model_degree(one).max_frequency == doctest::Approx(1.0));
}

TEST_CASE("circuit validation and size checks") {
  CircuitSpec bad = CircuitSpec::reference();
  bad.entanglers = {{0, 2}};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = CircuitSpec::reference();
  bad.n_qubits = 3;
  bad.input_dim = 2;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  const Circuit c(CircuitSpec::reference());
  const std::vector<double> five(5, 0.0), x(1, 0.0), x2(2, 0.0), six(6, 0.0);
  CHECK_THROWS_AS(c.evaluate(five, x), std::invalid_argument);
  CHECK_THROWS_AS(c.evaluate(six, x2), std::invalid_argument);
}

TEST_CASE("two-dimensional inputs use separate qubit blocks") {
  CircuitSpec s = CircuitSpec::reference();
  s.input_dim = 2;
  const Circuit c(s);
  const auto d = model_degree(s);
  CHECK(d.K == 3);
  const auto theta = initial_theta(6, 3);
  const std::vector<double> x{0.3, -1.1};
  const auto series = extract_series([&](std::span<const double> y) { return c.evaluate(theta, y); }, 2, 3);
  CHECK(series(x) == doctest::Approx(c.evaluate(theta, x)).epsilon(1e-12));
}
