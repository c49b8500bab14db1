#include <doctest.h>

#include <cmath>

#include "sobolev_pqc/bounds.hpp"
#include "sobolev_pqc/metrics.hpp"
#include "sobolev_pqc/rng.hpp"
#include "sobolev_pqc/trigseries.hpp"

using namespace spqc;

namespace {

double at(const TrigSeries& s, double x) { return s(std::span<const double>(&x, 1)); }

TrigSeries cos_series() {
  return TrigSeries(1, {{1, 0, 0}, {-1, 0, 0}}, {Complex(0.5, 0), Complex(0.5, 0)});
}

// Naive O(P^2) DFT coefficient, independent of the library's separable DFT.
Complex naive_coefficient(const std::function<double(double)>& f, int P, int w) {
  Complex acc(0, 0);
  for (int m = 0; m < P; ++m) {
    const double x = kTwoPi * m / P;
    acc += f(x) * std::polar(1.0, -w * x);
  }
  return acc / static_cast<double>(P);
}

}  // namespace

TEST_CASE("series construction and evaluation") {
  const TrigSeries c05(1, {{0, 0, 0}}, {Complex(0.5, 0)});
  CHECK(at(c05, 1.234) == doctest::Approx(0.5));
  CHECK(at(cos_series(), 0.0) == doctest::Approx(1.0));
  CHECK(at(cos_series(), kPi) == doctest::Approx(-1.0));
  CHECK(cos_series().max_degree() == 1);
  // Not real-valued: c_1 != conj(c_-1).
  CHECK_THROWS_AS(TrigSeries(1, {{1, 0, 0}, {-1, 0, 0}}, {Complex(0.5, 0), Complex(0.2, 0)}),
                  std::invalid_argument);
  // Missing mirror with a real coefficient.
  CHECK_THROWS_AS(TrigSeries(1, {{2, 0, 0}}, {Complex(0.5, 0)}), std::invalid_argument);
  CHECK_THROWS_AS(TrigSeries(1, {{0, 0, 0}, {0, 0, 0}}, {Complex(1, 0), Complex(1, 0)}),
                  std::invalid_argument);
}

TEST_CASE("extract_series recovers known coefficients") {
  const auto s = extract_series([](std::span<const double> x) { return std::cos(x[0]); }, 1, 3);
  CHECK(std::abs(s.coefficient({1, 0, 0}) - Complex(0.5, 0)) < 1e-12);
  CHECK(std::abs(s.coefficient({-1, 0, 0}) - Complex(0.5, 0)) < 1e-12);
  CHECK(std::abs(s.coefficient({2, 0, 0})) < 1e-12);
  const auto c = extract_series([](std::span<const double>) { return 0.25; }, 1, 4);
  CHECK(std::abs(c.coefficient({0, 0, 0}) - Complex(0.25, 0)) < 1e-12);
  for (int w = 1; w <= 4; ++w) CHECK(std::abs(c.coefficient({w, 0, 0})) < 1e-12);
  const auto sn = extract_series([](std::span<const double> x) { return std::sin(2 * x[0]); }, 1, 2);
  CHECK(std::abs(sn.coefficient({2, 0, 0}) - Complex(0, -0.5)) < 1e-12);
  CHECK_THROWS(extract_series([](std::span<const double>) { return 0.0; }, 1, -1));
  CHECK_THROWS(extract_series([](std::span<const double>) { return 0.0; }, 1, 3, 7));
}

TEST_CASE("DFT agrees with a naive transform for non-band-limited data") {
  const auto f = [](double x) { return std::exp(std::sin(x)) * x; };
  const int P = 64, K = 10;
  std::vector<double> samples(P);
  for (int m = 0; m < P; ++m) samples[m] = f(kTwoPi * m / P);
  const auto coeffs = dft_coefficients(samples, 1, P, K);
  const auto freqs = box_frequencies(1, K);
  for (std::size_t i = 0; i < freqs.size(); ++i)
    CHECK(std::abs(coeffs[i] - naive_coefficient(f, P, freqs[i][0])) < 1e-12);
  const auto serial = dft_coefficients(samples, 1, P, K, kernels::Exec::Serial);
  const auto parallel = dft_coefficients(samples, 1, P, K, kernels::Exec::Parallel);
  for (std::size_t i = 0; i < serial.size(); ++i) CHECK(serial[i] == parallel[i]);
}

TEST_CASE("round trip on random band-limited series in 1 to 3 dimensions") {
  SplitMix64 rng(5);
  for (int N = 1; N <= 3; ++N) {
    const int K = 4 - N;
    const auto freqs = box_frequencies(N, K);
    std::vector<Complex> c(freqs.size());
    for (std::size_t i = 0; i < freqs.size(); ++i) {
      const std::size_t m = freqs.size() - 1 - i;
      if (m < i) continue;
      c[i] = m == i ? Complex(rng.uniform(-1, 1), 0) : Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
      c[m] = std::conj(c[i]);
    }
    const auto s = TrigSeries::from_dense(N, K, c);
    const auto back = extract_series([&](std::span<const double> x) { return s(x); }, N, K);
    for (const auto& w : freqs) CHECK(std::abs(back.coefficient(w) - s.coefficient(w)) < 1e-12);
  }
}

TEST_CASE("fejer means") {
  const TrigSeries c(1, {{0, 0, 0}}, {Complex(0.7, 0)});
  CHECK(at(fejer_mean(c, 3), 0.4) == doctest::Approx(0.7));
  const auto f = fejer_mean(cos_series(), 2);
  CHECK(std::abs(f.coefficient({1, 0, 0}) - Complex(0.25, 0)) < 1e-15);
  CHECK_THROWS(fejer_mean(cos_series(), 0));
  // l1 weights in two dimensions: (1 - (1 + 1) / (2 * 2)) at j = (1, 1).
  const TrigSeries xy(2, {{1, 1, 0}, {-1, -1, 0}}, {Complex(1, 0), Complex(1, 0)});
  CHECK(std::abs(fejer_mean(xy, 2).coefficient({1, 1, 0}) - Complex(0.5, 0)) < 1e-15);
}

TEST_CASE("differentiation") {
  const auto d = differentiate(cos_series(), {1, 0, 0});
  CHECK(at(d, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(at(d, kPi / 2) == doctest::Approx(-1.0));
  const auto same = differentiate(cos_series(), {0, 0, 0});
  CHECK(at(same, 0.3) == doctest::Approx(at(cos_series(), 0.3)));
  // Linear in the series.
  const auto g = random_band_limited(3, 1);
  const auto lhs = differentiate(g * 2.0 + cos_series(), {2, 0, 0});
  const auto rhs = differentiate(g, {2, 0, 0}) * 2.0 + differentiate(cos_series(), {2, 0, 0});
  for (double x : {0.1, 1.7, 4.2}) CHECK(std::abs(at(lhs, x) - at(rhs, x)) < 1e-12);
}

TEST_CASE("coefficient norms") {
  const auto n = coefficient_norms(cos_series());
  CHECK(n.b_tilde == doctest::Approx(1.0));
  CHECK(n.sup_estimate == doctest::Approx(1.0));
  const auto h = coefficient_norms(TrigSeries(1, {{0, 0, 0}}, {Complex(0.5, 0)}));
  CHECK(h.b_tilde == doctest::Approx(1.0));
  CHECK(h.sup_estimate == doctest::Approx(0.5));
  // a cos x + b sin x: a = 0.3, b = 0.4.
  const TrigSeries ab(1, {{1, 0, 0}, {-1, 0, 0}}, {Complex(0.15, -0.2), Complex(0.15, 0.2)});
  CHECK(coefficient_norms(ab).b_tilde == doctest::Approx(0.5));
  CHECK(coefficient_norms(ab).sup_estimate == doctest::Approx(0.5).epsilon(1e-5));
}

TEST_CASE("mollifier") {
  const Mollifier m;
  CHECK(m.density(1.0) == 0.0);
  CHECK(m.density(-1.5) == 0.0);
  CHECK(m.cdf(-1.0) == doctest::Approx(0.0));
  CHECK(m.cdf(1.0) == doctest::Approx(1.0));
  CHECK(m.cdf(0.0) == doctest::Approx(0.5).epsilon(1e-12));
  double prev = -1.0;
  for (int i = 0; i <= 100; ++i) {
    const double v = m.cdf(-1.0 + 0.02 * i);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("periodic extension") {
  const Box U = Box::interval(kPi / 2, 3 * kPi / 2);
  const double delta = kPi / 8;
  SUBCASE("zero target stays zero") {
    const auto e = periodic_extension([](std::span<const double>) { return 0.0; }, U, delta);
    for (double v : e.grid_values()) CHECK(v == 0.0);
  }
  SUBCASE("constant one gives a monotone ramp") {
    const auto e = periodic_extension([](std::span<const double>) { return 1.0; }, U, delta);
    auto ev = [&](double x) { return e(std::span<const double>(&x, 1)); };
    CHECK(ev(kPi) == doctest::Approx(1.0));
    CHECK(ev(kPi / 2) == doctest::Approx(1.0));
    CHECK(ev(kPi / 2 - kPi / 4 - 1e-9) == 0.0);
    CHECK(ev(3 * kPi / 2 + kPi / 4 + 1e-9) == 0.0);
    double prev = 0.0;
    for (int i = 0; i <= 50; ++i) {
      const double v = ev(kPi / 4 + (kPi / 4) * i / 50.0);
      CHECK(v >= prev - 1e-15);
      prev = v;
    }
    CHECK(std::abs(ev(0.0) - ev(kTwoPi)) < 1e-10);
  }
  SUBCASE("extension smooths the sawtooth spectrum") {
    const auto e = periodic_extension([](std::span<const double> x) { return x[0] / kTwoPi; }, U, delta);
    const auto s = extract_series(e.as_function(), 1, 64, 4096);
    std::vector<double> lx, ly;
    for (int j = 4; j <= 64; ++j) {
      lx.push_back(std::log(j));
      ly.push_back(std::log(std::abs(s.coefficient({j, 0, 0})) + 1e-300));
    }
    // Envelope decay: fit on the running maximum from the right.
    for (int i = static_cast<int>(ly.size()) - 2; i >= 0; --i) ly[i] = std::max(ly[i], ly[i + 1]);
    CHECK(fit_slope(lx, ly) < -1.5);
  }
  SUBCASE("inflation must stay inside the torus cell") {
    CHECK_THROWS_AS(periodic_extension([](std::span<const double>) { return 0.0; }, U, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(periodic_extension([](std::span<const double>) { return 0.0; }, U, 0.0),
                    std::invalid_argument);
  }
}

TEST_CASE("fejer mean does not exceed the target sup norm") {
  SplitMix64 rng(12);
  for (int t = 0; t < 5; ++t) {
    const auto f = random_band_limited(10, rng.next());
    for (int K : {1, 3, 6, 12}) {
      const auto s = fejer_mean(f, K);
      CHECK(coefficient_norms(s).sup_estimate <= coefficient_norms(f).sup_estimate + 1e-9);
    }
  }
}
