#include <doctest.h>

#include <cmath>
#include <limits>

#include "sobolev_pqc/bounds.hpp"
#include "sobolev_pqc/metrics.hpp"

using namespace spqc;

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();

BoundInputs reference_inputs() {
  BoundInputs in;
  in.omega = 13;
  in.xi = 2;
  in.B = 1.0;
  in.B_tilde = 2.0;
  in.L = 1.0;
  in.c = 4.0;
  in.I = 10;
  in.delta = 0.05;
  return in;
}
}  // namespace

TEST_CASE("bound term hand values") {
  CHECK(bound_term(reference_inputs()) == doctest::Approx(6.305409795265595).epsilon(1e-14));
  auto in = reference_inputs();
  in.c = 1.0;
  CHECK(bound_term(in) == doctest::Approx(4.663411303732002).epsilon(1e-14));

  BoundInputs deg;
  deg.omega = 1;
  deg.xi = 1;
  deg.B = deg.B_tilde = deg.L = 1.0;
  deg.c = 0.0;
  CHECK(bound_term(deg) == 0.0);
}

TEST_CASE("bound term scaling and monotonicity") {
  const auto base = reference_inputs();
  auto four = base;
  four.I = 40;
  CHECK(bound_term(four) == doctest::Approx(bound_term(base) / 2).epsilon(1e-14));
  for (long long I = 1; I < 2000; I *= 3) {
    auto a = base, b = base;
    a.I = I;
    b.I = I + 1;
    CHECK(bound_term(b) < bound_term(a));
  }
  auto up = base;
  up.xi = 3;
  CHECK(bound_term(up) > bound_term(base));
  up = base;
  up.B = 1.5;
  CHECK(bound_term(up) > bound_term(base));
  up = base;
  up.c = 4.5;
  CHECK(bound_term(up) > bound_term(base));
  up = base;
  up.delta = 0.01;
  CHECK(bound_term(up) > bound_term(base));
}

TEST_CASE("bound input validation") {
  for (double d : {0.0, 1.0, -0.5, 2.0}) {
    auto in = reference_inputs();
    in.delta = d;
    CHECK_THROWS_AS(bound_term(in), std::invalid_argument);
  }
  auto in = reference_inputs();
  in.I = 0;
  CHECK_THROWS(bound_term(in));
  in = reference_inputs();
  in.B = -1;
  CHECK_THROWS(bound_term(in));
}

TEST_CASE("regime classification") {
  CHECK(classify_regime(1, 1, inf).regime == Regime::C0);
  CHECK(classify_regime(2, 1, 4.0).regime == Regime::LpCase2);
  CHECK(classify_regime(4, 1, 3.0).regime == Regime::LpCase1);
  CHECK(classify_regime(4, 1, 5.0).regime == Regime::Invalid);
  CHECK(classify_regime(2, 1, inf).regime == Regime::Invalid);
  CHECK(classify_regime(1, 0, 0.5).regime == Regime::Invalid);
  for (int N = 1; N <= 6; ++N)
    for (int k = 0; k <= 6; ++k)
      for (double p : {1.0, 1.5, 2.0, 3.0, 4.0, 8.0, inf}) {
        const auto r = classify_regime(N, k, p);
        if (2 * k <= N) CHECK(r.regime != Regime::C0);
        CHECK(r.N == N);
        CHECK(r.k == k);
      }
  CHECK(to_string(Regime::LpCase1) != to_string(Regime::LpCase2));
}

TEST_CASE("random band-limited targets") {
  const auto s = random_band_limited(2, 5);
  CHECK(s.max_degree() <= 2);
  const auto t = random_band_limited(2, 5);
  for (double x = 0.0; x < kTwoPi; x += 0.5) {
    CHECK(s(std::span<const double>(&x, 1)) == t(std::span<const double>(&x, 1)));
    CHECK(std::abs(s(std::span<const double>(&x, 1))) <= 1.0);
  }
  CHECK(random_band_limited(0, 3).size() == 1);
  CHECK_THROWS(random_band_limited(-1, 3));
}

TEST_CASE("slope fit") {
  CHECK(fit_slope({0, 1, 2, 3}, {1, 3, 5, 7}) == doctest::Approx(2.0));
  std::vector<double> lx, ly;
  for (double I : {10.0, 40.0, 160.0}) {
    lx.push_back(std::log(I));
    ly.push_back(std::log(3.0 / std::sqrt(I)));
  }
  CHECK(fit_slope(lx, ly) == doctest::Approx(-0.5));
}

TEST_CASE("small gap study") {
  GapStudyConfig c;
  c.sample_sizes = {5, 20};
  c.seeds = 2;
  c.epochs = 3;
  c.eval_points = 101;
  const auto r = empirical_gap_study(c, kernels::Exec::Serial);
  REQUIRE(r.records.size() == 4);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.records[0].I == 5);
  CHECK(r.records[2].I == 20);
  CHECK(r.c_measured > 0.0);
  for (const auto& rec : r.records) {
    CHECK(rec.D_H1 >= 0.0);
    CHECK(rec.D_h1 >= 0.0);
    CHECK(rec.max_pointwise_loss <= r.c_measured);
  }
  for (const auto& row : r.rows) {
    CHECK(row.gap_p25 <= row.gap_p75);
    CHECK(row.abs_gap_mean >= std::abs(row.gap_mean) - 1e-15);
    CHECK(row.bound_holds >= 0);
    CHECK(row.bound_holds <= 2);
  }
  CHECK(r.rows[1].bound_value < r.rows[0].bound_value);
  const auto t = r.to_dat();
  CHECK(t.columns == std::vector<std::string>{"I", "gap_mean", "gap_p25", "gap_p75", "bound_value"});
  const auto p = empirical_gap_study(c, kernels::Exec::Parallel);
  CHECK(p.to_dat().to_string() == t.to_string());
  c.sample_sizes = {10};
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("small embedding probe") {
  auto c = EmbeddingProbeConfig::standard();
  CHECK(c.calibration_seeds.size() == 10);
  CHECK(c.test_seeds.size() == 20);
  c.calibration_seeds = {1000, 1001};
  c.test_seeds = {0, 1};
  c.models_per_seed = 2;
  c.epochs = 3;
  c.eval_points = 101;
  const auto r = embedding_probe(c, kernels::Exec::Serial);
  CHECK(r.calibration_ratios.size() == 2);
  CHECK(r.test_ratios.size() == 4);
  for (double v : r.test_ratios) CHECK(v > 0.0);
  CHECK(r.coverage >= 0.0);
  CHECK(r.coverage <= 1.0);
}
