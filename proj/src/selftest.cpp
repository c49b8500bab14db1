#include "sobolev_pqc/selftest.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include "sobolev_pqc/autodiff.hpp"
#include "sobolev_pqc/bounds.hpp"
#include "sobolev_pqc/experiments.hpp"
#include "sobolev_pqc/metrics.hpp"
#include "sobolev_pqc/pqc.hpp"
#include "sobolev_pqc/rng.hpp"
#include "sobolev_pqc/trainer.hpp"
#include "sobolev_pqc/trigseries.hpp"

namespace spqc {

bool SelftestReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return !checks.empty();
}

namespace {

std::string fmt(const char* format, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, format, a, b);
  return buf;
}

// Random real series on Z_K^N with coefficients in the unit box.
TrigSeries random_series(int N, int K, SplitMix64& rng) {
  const auto freqs = box_frequencies(N, K);
  std::vector<Complex> c(freqs.size());
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    // box_frequencies is symmetric about its midpoint: entry i mirrors entry n-1-i.
    const std::size_t m = freqs.size() - 1 - i;
    if (m < i) continue;
    if (m == i) {
      c[i] = Complex(rng.uniform(-1, 1), 0.0);
    } else {
      c[i] = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
      c[m] = std::conj(c[i]);
    }
  }
  return TrigSeries::from_dense(N, K, c);
}

SelftestCheck unitarity() {
  SplitMix64 rng(1);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    auto s = StateVector::zero(4);
    for (int g = 0; g < 40; ++g) {
      const int q = static_cast<int>(rng.next() % 4);
      const int t = (q + 1 + static_cast<int>(rng.next() % 3)) % 4;
      switch (rng.next() % 3) {
        case 0: s.apply_inplace(Gate::rx(q, rng.uniform(-10, 10))); break;
        case 1: s.apply_inplace(Gate::ry(q, rng.uniform(-10, 10))); break;
        default: s.apply_inplace(Gate::cnot(q, t)); break;
      }
    }
    worst = std::max(worst, std::abs(s.norm_squared() - 1.0));
  }
  for (auto kind : {GateKind::RX, GateKind::RY}) {
    const auto m = rotation_matrix(kind, 0.7);
    // U^dagger U = 1
    const Complex a = std::conj(m[0]) * m[0] + std::conj(m[2]) * m[2];
    const Complex b = std::conj(m[0]) * m[1] + std::conj(m[2]) * m[3];
    const Complex d = std::conj(m[1]) * m[1] + std::conj(m[3]) * m[3];
    worst = std::max({worst, std::abs(a - 1.0), std::abs(b), std::abs(d - 1.0)});
  }
  return {"statevector unitarity", worst < 1e-12, fmt("max norm drift %.3g", worst)};
}

SelftestCheck output_bound() {
  const Circuit c(CircuitSpec::reference());
  SplitMix64 rng(2);
  double worst = 0.0;
  for (int t = 0; t < 500; ++t) {
    const auto theta = initial_theta(6, rng.next());
    const double x = rng.uniform(-kPi, kPi);
    worst = std::max(worst, std::abs(c.evaluate(theta, std::span<const double>(&x, 1))));
  }
  return {"model output bounded by the observable norm", worst <= 1.0 + 1e-12,
          fmt("max |f| %.6f", worst)};
}

SelftestCheck dft_round_trip() {
  SplitMix64 rng(3);
  double worst = 0.0;
  for (int N = 1; N <= 3; ++N) {
    const int K = N == 1 ? 7 : (N == 2 ? 4 : 2);
    const auto s = random_series(N, K, rng);
    const auto back = extract_series([&s](std::span<const double> x) { return s(x); }, N, K);
    for (const auto& w : box_frequencies(N, K))
      worst = std::max(worst, std::abs(back.coefficient(w) - s.coefficient(w)));
  }
  return {"DFT round trip on band-limited series", worst < 1e-12, fmt("max coefficient error %.3g", worst)};
}

SelftestCheck surrogate_matches_circuit() {
  const Circuit c(CircuitSpec::reference());
  SplitMix64 rng(4);
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    const auto theta = initial_theta(6, rng.next());
    const auto s = model_series(c, theta);
    for (int i = 0; i < 10; ++i) {
      const double x = rng.uniform(-kPi, kPi);
      const std::span<const double> xs(&x, 1);
      worst = std::max(worst, std::abs(s(xs) - c.evaluate(theta, xs)));
    }
  }
  return {"trigonometric surrogate reproduces the circuit", worst < 1e-10, fmt("max error %.3g", worst)};
}

SelftestCheck gradient_agreement() {
  const Circuit c(CircuitSpec::reference());
  SplitMix64 rng(5);
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    const auto theta = initial_theta(6, rng.next());
    const double x = rng.uniform(-kPi, kPi);
    const std::span<const double> xs(&x, 1);
    const auto ps = grad_theta(c, theta, xs);
    const auto fd = finite_difference_theta(c, theta, xs);
    for (std::size_t j = 0; j < ps.size(); ++j) worst = std::max(worst, std::abs(ps[j] - fd[j]));
    const double gx = grad_x(c, theta, xs)[0];
    worst = std::max(worst, std::abs(gx - finite_difference_x(c, theta, xs)[0]));
    worst = std::max(worst, std::abs(gx - spectral_derivative(c, theta, xs, {1, 0, 0})));
  }
  return {"shift rules agree with finite differences and spectral derivatives", worst < 1e-7,
          fmt("max disagreement %.3g", worst)};
}

SelftestCheck norm_orderings() {
  SplitMix64 rng(6);
  const GridSpec grid = GridSpec::interval(0.0, kTwoPi, 1001);
  bool ok = true;
  double gap = 0.0;
  for (int t = 0; t < 20; ++t) {
    const auto a = random_series(1, 3, rng);
    const auto b = random_series(1, 3, rng);
    const Function fa = [&a](std::span<const double> x) { return a(x); };
    const Function fb = [&b](std::span<const double> x) { return b(x); };
    const double l1 = dist_Lp(fa, fb, 1.0, grid);
    const double l2 = dist_Lp(fa, fb, 2.0, grid);
    const double l4 = dist_Lp(fa, fb, 4.0, grid);
    const double c0 = dist_C0(fa, fb, grid);
    const auto da = differentiate(a, {1, 0, 0});
    const auto db = differentiate(b, {1, 0, 0});
    const SobolevFunction sa{1, 1, [&](std::span<const double> x, const MultiIndex& al) {
                               return al[0] == 0 ? a(x) : da(x);
                             }};
    const SobolevFunction sb{1, 1, [&](std::span<const double> x, const MultiIndex& al) {
                               return al[0] == 0 ? b(x) : db(x);
                             }};
    const double h0 = dist_Hk(sa, sb, 0, grid);
    const double h1 = dist_Hk(sa, sb, 1, grid);
    ok = ok && l1 <= l2 && l2 <= l4 && l4 <= c0 && h0 == l2 && l2 <= h1;
    gap = std::max(gap, std::abs(h0 - l2));
  }
  return {"L1 <= L2 <= L4 <= C0 and H0 == L2 <= H1", ok, fmt("max |H0 - L2| %.3g", gap)};
}

SelftestCheck fejer_sup_bound() {
  SplitMix64 rng(7);
  bool ok = true;
  double worst = -1e300;
  for (int t = 0; t < 10; ++t) {
    const auto f = random_series(1, 12, rng);
    const auto norms_f = coefficient_norms(f);
    for (int K : {2, 5, 9}) {
      const auto sigma = fejer_mean(f, K);
      const double excess = coefficient_norms(sigma).sup_estimate - norms_f.sup_estimate;
      worst = std::max(worst, excess);
      ok = ok && excess <= 1e-9;
    }
  }
  return {"Fejer mean does not increase the sup norm", ok, fmt("max excess %.3g", worst)};
}

SelftestCheck extension_properties() {
  const Function f = [](std::span<const double> x) { return x[0] / kTwoPi; };
  ExtensionOptions opts;
  opts.torus_origin = -kPi;
  const auto ext = periodic_extension(f, Box::interval(-kPi / 2, kPi / 2), kPi / 8, opts);
  double on_U = 0.0, outside = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double x = -kPi / 2 + kPi * i / 200.0;
    on_U = std::max(on_U, std::abs(ext(std::span<const double>(&x, 1)) - f(std::span<const double>(&x, 1))));
    const double y = kPi / 2 + kPi / 4 + 1e-9 + (kPi / 4 - 2e-9) * i / 200.0;
    outside = std::max(outside, std::abs(ext(std::span<const double>(&y, 1))));
  }
  const double a = -kPi, b = kPi;
  const double period = std::abs(ext(std::span<const double>(&a, 1)) - ext(std::span<const double>(&b, 1)));
  const bool ok = on_U < 1e-12 && outside == 0.0 && period < 1e-10;
  return {"periodic extension agrees on U, vanishes off V, is periodic", ok,
          fmt("max |ext - f| on U %.3g, max |ext| off V %.3g", on_U, outside)};
}

SelftestCheck bound_properties() {
  bool ok = true;
  BoundInputs in;
  in.omega = 13;
  in.xi = 2;
  in.c = 4.0;
  const double base = bound_term(in);
  BoundInputs more = in;
  more.I *= 4;
  ok = ok && std::abs(bound_term(more) - base / 2.0) < 1e-12 * base;
  for (auto mutate : std::vector<std::function<void(BoundInputs&)>>{
           [](BoundInputs& b) { b.xi += 1; }, [](BoundInputs& b) { b.B *= 1.5; },
           [](BoundInputs& b) { b.c *= 1.5; }}) {
    BoundInputs m = in;
    mutate(m);
    ok = ok && bound_term(m) > base;
  }
  for (int N = 1; N <= 6; ++N)
    for (int k = 0; k <= 6; ++k)
      for (double p : {1.0, 2.0, 3.0, 8.0, HUGE_VAL})
        if (2 * k <= N && classify_regime(N, k, p).regime == Regime::C0) ok = false;
  return {"bound term scaling and regime classification", ok, fmt("r(I=10) %.6f", base)};
}

SelftestCheck percentile_and_determinism() {
  ExperimentConfig cfg;
  cfg.repeats = 6;
  cfg.epochs = 5;
  cfg.eval_points = 101;
  const auto serial = run_experiment(cfg, kernels::Exec::Serial);
  const auto parallel = run_experiment(cfg, kernels::Exec::Parallel);
  bool monotone = true;
  for (std::size_t g = 0; g < serial.p50.size(); ++g)
    monotone = monotone && serial.p25[g] <= serial.p50[g] && serial.p50[g] <= serial.p75[g];
  const std::string a = serial.to_dat().to_string();
  const std::string b = parallel.to_dat().to_string();
  const bool same = a == b && run_experiment(cfg, kernels::Exec::Serial).to_dat().to_string() == a;
  const bool round_trip = DatTable::parse(a).to_string() == a;
  SelftestCheck c{"percentile monotonicity and byte-determinism", monotone && same && round_trip, ""};
  c.detail = std::string(monotone ? "p25<=p50<=p75" : "percentiles out of order") +
             (same ? ", serial == parallel output" : ", outputs differ") +
             (round_trip ? ", table round trip exact" : ", table round trip lossy");
  return c;
}

SelftestCheck backends_agree() {
  ExperimentConfig cfg;
  cfg.loss = LossKind::H1;
  const Dataset data = make_dataset(cfg, 0);
  const Circuit c(cfg.circuit);
  const auto theta = initial_theta(6, 9);
  const auto a = Objective(c, data, 1, GradientBackend::Surrogate).evaluate(theta);
  const auto b = Objective(c, data, 1, GradientBackend::Circuit).evaluate(theta);
  double worst = std::abs(a.loss_squared - b.loss_squared);
  for (std::size_t j = 0; j < a.grad.size(); ++j) worst = std::max(worst, std::abs(a.grad[j] - b.grad[j]));
  return {"surrogate and circuit training backends agree", worst < 1e-10, fmt("max difference %.3g", worst)};
}

}  // namespace

SelftestReport run_selftest() {
  const auto start = std::chrono::steady_clock::now();
  SelftestReport report;
  const std::vector<std::function<SelftestCheck()>> suite{
      unitarity,         output_bound,      dft_round_trip,   surrogate_matches_circuit,
      gradient_agreement, norm_orderings,    fejer_sup_bound,  extension_properties,
      bound_properties,  backends_agree,    percentile_and_determinism};
  for (const auto& check : suite) {
    try {
      report.checks.push_back(check());
    } catch (const std::exception& e) {
      report.checks.push_back({"(check threw)", false, e.what()});
    }
  }
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace spqc
