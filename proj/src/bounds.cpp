#include "sobolev_pqc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "sobolev_pqc/autodiff.hpp"
#include "sobolev_pqc/metrics.hpp"
#include "sobolev_pqc/rng.hpp"

namespace spqc {

void BoundInputs::validate() const {
  if (omega < 1 || xi < 1 || I < 1) throw std::invalid_argument("bound inputs: counts must be positive");
  if (!(B > 0.0) || !(B_tilde > 0.0) || !(L > 0.0) || !(c >= 0.0))
    throw std::invalid_argument("bound inputs: B, B~, L must be positive and c non-negative");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("bound inputs: delta must lie in (0, 1)");
}

double bound_term(const BoundInputs& in) {
  in.validate();
  const double n = static_cast<double>(in.I);
  const double logs = std::max(0.0, std::log(static_cast<double>(in.omega)) + std::log(in.B_tilde));
  const double complexity = static_cast<double>(in.xi) * in.B * in.L *
                            std::sqrt(static_cast<double>(in.omega) * logs / n);
  return complexity + in.c * std::sqrt(std::log(1.0 / in.delta) / n);
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::LpCase1: return "Lp-case-1";
    case Regime::LpCase2: return "Lp-case-2";
    case Regime::C0: return "C0";
    case Regime::Invalid: return "invalid";
  }
  return "invalid";
}

RegimeCheck classify_regime(int N, int k, double p) {
  RegimeCheck out{N, k, p, Regime::Invalid};
  if (N < 1 || k < 0 || std::isnan(p) || p < 1.0) return out;
  const double half = 0.5 * N;
  if (std::isinf(p)) {
    if (k > half) out.regime = Regime::C0;
    return out;
  }
  if (k >= half) {
    out.regime = Regime::LpCase2;
  } else if (N * (0.5 - 1.0 / p) < k && p < N) {
    out.regime = Regime::LpCase1;
  }
  return out;
}

TrigSeries random_band_limited(int degree, std::uint64_t seed) {
  if (degree < 0) throw std::invalid_argument("random_band_limited: negative degree");
  SplitMix64 rng(seed);
  const double scale = 1.0 / (2.0 * degree + 1.0);
  std::vector<Frequency> freqs;
  std::vector<Complex> coeffs;
  freqs.push_back({0, 0, 0});
  coeffs.emplace_back(rng.uniform(-1.0, 1.0) * scale, 0.0);
  for (int j = 1; j <= degree; ++j) {
    const double a = rng.uniform(-1.0, 1.0) * scale;
    const double b = rng.uniform(-1.0, 1.0) * scale;
    freqs.push_back({j, 0, 0});
    coeffs.emplace_back(0.5 * a, -0.5 * b);
    freqs.push_back({-j, 0, 0});
    coeffs.emplace_back(0.5 * a, 0.5 * b);
  }
  return TrigSeries(1, std::move(freqs), std::move(coeffs));
}

void GapStudyConfig::validate() const {
  try {
    circuit.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (circuit.input_dim != 1) throw ConfigError("gap study: input_dim must be 1");
  if (sample_sizes.size() < 2) throw ConfigError("gap study: need at least two sample sizes");
  for (int I : sample_sizes)
    if (I < 1) throw ConfigError("gap study: sample sizes must be positive");
  if (seeds < 1) throw ConfigError("gap study: seeds must be >= 1");
  if (target_degree < 0) throw ConfigError("gap study: target_degree must be >= 0");
  if (epochs < 1) throw ConfigError("gap study: epochs must be >= 1");
  if (eval_points < 2) throw ConfigError("gap study: eval_points must be >= 2");
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("gap study: delta must lie in (0, 1)");
  if (!(L > 0.0)) throw ConfigError("gap study: L must be positive");
}

namespace {

SobolevFunction series_sobolev(const TrigSeries& s) {
  auto d = std::make_shared<TrigSeries>(differentiate(s, {1, 0, 0}));
  auto f = std::make_shared<TrigSeries>(s);
  return {1, 1, [f, d](std::span<const double> x, const MultiIndex& alpha) {
            if (alpha[0] == 0) return (*f)(x);
            if (alpha[0] == 1) return (*d)(x);
            throw std::invalid_argument("series_sobolev: order above 1");
          }};
}

Dataset sample_h1(const TrigSeries& target, int I, std::uint64_t seed) {
  const auto d = differentiate(target, {1, 0, 0});
  SplitMix64 rng(seed);
  Dataset data;
  data.input_dim = 1;
  data.order = 1;
  for (int i = 0; i < I; ++i) {
    const double x = rng.uniform(0.0, kTwoPi);
    data.points.push_back(x);
    data.labels.push_back(target(std::span<const double>(&x, 1)));
    data.derivatives.push_back(d(std::span<const double>(&x, 1)));
  }
  return data;
}

std::vector<double> fit_h1(const CircuitSpec& spec, const Dataset& data, int epochs,
                           const AdamOptions& adam, GradientBackend backend, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.circuit = spec;
  cfg.loss = LossKind::H1;
  cfg.points = static_cast<int>(data.size());
  cfg.epochs = epochs;
  cfg.repeats = 1;
  cfg.adam = adam;
  cfg.backend = backend;
  return train(cfg, data, initial_theta(spec.parameter_count(), seed)).theta;
}

double mean(const std::vector<double>& v) {
  return kernels::pairwise_sum(v) / static_cast<double>(v.size());
}

}  // namespace

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_slope: need >= 2 pairs");
  const double mx = mean(x), my = mean(y);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_slope: degenerate abscissae");
  return sxy / sxx;
}

GapStudyResult empirical_gap_study(const GapStudyConfig& config, kernels::Exec exec) {
  config.validate();
  const Circuit circuit(config.circuit);
  const GridSpec grid = GridSpec::interval(0.0, kTwoPi, config.eval_points);
  const auto nodes = grid.nodes();
  const auto nI = config.sample_sizes.size();
  const auto nS = static_cast<std::size_t>(config.seeds);

  GapStudyResult out;
  out.records.resize(nI * nS);
  kernels::for_each_index(
      nI * nS,
      [&](std::size_t task) {
        const std::size_t ii = task / nS;
        const std::size_t s = task % nS;
        const int I = config.sample_sizes[ii];
        const std::uint64_t seed = config.base_seed + s;
        const TrigSeries target = random_band_limited(config.target_degree, derive_seed(seed, 11));
        const Dataset data = sample_h1(target, I, derive_seed(seed, 1000 + static_cast<std::uint64_t>(I)));
        const auto theta = fit_h1(config.circuit, data, config.epochs, config.adam, config.backend,
                                  derive_seed(seed, 13));
        const SobolevFunction model = model_sobolev(circuit, theta, 1);
        const SobolevFunction truth = series_sobolev(target);

        GapRecord& r = out.records[task];
        r.I = I;
        r.seed = static_cast<int>(seed);
        r.D_H1 = dist_Hk(model, truth, 1, grid);
        r.D_h1 = loss_hk(data, model, 1);
        const Function fm = [&model](std::span<const double> x) { return model(x, {0, 0, 0}); };
        const Function ft = [&truth](std::span<const double> x) { return truth(x, {0, 0, 0}); };
        r.D_C0 = dist_C0(fm, ft, grid);
        for (double x : nodes) {
          const std::span<const double> xs(&x, 1);
          const double e0 = model(xs, {0, 0, 0}) - truth(xs, {0, 0, 0});
          const double e1 = model(xs, {1, 0, 0}) - truth(xs, {1, 0, 0});
          r.max_pointwise_loss = std::max(r.max_pointwise_loss, e0 * e0 + e1 * e1);
        }
      },
      exec);

  for (const auto& r : out.records) out.c_measured = std::max(out.c_measured, r.max_pointwise_loss);

  const auto degree = model_degree(config.circuit);
  out.bound_base.omega = static_cast<long long>(degree.spectrum.frequencies.size());
  out.bound_base.xi = static_cast<long long>(multi_indices(1, 1).size());
  out.bound_base.B = config.circuit.observable.operator_norm(config.circuit.n_qubits);
  out.bound_base.B_tilde = 2.0 * out.bound_base.B;
  out.bound_base.L = config.L;
  out.bound_base.c = out.c_measured;
  out.bound_base.delta = config.delta;

  std::vector<double> log_I, log_abs, log_sq;
  for (std::size_t ii = 0; ii < nI; ++ii) {
    std::vector<double> gaps(nS), abs_gaps(nS), sq(nS), c0(nS);
    for (std::size_t s = 0; s < nS; ++s) {
      const auto& r = out.records[ii * nS + s];
      gaps[s] = r.gap();
      abs_gaps[s] = std::abs(r.gap());
      sq[s] = std::abs(r.gap_squared());
      c0[s] = r.gap_C0();
    }
    GapRow row;
    row.I = config.sample_sizes[ii];
    row.gap_mean = mean(gaps);
    row.gap_p25 = percentile(gaps, 0.25);
    row.gap_p75 = percentile(gaps, 0.75);
    row.abs_gap_mean = mean(abs_gaps);
    row.gap_squared_mean = mean(sq);
    row.gap_C0_mean = mean(c0);
    BoundInputs in = out.bound_base;
    in.I = row.I;
    row.bound_value = bound_term(in);
    for (std::size_t s = 0; s < nS; ++s) {
      const auto& r = out.records[ii * nS + s];
      if (r.D_H1 <= r.D_h1 + row.bound_value) ++row.bound_holds;
    }
    out.rows.push_back(row);
    log_I.push_back(std::log(static_cast<double>(row.I)));
    log_abs.push_back(std::log(std::max(row.abs_gap_mean, std::numeric_limits<double>::min())));
    log_sq.push_back(std::log(std::max(row.gap_squared_mean, std::numeric_limits<double>::min())));
  }
  out.slope = fit_slope(log_I, log_abs);
  out.slope_squared = fit_slope(log_I, log_sq);
  return out;
}

DatTable GapStudyResult::to_dat() const {
  DatTable t;
  t.columns = {"I", "gap_mean", "gap_p25", "gap_p75", "bound_value"};
  for (const auto& r : rows)
    t.add_row({static_cast<double>(r.I), r.gap_mean, r.gap_p25, r.gap_p75, r.bound_value});
  return t;
}

EmbeddingProbeConfig EmbeddingProbeConfig::standard() {
  EmbeddingProbeConfig c;
  for (std::uint64_t s = 1000; s < 1010; ++s) c.calibration_seeds.push_back(s);
  for (std::uint64_t s = 0; s < 20; ++s) c.test_seeds.push_back(s);
  return c;
}

EmbeddingProbeResult embedding_probe(const EmbeddingProbeConfig& config, kernels::Exec exec) {
  if (config.circuit.input_dim != 1) throw ConfigError("embedding probe: input_dim must be 1");
  if (config.calibration_seeds.empty() || config.test_seeds.empty() || config.models_per_seed < 1)
    throw ConfigError("embedding probe: empty seed sets");
  const Circuit circuit(config.circuit);
  const GridSpec grid = GridSpec::interval(0.0, kTwoPi, config.eval_points);

  struct Pair {
    std::uint64_t seed;
    int model;
  };
  std::vector<Pair> pairs;
  for (auto s : config.calibration_seeds) pairs.push_back({s, 0});
  for (auto s : config.test_seeds)
    for (int m = 0; m < config.models_per_seed; ++m) pairs.push_back({s, m});

  std::vector<double> ratios(pairs.size());
  kernels::for_each_index(
      pairs.size(),
      [&](std::size_t p) {
        const auto [seed, m] = pairs[p];
        const TrigSeries target = random_band_limited(config.target_degree, derive_seed(seed, 11));
        const Dataset data = sample_h1(target, config.train_points, derive_seed(seed, 17));
        const auto theta = fit_h1(config.circuit, data, config.epochs, config.adam,
                                  GradientBackend::Surrogate,
                                  derive_seed(seed, 100 + static_cast<std::uint64_t>(m)));
        const SobolevFunction model = model_sobolev(circuit, theta, 1);
        const SobolevFunction truth = series_sobolev(target);
        const Function fm = [&model](std::span<const double> x) { return model(x, {0, 0, 0}); };
        const Function ft = [&truth](std::span<const double> x) { return truth(x, {0, 0, 0}); };
        ratios[p] = dist_C0(fm, ft, grid) / dist_Hk(model, truth, 1, grid);
      },
      exec);

  EmbeddingProbeResult out;
  const auto nc = config.calibration_seeds.size();
  out.calibration_ratios.assign(ratios.begin(), ratios.begin() + static_cast<long>(nc));
  out.test_ratios.assign(ratios.begin() + static_cast<long>(nc), ratios.end());
  out.C = *std::max_element(out.calibration_ratios.begin(), out.calibration_ratios.end());
  std::size_t covered = 0;
  for (double r : out.test_ratios)
    if (r <= out.C) ++covered;
  out.coverage = static_cast<double>(covered) / static_cast<double>(out.test_ratios.size());
  const double mu = mean(out.test_ratios);
  double var = 0.0;
  for (double r : out.test_ratios) var += (r - mu) * (r - mu);
  var /= static_cast<double>(out.test_ratios.size());
  out.cv = std::sqrt(var) / mu;
  return out;
}

}  // namespace spqc
