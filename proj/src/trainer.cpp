#include "sobolev_pqc/trainer.hpp"

#include <algorithm>
#include <cmath>

#include "sobolev_pqc/autodiff.hpp"
#include "sobolev_pqc/rng.hpp"
#include "sobolev_pqc/trigseries.hpp"

namespace spqc {

std::string to_string(NormTarget t) {
  switch (t) {
    case NormTarget::Half: return "half";
    case NormTarget::Full: return "full";
    case NormTarget::Double: return "double";
  }
  return "?";
}

NormTarget parse_norm_target(const std::string& name) {
  if (name == "half") return NormTarget::Half;
  if (name == "full") return NormTarget::Full;
  if (name == "double") return NormTarget::Double;
  throw ConfigError("unknown normalization '" + name + "' (expected half, full or double)");
}

double norm_target_half_width(NormTarget t) {
  switch (t) {
    case NormTarget::Half: return kPi / 2.0;
    case NormTarget::Full: return kPi;
    case NormTarget::Double: return 2.0 * kPi;
  }
  return kPi;
}

std::string to_string(LossKind k) {
  switch (k) {
    case LossKind::L2: return "l2";
    case LossKind::H1: return "h1";
    case LossKind::Hk: return "hk";
  }
  return "?";
}

LossKind parse_loss_kind(const std::string& name) {
  if (name == "l2") return LossKind::L2;
  if (name == "h1") return LossKind::H1;
  if (name == "hk") return LossKind::Hk;
  throw ConfigError("unknown loss '" + name + "' (expected l2, h1 or hk)");
}

Normalizer::Normalizer(int input_dim, double a, double b, NormTarget target)
    : Normalizer(Box::cube(input_dim, a, b),
                 Box::cube(input_dim, -norm_target_half_width(target),
                           norm_target_half_width(target))) {}

Normalizer::Normalizer(Box source, Box target) : source_(source), target_(target) {
  if (source_.dim != target_.dim) throw std::invalid_argument("normalizer: dimension mismatch");
  for (int d = 0; d < source_.dim; ++d)
    if (!(source_.lo[d] < source_.hi[d]) || !(target_.lo[d] < target_.hi[d]))
      throw std::invalid_argument("normalizer: empty interval");
}

std::vector<double> Normalizer::normalize(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(source_.dim))
    throw std::invalid_argument("normalize: dimension mismatch");
  std::vector<double> out(x.size());
  for (int d = 0; d < source_.dim; ++d) {
    const double width = source_.hi[d] - source_.lo[d];
    const double tol = 1e-12 * width;
    if (!(x[d] >= source_.lo[d] - tol && x[d] <= source_.hi[d] + tol))
      throw std::invalid_argument("normalize: input outside the source interval");
    const double u = std::clamp((x[d] - source_.lo[d]) / width, 0.0, 1.0);
    out[d] = target_.lo[d] * (1.0 - u) + target_.hi[d] * u;
  }
  return out;
}

double Normalizer::slope(int d) const {
  return (target_.hi[d] - target_.lo[d]) / (source_.hi[d] - source_.lo[d]);
}

double Normalizer::derivative_scale(const MultiIndex& alpha) const {
  double s = 1.0;
  for (int d = 0; d < source_.dim; ++d)
    for (int a = 0; a < alpha[d]; ++a) s /= slope(d);
  return s;
}

Adam::Adam(std::size_t n, AdamOptions options) : opt_(options), m_(n, 0.0), v_(n, 0.0) {}

void Adam::step(std::span<double> params, std::span<const double> grad) {
  ++t_;
  const double c1 = 1.0 - std::pow(opt_.beta1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(opt_.beta2, static_cast<double>(t_));
  for (std::size_t i = 0; i < params.size(); ++i) {
    m_[i] = opt_.beta1 * m_[i] + (1.0 - opt_.beta1) * grad[i];
    v_[i] = opt_.beta2 * v_[i] + (1.0 - opt_.beta2) * grad[i] * grad[i];
    const double mhat = m_[i] / c1;
    const double vhat = v_[i] / c2;
    params[i] -= opt_.learning_rate * mhat / (std::sqrt(vhat) + opt_.epsilon);
  }
}

Target make_target(const std::string& id, int input_dim) {
  if (id == "linear") {
    const double scale = 1.0 / (kTwoPi * input_dim);
    return {id, input_dim, [input_dim, scale](std::span<const double> x, const MultiIndex& alpha) {
              const int order = l1_norm(alpha, input_dim);
              if (order == 0) {
                double s = 0.0;
                for (int d = 0; d < input_dim; ++d) s += x[d];
                return s * scale;
              }
              return order == 1 ? scale : 0.0;
            }};
  }
  throw ConfigError("unknown target '" + id + "' (expected linear)");
}

int ExperimentConfig::loss_order() const {
  switch (loss) {
    case LossKind::L2: return 0;
    case LossKind::H1: return 1;
    case LossKind::Hk: return k;
  }
  return 0;
}

Normalizer ExperimentConfig::normalizer() const {
  return Normalizer(circuit.input_dim, domain_lo, domain_hi, normalization);
}

void ExperimentConfig::validate() const {
  try {
    circuit.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!(domain_lo < domain_hi)) throw ConfigError("domain: lower bound must be below upper bound");
  if (points < 1) throw ConfigError("points must be >= 1");
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (repeats < 1) throw ConfigError("repeats must be >= 1");
  if (eval_points < 2) throw ConfigError("eval_points must be >= 2");
  if (loss == LossKind::Hk && k < 0) throw ConfigError("k must be >= 0");
  if (!(adam.learning_rate > 0.0)) throw ConfigError("adam.learning_rate must be positive");
  if (!(adam.beta1 >= 0.0 && adam.beta1 < 1.0) || !(adam.beta2 >= 0.0 && adam.beta2 < 1.0))
    throw ConfigError("adam betas must lie in [0, 1)");
  if (!(adam.epsilon > 0.0)) throw ConfigError("adam.epsilon must be positive");
  if (backend == GradientBackend::Circuit && loss_order() > 1)
    throw ConfigError("the circuit gradient backend supports loss orders 0 and 1 only");
  if (backend == GradientBackend::Surrogate && !model_degree(circuit).integral)
    throw ConfigError("the surrogate gradient backend needs an integer encoding scale");
  make_target(target, circuit.input_dim);
}

Dataset make_dataset(const ExperimentConfig& config, std::uint64_t seed) {
  config.validate();
  const int N = config.circuit.input_dim;
  const Normalizer norm = config.normalizer();
  const Target target = make_target(config.target, N);

  std::vector<double> raw;
  if (config.sampling == Sampling::Grid) {
    int per_axis = config.points;
    if (N > 1) per_axis = std::max(2, static_cast<int>(std::lround(std::pow(config.points, 1.0 / N))));
    if (per_axis == 1) {
      raw.assign(N, 0.5 * (config.domain_lo + config.domain_hi));
    } else {
      GridSpec grid{Box::cube(N, config.domain_lo, config.domain_hi), per_axis};
      raw = grid.nodes();
    }
  } else {
    SplitMix64 rng(derive_seed(seed, 1));
    raw.resize(static_cast<std::size_t>(config.points) * N);
    for (auto& v : raw) v = rng.uniform(config.domain_lo, config.domain_hi);
  }

  Dataset data;
  data.input_dim = N;
  data.order = config.loss_order();
  const auto alphas = multi_indices(N, data.order);
  const std::size_t count = raw.size() / N;
  for (std::size_t i = 0; i < count; ++i) {
    const std::span<const double> x(raw.data() + i * N, N);
    const auto xn = norm.normalize(x);
    data.points.insert(data.points.end(), xn.begin(), xn.end());
    data.labels.push_back(target.eval(x, alphas[0]));
    for (std::size_t a = 1; a < alphas.size(); ++a)
      data.derivatives.push_back(target.eval(x, alphas[a]) * norm.derivative_scale(alphas[a]));
  }
  data.validate();
  return data;
}

std::vector<double> initial_theta(int count, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> theta(count);
  for (auto& t : theta) t = rng.uniform(0.0, kTwoPi);
  return theta;
}

struct Objective::Impl {
  Circuit circuit;
  int N = 1;
  int order = 0;
  GradientBackend backend;
  std::size_t I = 0;
  std::vector<MultiIndex> alphas;
  std::vector<double> points;   // I x N
  std::vector<double> targets;  // I x A

  // Surrogate state.
  int K = 0;
  int P = 0;
  std::vector<double> grid;           // P^N x N
  std::vector<Complex> basis;         // A x I x F, derivative factors folded in
  std::size_t F = 0;

  Impl(const Circuit& c, const Dataset& data, int ord, GradientBackend b)
      : circuit(c), N(data.input_dim), order(ord), backend(b) {
    data.validate();
    if (N != c.spec().input_dim) throw std::invalid_argument("objective: dimension mismatch");
    if (order > data.order) throw std::invalid_argument("objective: derivative labels missing");
    if (backend == GradientBackend::Circuit && order > 1)
      throw std::invalid_argument("objective: circuit backend supports order <= 1");
    I = data.size();
    alphas = multi_indices(N, order);
    points = data.points;
    const std::size_t A = alphas.size();
    const std::size_t M = data.derivative_count();
    targets.resize(I * A);
    for (std::size_t i = 0; i < I; ++i) {
      targets[i * A] = data.labels[i];
      for (std::size_t a = 1; a < A; ++a) targets[i * A + a] = data.derivatives[i * M + a - 1];
    }
    if (backend == GradientBackend::Surrogate) {
      const auto degree = model_degree(c.spec());
      if (!degree.integral)
        throw std::invalid_argument("objective: surrogate backend needs an integer encoding scale");
      K = degree.K;
      P = 2 * K + 2;
      grid = periodic_grid_points(N, P);
      const auto freqs = box_frequencies(N, K);
      F = freqs.size();
      basis.resize(A * I * F);
      for (std::size_t a = 0; a < A; ++a) {
        for (std::size_t i = 0; i < I; ++i) {
          for (std::size_t j = 0; j < F; ++j) {
            double phase = 0.0;
            Complex factor(1.0, 0.0);
            for (int d = 0; d < N; ++d) {
              phase += freqs[j][d] * points[i * N + d];
              for (int r = 0; r < alphas[a][d]; ++r) factor *= Complex(0.0, freqs[j][d]);
            }
            basis[(a * I + i) * F + j] = factor * Complex(std::cos(phase), std::sin(phase));
          }
        }
      }
    }
  }

  // Model values and input derivatives (I x A) at parameters theta.
  std::vector<double> jets(std::span<const double> theta, long long& evals) const {
    const std::size_t A = alphas.size();
    std::vector<double> out(I * A);
    if (backend == GradientBackend::Surrogate) {
      const std::size_t G = grid.size() / N;
      std::vector<double> samples(G);
      for (std::size_t m = 0; m < G; ++m)
        samples[m] = circuit.evaluate(theta, std::span<const double>(grid.data() + m * N, N));
      evals += static_cast<long long>(G);
      const auto coeffs = dft_coefficients(samples, N, P, K, kernels::Exec::Serial);
      for (std::size_t a = 0; a < A; ++a) {
        for (std::size_t i = 0; i < I; ++i) {
          const Complex* row = &basis[(a * I + i) * F];
          double acc = 0.0;
          for (std::size_t j = 0; j < F; ++j)
            acc += coeffs[j].real() * row[j].real() - coeffs[j].imag() * row[j].imag();
          out[i * A + a] = acc;
        }
      }
      return out;
    }
    for (std::size_t i = 0; i < I; ++i) {
      const std::span<const double> x(points.data() + i * N, N);
      out[i * A] = circuit.evaluate(theta, x);
      evals += 1;
      if (order >= 1) {
        const auto gx = grad_x(circuit, theta, x);
        for (int d = 0; d < N; ++d) out[i * A + 1 + d] = gx[d];
        evals += 2LL * N * circuit.spec().encoding_gate_count();
      }
    }
    return out;
  }

  double loss_from(const std::vector<double>& j0) const {
    double acc = 0.0;
    const std::size_t A = alphas.size();
    for (std::size_t i = 0; i < I; ++i) {
      double point_sum = 0.0;
      for (std::size_t a = 0; a < A; ++a) {
        const double r = j0[i * A + a] - targets[i * A + a];
        point_sum += r * r;
      }
      acc += point_sum;
    }
    return acc / static_cast<double>(I);
  }
};

Objective::Objective(const Circuit& circuit, const Dataset& data, int order,
                     GradientBackend backend)
    : impl_(std::make_unique<Impl>(circuit, data, order, backend)) {}
Objective::~Objective() = default;
Objective::Objective(Objective&&) noexcept = default;

double Objective::loss_squared(std::span<const double> theta) const {
  long long evals = 0;
  return impl_->loss_from(impl_->jets(theta, evals));
}

LossGradient Objective::evaluate(std::span<const double> theta) const {
  const auto& m = *impl_;
  LossGradient out;
  const auto j0 = m.jets(theta, out.evaluations);
  out.loss_squared = m.loss_from(j0);
  const std::size_t A = m.alphas.size();
  std::vector<double> residual(j0.size());
  for (std::size_t i = 0; i < j0.size(); ++i) residual[i] = j0[i] - m.targets[i];

  std::vector<double> shifted(theta.begin(), theta.end());
  out.grad.assign(theta.size(), 0.0);
  for (std::size_t p = 0; p < theta.size(); ++p) {
    shifted[p] = theta[p] + kPi / 2.0;
    const auto plus = m.jets(shifted, out.evaluations);
    shifted[p] = theta[p] - kPi / 2.0;
    const auto minus = m.jets(shifted, out.evaluations);
    shifted[p] = theta[p];
    // d/dtheta (1/I) sum r^2 = (2/I) sum r * (plus - minus) / 2
    double acc = 0.0;
    for (std::size_t i = 0; i < m.I; ++i) {
      double point_sum = 0.0;
      for (std::size_t a = 0; a < A; ++a)
        point_sum += residual[i * A + a] * (plus[i * A + a] - minus[i * A + a]);
      acc += point_sum;
    }
    out.grad[p] = acc / static_cast<double>(m.I);
  }
  return out;
}

TrainResult train(const ExperimentConfig& config, const Dataset& data, std::vector<double> theta0) {
  config.validate();
  const Circuit circuit(config.circuit);
  if (theta0.size() != static_cast<std::size_t>(config.circuit.parameter_count()))
    throw std::invalid_argument("train: initial parameter count mismatch");
  const int order = config.loss_order();
  if (data.order < order)
    throw std::invalid_argument("train: dataset lacks the derivative labels required by the loss");
  const Objective objective(circuit, data, order, config.backend);

  TrainResult out;
  out.theta = std::move(theta0);
  Adam adam(out.theta.size(), config.adam);
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const auto lg = objective.evaluate(out.theta);
    out.circuit_evaluations += lg.evaluations;
    bool finite = std::isfinite(lg.loss_squared);
    for (double g : lg.grad) finite = finite && std::isfinite(g);
    if (!finite) throw NumericalDivergence("training diverged at epoch " + std::to_string(epoch));
    out.loss_trace.push_back(std::sqrt(lg.loss_squared));
    adam.step(out.theta, lg.grad);
  }
  const double final_sq = objective.loss_squared(out.theta);
  if (!std::isfinite(final_sq)) throw NumericalDivergence("training diverged after the last epoch");
  out.loss_trace.push_back(std::sqrt(final_sq));
  out.initial_loss = out.loss_trace.front();
  out.final_loss = out.loss_trace.back();
  return out;
}

TrainResult train(const ExperimentConfig& config, const Dataset& data) {
  return train(config, data, initial_theta(config.circuit.parameter_count(), config.seed));
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("percentile: no values");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= values.size()) return values.back();
  return values[lo] + (h - static_cast<double>(lo)) * (values[lo + 1] - values[lo]);
}

RunResult run_experiment(const ExperimentConfig& config, kernels::Exec exec) {
  config.validate();
  const int N = config.circuit.input_dim;
  const Circuit circuit(config.circuit);
  const Normalizer norm = config.normalizer();
  const Target target = make_target(config.target, N);
  const GridSpec grid{Box::cube(N, config.domain_lo, config.domain_hi), config.eval_points};

  RunResult out;
  out.input_dim = N;
  out.grid_x = grid.nodes();
  const std::size_t G = grid.size();
  std::vector<double> grid_norm(G * N);
  out.target_y.resize(G);
  const MultiIndex zero{};
  for (std::size_t g = 0; g < G; ++g) {
    const std::span<const double> x(out.grid_x.data() + g * N, N);
    const auto xn = norm.normalize(x);
    std::copy(xn.begin(), xn.end(), grid_norm.begin() + g * N);
    out.target_y[g] = target.eval(x, zero);
  }

  const auto R = static_cast<std::size_t>(config.repeats);
  out.theta.resize(R);
  out.predictions.resize(R);
  out.final_loss.resize(R);
  out.final_dist_C0.resize(R);
  kernels::for_each_index(
      R,
      [&](std::size_t r) {
        const std::uint64_t seed = config.seed + r;
        const Dataset data = make_dataset(config, seed);
        auto result = train(config, data, initial_theta(config.circuit.parameter_count(), seed));
        std::vector<double> pred(G);
        double worst = 0.0;
        for (std::size_t g = 0; g < G; ++g) {
          pred[g] = circuit.evaluate(result.theta, std::span<const double>(grid_norm.data() + g * N, N));
          worst = std::max(worst, std::abs(pred[g] - out.target_y[g]));
        }
        out.theta[r] = std::move(result.theta);
        out.final_loss[r] = result.final_loss;
        out.final_dist_C0[r] = worst;
        out.predictions[r] = std::move(pred);
      },
      exec);

  out.p25.resize(G);
  out.p50.resize(G);
  out.p75.resize(G);
  std::vector<double> column(R);
  for (std::size_t g = 0; g < G; ++g) {
    for (std::size_t r = 0; r < R; ++r) column[r] = out.predictions[r][g];
    out.p25[g] = percentile(column, 0.25);
    out.p50[g] = percentile(column, 0.50);
    out.p75[g] = percentile(column, 0.75);
  }

  const auto w = grid.weights();
  double volume = 1.0;
  for (int d = 0; d < N; ++d) volume *= config.domain_hi - config.domain_lo;
  std::vector<double> band(G);
  for (std::size_t g = 0; g < G; ++g) {
    out.median_dist_C0 = std::max(out.median_dist_C0, std::abs(out.p50[g] - out.target_y[g]));
    band[g] = (out.p75[g] - out.p25[g]) * w[g];
  }
  out.iqr_area = kernels::pairwise_sum(band) * volume;
  return out;
}

DatTable RunResult::to_dat() const {
  DatTable t;
  if (input_dim == 1) {
    t.columns.push_back("x");
  } else {
    for (int d = 0; d < input_dim; ++d) t.columns.push_back("x" + std::to_string(d + 1));
  }
  for (const char* c : {"y", "y_pred", "y_pred_upper", "y_pred_lower"}) t.columns.push_back(c);
  for (std::size_t g = 0; g < target_y.size(); ++g) {
    std::vector<double> row(grid_x.begin() + g * input_dim, grid_x.begin() + (g + 1) * input_dim);
    row.push_back(target_y[g]);
    row.push_back(p50[g]);
    row.push_back(p75[g]);
    row.push_back(p25[g]);
    t.add_row(std::move(row));
  }
  return t;
}

}  // namespace spqc
