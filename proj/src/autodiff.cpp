#include "sobolev_pqc/autodiff.hpp"

#include <memory>

namespace spqc {

namespace {
constexpr double kShift = kPi / 2.0;
}

std::vector<double> grad_theta(const Circuit& circuit, std::span<const double> theta,
                               std::span<const double> x) {
  std::vector<double> shifted(theta.begin(), theta.end());
  std::vector<double> out(theta.size());
  for (std::size_t j = 0; j < theta.size(); ++j) {
    shifted[j] = theta[j] + kShift;
    const double plus = circuit.evaluate(shifted, x);
    shifted[j] = theta[j] - kShift;
    const double minus = circuit.evaluate(shifted, x);
    shifted[j] = theta[j];
    out[j] = 0.5 * (plus - minus);
  }
  return out;
}

std::vector<double> grad_x(const Circuit& circuit, std::span<const double> theta,
                           std::span<const double> x) {
  const auto& spec = circuit.spec();
  std::vector<double> out(spec.input_dim, 0.0);
  for (int d = 0; d < spec.input_dim; ++d) {
    double acc = 0.0;
    for (int g = 0; g < spec.encoding_gate_count(); ++g) {
      const double plus = circuit.evaluate_shifted(theta, x, d, g, kShift);
      const double minus = circuit.evaluate_shifted(theta, x, d, g, -kShift);
      acc += 0.5 * (plus - minus);
    }
    out[d] = spec.encoding_scale * acc;
  }
  return out;
}

GradientReport gradients(const Circuit& circuit, std::span<const double> theta,
                         std::span<const double> x) {
  GradientReport r;
  r.value = circuit.evaluate(theta, x);
  r.d_theta = grad_theta(circuit, theta, x);
  r.d_x = grad_x(circuit, theta, x);
  const auto& spec = circuit.spec();
  r.evaluations = 1 + 2 * spec.parameter_count() + 2 * spec.input_dim * spec.encoding_gate_count();
  return r;
}

std::vector<double> finite_difference_theta(const Circuit& circuit, std::span<const double> theta,
                                            std::span<const double> x, double h) {
  std::vector<double> shifted(theta.begin(), theta.end());
  std::vector<double> out(theta.size());
  for (std::size_t j = 0; j < theta.size(); ++j) {
    shifted[j] = theta[j] + h;
    const double plus = circuit.evaluate(shifted, x);
    shifted[j] = theta[j] - h;
    const double minus = circuit.evaluate(shifted, x);
    shifted[j] = theta[j];
    out[j] = (plus - minus) / (2.0 * h);
  }
  return out;
}

std::vector<double> finite_difference_x(const Circuit& circuit, std::span<const double> theta,
                                        std::span<const double> x, double h) {
  std::vector<double> shifted(x.begin(), x.end());
  std::vector<double> out(x.size());
  for (std::size_t d = 0; d < x.size(); ++d) {
    shifted[d] = x[d] + h;
    const double plus = circuit.evaluate(theta, shifted);
    shifted[d] = x[d] - h;
    const double minus = circuit.evaluate(theta, shifted);
    shifted[d] = x[d];
    out[d] = (plus - minus) / (2.0 * h);
  }
  return out;
}

TrigSeries model_series(const Circuit& circuit, std::span<const double> theta) {
  const auto degree = model_degree(circuit.spec());
  if (!degree.integral)
    throw std::invalid_argument("model_series: encoding scale must be an integer");
  std::vector<double> th(theta.begin(), theta.end());
  return extract_series(
      [&circuit, th](std::span<const double> x) { return circuit.evaluate(th, x); },
      circuit.spec().input_dim, degree.K);
}

double spectral_derivative(const Circuit& circuit, std::span<const double> theta,
                           std::span<const double> x, const MultiIndex& alpha) {
  return differentiate(model_series(circuit, theta), alpha)(x);
}

SobolevFunction model_sobolev(const Circuit& circuit, std::span<const double> theta, int order) {
  const auto series = std::make_shared<TrigSeries>(model_series(circuit, theta));
  const int N = circuit.spec().input_dim;
  auto derivs = std::make_shared<std::vector<std::pair<MultiIndex, TrigSeries>>>();
  for (const auto& alpha : multi_indices(N, order)) derivs->emplace_back(alpha, differentiate(*series, alpha));
  return {N, order, [derivs](std::span<const double> x, const MultiIndex& alpha) {
            for (const auto& [a, s] : *derivs)
              if (a == alpha) return s(x);
            throw std::invalid_argument("model_sobolev: derivative order not prepared");
          }};
}

}  // namespace spqc
