#pragma once

#include <span>
#include <vector>

#include "sobolev_pqc/metrics.hpp"
#include "sobolev_pqc/pqc.hpp"
#include "sobolev_pqc/trigseries.hpp"

namespace spqc {

struct GradientReport {
  double value = 0.0;
  std::vector<double> d_theta;
  std::vector<double> d_x;
  // 1 + 2 * (#parameters) + 2 * (#encoding gate instances)
  int evaluations = 0;
};

// Parameter-shift rule, df/dtheta_j = [f(theta_j + pi/2) - f(theta_j - pi/2)] / 2.
std::vector<double> grad_theta(const Circuit& circuit, std::span<const double> theta,
                               std::span<const double> x);
// Input gradient as a sum of shift-rule terms over every encoding gate
// instance that carries x_d, each scaled by the encoding scale.
std::vector<double> grad_x(const Circuit& circuit, std::span<const double> theta,
                           std::span<const double> x);
GradientReport gradients(const Circuit& circuit, std::span<const double> theta,
                         std::span<const double> x);

inline std::vector<double> grad_theta(const CircuitSpec& spec, std::span<const double> theta,
                                      std::span<const double> x) {
  return grad_theta(Circuit(spec), theta, x);
}
inline std::vector<double> grad_x(const CircuitSpec& spec, std::span<const double> theta,
                                  std::span<const double> x) {
  return grad_x(Circuit(spec), theta, x);
}

// Central finite differences with step h; used as an independent oracle.
std::vector<double> finite_difference_theta(const Circuit& circuit, std::span<const double> theta,
                                            std::span<const double> x, double h = 1e-5);
std::vector<double> finite_difference_x(const Circuit& circuit, std::span<const double> theta,
                                        std::span<const double> x, double h = 1e-5);

// Trigonometric surrogate of x -> f_theta(x); requires an integer encoding scale.
TrigSeries model_series(const Circuit& circuit, std::span<const double> theta);

// D^alpha f_theta(x) by spectral differentiation of the surrogate.
double spectral_derivative(const Circuit& circuit, std::span<const double> theta,
                           std::span<const double> x, const MultiIndex& alpha);

// The model and all its input derivatives up to `order`, backed by the surrogate.
SobolevFunction model_sobolev(const Circuit& circuit, std::span<const double> theta, int order);

}  // namespace spqc
