#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sobolev_pqc/dat_table.hpp"
#include "sobolev_pqc/kernels.hpp"
#include "sobolev_pqc/metrics.hpp"
#include "sobolev_pqc/pqc.hpp"

namespace spqc {

// Target intervals of the min-max feature scaling.
enum class NormTarget { Half, Full, Double };  // [-pi/2, pi/2], [-pi, pi], [-2pi, 2pi]

std::string to_string(NormTarget t);
NormTarget parse_norm_target(const std::string& name);
double norm_target_half_width(NormTarget t);

// Affine, increasing map from a source box onto a target box.
class Normalizer {
 public:
  Normalizer(int input_dim, double a, double b, NormTarget target);
  Normalizer(Box source, Box target);

  int input_dim() const { return source_.dim; }
  // Throws std::invalid_argument for x outside the source box.
  std::vector<double> normalize(std::span<const double> x) const;
  double slope(int d) const;  // d(normalised x_d) / d(x_d)
  // Factor turning D^alpha f(x) into the derivative w.r.t. normalised inputs.
  double derivative_scale(const MultiIndex& alpha) const;

 private:
  Box source_;
  Box target_;
};

inline std::vector<double> normalize(std::span<const double> x, const Normalizer& norm) {
  return norm.normalize(x);
}

enum class LossKind { L2, H1, Hk };
enum class Sampling { Grid, Uniform };
// Surrogate: values and input derivatives of every shifted circuit come from
// its exact trigonometric series. Circuit: direct evaluation plus shift rules
// for input gradients (order <= 1 only). Both use parameter shift in theta.
enum class GradientBackend { Surrogate, Circuit };

std::string to_string(LossKind k);
LossKind parse_loss_kind(const std::string& name);

struct AdamOptions {
  double learning_rate = 0.1;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

class Adam {
 public:
  Adam(std::size_t n, AdamOptions options);
  void step(std::span<double> params, std::span<const double> grad);

 private:
  AdamOptions opt_;
  std::vector<double> m_, v_;
  long long t_ = 0;
};

// Analytic target with derivatives in source coordinates.
struct Target {
  std::string id;
  int input_dim = 1;
  std::function<double(std::span<const double>, const MultiIndex&)> eval;
};

// "linear": f*(x) = mean_d(x_d) / (2 pi), i.e. x / (2 pi) in one dimension.
Target make_target(const std::string& id, int input_dim);

struct ExperimentConfig {
  CircuitSpec circuit = CircuitSpec::reference();
  std::string target = "linear";
  double domain_lo = -kPi;
  double domain_hi = kPi;
  NormTarget normalization = NormTarget::Half;
  LossKind loss = LossKind::L2;
  int k = 1;  // derivative order for LossKind::Hk
  int points = 10;
  Sampling sampling = Sampling::Grid;
  int epochs = 100;
  int repeats = 100;
  AdamOptions adam;
  std::uint64_t seed = 0;
  int eval_points = 1001;
  GradientBackend backend = GradientBackend::Surrogate;

  int loss_order() const;
  Normalizer normalizer() const;
  // Throws ConfigError.
  void validate() const;
};

// Dataset in normalised coordinates with labels and derivative labels up to
// the loss order. Grid sampling is deterministic; uniform sampling uses `seed`.
Dataset make_dataset(const ExperimentConfig& config, std::uint64_t seed);

// i.i.d. Uniform[0, 2pi) parameters.
std::vector<double> initial_theta(int count, std::uint64_t seed);

struct LossGradient {
  double loss_squared = 0.0;
  std::vector<double> grad;
  long long evaluations = 0;
};

// Squared empirical Sobolev risk of order `order` and its exact gradient.
class Objective {
 public:
  Objective(const Circuit& circuit, const Dataset& data, int order, GradientBackend backend);
  ~Objective();
  Objective(Objective&&) noexcept;

  LossGradient evaluate(std::span<const double> theta) const;
  double loss_squared(std::span<const double> theta) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct TrainResult {
  std::vector<double> theta;
  // Rooted training loss before each update, then after the last one.
  std::vector<double> loss_trace;
  double initial_loss = 0.0;
  double final_loss = 0.0;
  long long circuit_evaluations = 0;
};

// Full-batch Adam on the squared loss selected by config.loss.
TrainResult train(const ExperimentConfig& config, const Dataset& data, std::vector<double> theta0);
TrainResult train(const ExperimentConfig& config, const Dataset& data);

struct RunResult {
  std::vector<std::vector<double>> theta;  // per repeat
  int input_dim = 1;
  std::vector<double> grid_x;  // evaluation grid in source coordinates, row-major
  std::vector<double> target_y;
  std::vector<std::vector<double>> predictions;  // per repeat, on the grid
  std::vector<double> p25, p50, p75;
  std::vector<double> final_loss;     // rooted training loss per repeat
  std::vector<double> final_dist_C0;  // per repeat, on the evaluation grid
  double median_dist_C0 = 0.0;        // max |p50 - f*| on the grid
  double iqr_area = 0.0;              // integral of p75 - p25 over the grid

  // Columns x, y, y_pred, y_pred_upper, y_pred_lower (x1..xN for N > 1).
  DatTable to_dat() const;
};

// R independent runs with seeds seed + r; repeats run in parallel.
RunResult run_experiment(const ExperimentConfig& config,
                         kernels::Exec exec = kernels::default_exec());

// Linear interpolation between order statistics (type 7).
double percentile(std::vector<double> values, double q);

}  // namespace spqc
