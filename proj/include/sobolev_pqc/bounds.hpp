#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sobolev_pqc/dat_table.hpp"
#include "sobolev_pqc/kernels.hpp"
#include "sobolev_pqc/pqc.hpp"
#include "sobolev_pqc/trainer.hpp"
#include "sobolev_pqc/trigseries.hpp"

namespace spqc {

struct BoundInputs {
  long long omega = 13;  // |Omega|
  long long xi = 2;      // number of multi-indices with |alpha| <= k
  double B = 1.0;
  double B_tilde = 2.0;
  double c = 1.0;
  double L = 1.0;
  long long I = 10;
  double delta = 0.05;

  // Throws std::invalid_argument.
  void validate() const;
};

// xi B L sqrt(|Omega| (ln|Omega| + ln B~) / I) + c sqrt(ln(1/delta) / I), all
// hidden constants set to one. A negative log sum (B~ < 1/|Omega|) is floored at 0.
double bound_term(const BoundInputs& in);

enum class Regime { LpCase1, LpCase2, C0, Invalid };
std::string to_string(Regime r);

struct RegimeCheck {
  int N = 1;
  int k = 0;
  double p = 2.0;  // +inf for the sup norm
  Regime regime = Regime::Invalid;
};

RegimeCheck classify_regime(int N, int k, double p);

// Random real trigonometric polynomial a0 + sum_j a_j cos(jx) + b_j sin(jx)
// of the given degree, coefficients U[-1, 1] / (2 degree + 1).
TrigSeries random_band_limited(int degree, std::uint64_t seed);

struct GapStudyConfig {
  CircuitSpec circuit = CircuitSpec::reference();
  std::vector<int> sample_sizes{10, 40, 160, 640};
  int seeds = 20;
  std::uint64_t base_seed = 0;
  int target_degree = 2;
  int epochs = 100;
  AdamOptions adam;
  int eval_points = 1001;
  double delta = 0.05;
  double L = 1.0;
  GradientBackend backend = GradientBackend::Surrogate;

  void validate() const;  // throws ConfigError
};

// One trained model, k = 1, N = 1, inputs drawn i.i.d. on [0, 2pi).
struct GapRecord {
  int I = 0;
  int seed = 0;
  double D_H1 = 0.0;      // continuous rooted distance on [0, 2pi]
  double D_h1 = 0.0;      // rooted empirical loss on the training set
  double D_C0 = 0.0;
  double max_pointwise_loss = 0.0;
  double gap() const { return D_H1 - D_h1; }
  double gap_squared() const { return D_H1 * D_H1 - D_h1 * D_h1; }
  double gap_C0() const { return D_C0 - D_h1; }
};

struct GapRow {
  int I = 0;
  double gap_mean = 0.0;
  double gap_p25 = 0.0;
  double gap_p75 = 0.0;
  double abs_gap_mean = 0.0;
  double gap_squared_mean = 0.0;
  double gap_C0_mean = 0.0;
  double bound_value = 0.0;
  int bound_holds = 0;  // seeds with D_H1 <= D_h1 + bound_value
};

struct GapStudyResult {
  std::vector<GapRecord> records;  // sample size major, seed minor
  std::vector<GapRow> rows;
  double c_measured = 0.0;  // max pointwise h1 loss over all evaluated pairs
  BoundInputs bound_base;   // I filled per row
  double slope = 0.0;       // least squares slope of log mean|gap| on log I
  double slope_squared = 0.0;

  // Columns I, gap_mean, gap_p25, gap_p75, bound_value.
  DatTable to_dat() const;
};

GapStudyResult empirical_gap_study(const GapStudyConfig& config,
                                   kernels::Exec exec = kernels::default_exec());

struct EmbeddingProbeConfig {
  CircuitSpec circuit = CircuitSpec::reference();
  std::vector<std::uint64_t> calibration_seeds;  // default 1000..1009
  std::vector<std::uint64_t> test_seeds;         // default 0..19
  int models_per_seed = 5;
  int target_degree = 2;
  int train_points = 20;
  int epochs = 50;
  AdamOptions adam;
  int eval_points = 1001;

  static EmbeddingProbeConfig standard();
};

struct EmbeddingProbeResult {
  std::vector<double> calibration_ratios;  // dist_C0 / dist_H1
  std::vector<double> test_ratios;
  double C = 0.0;         // max calibration ratio
  double coverage = 0.0;  // fraction of test pairs with ratio <= C
  double cv = 0.0;        // coefficient of variation of the test ratios
};

EmbeddingProbeResult embedding_probe(const EmbeddingProbeConfig& config,
                                     kernels::Exec exec = kernels::default_exec());

// Least squares slope of y on x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace spqc
