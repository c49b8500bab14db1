#pragma once

#include <string>
#include <vector>

#include "sobolev_pqc/dat_table.hpp"
#include "sobolev_pqc/trainer.hpp"

namespace spqc {

// Fejer-mean convergence for the periodic extension of f*(x) = x / (2 pi)
// from U = [lo, hi] onto the torus cell [origin, origin + 2 pi).
struct FejerStudyConfig {
  std::vector<int> Ks{4, 8, 16, 32};
  double domain_lo = -kPi / 2.0;
  double domain_hi = kPi / 2.0;
  double delta = kPi / 8.0;
  double torus_origin = -kPi;
  int dft_points = 4096;
  int eval_points = 1001;    // on U, for dist_C0
  int torus_points = 4097;   // on the torus cell, for dist_L2

  void validate() const;  // throws ConfigError
};

struct FejerRow {
  int K = 0;
  double dist_L2 = 0.0;  // to the extension, over the torus cell
  double dist_C0 = 0.0;  // to f*, over U
};

struct FejerStudyResult {
  std::vector<FejerRow> rows;
  // Columns K, dist_L2, dist_C0.
  DatTable to_dat() const;
};

FejerStudyResult fejer_study(const FejerStudyConfig& config);

struct FigureArm {
  std::string file;
  ExperimentConfig config;
};

// l2 loss under the half, full and double normalisations.
std::vector<FigureArm> fig5_arms(const ExperimentConfig& base);
// h1 and l2 losses under the half and full normalisations.
std::vector<FigureArm> fig6_arms(const ExperimentConfig& base);

// Mean |p50 - f*| over the outer 10% of the grid (5% at each end) divided by
// the mean over the central 80%. One-dimensional runs only.
struct BoundaryProfile {
  double outer = 0.0;
  double inner = 0.0;
  double ratio() const { return outer / inner; }
};
BoundaryProfile boundary_profile(const RunResult& run);

}  // namespace spqc
