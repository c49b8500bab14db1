#pragma once

#include <span>
#include <vector>

#include "sobolev_pqc/kernels.hpp"
#include "sobolev_pqc/statevector.hpp"
#include "sobolev_pqc/types.hpp"

namespace spqc {

// Finite trigonometric series  sum_w c_w exp(i w.x)  with c_{-w} = conj(c_w).
class TrigSeries {
 public:
  TrigSeries() = default;

  // Validates real-valuedness within `tol` (relative to 1 + |c_w|) and then
  // symmetrises exactly. A frequency whose mirror is missing is accepted only
  // if its coefficient is below `tol`, in which case it is dropped.
  TrigSeries(int input_dim, std::vector<Frequency> frequencies, std::vector<Complex> coefficients,
             double tol = 1e-12);

  // Dense coefficients on Z_K^N in the order produced by box_frequencies().
  static TrigSeries from_dense(int input_dim, int K, std::span<const Complex> coefficients,
                               double tol = 1e-12);

  int input_dim() const { return input_dim_; }
  std::size_t size() const { return frequencies_.size(); }
  std::span<const Frequency> frequencies() const { return frequencies_; }
  std::span<const Complex> coefficients() const { return coefficients_; }
  // Zero when w is not in the frequency set.
  Complex coefficient(const Frequency& w) const;
  // Largest |w_d| over the frequency set.
  int max_degree() const;

  double operator()(std::span<const double> x) const;
  Complex eval_complex(std::span<const double> x) const;

  TrigSeries operator+(const TrigSeries& other) const;
  TrigSeries operator*(double factor) const;

 private:
  int input_dim_ = 1;
  std::vector<Frequency> frequencies_;  // sorted lexicographically
  std::vector<Complex> coefficients_;
};

inline double eval_series(const TrigSeries& s, std::span<const double> x) { return s(x); }

// Z_K^N in lexicographic order (axis 0 slowest).
std::vector<Frequency> box_frequencies(int input_dim, int K);

// Samples on the periodic grid 2*pi*m/P, m = 0..P-1 per axis, row-major.
std::vector<double> periodic_grid_points(int input_dim, int P);

// Separable uniform-grid DFT: from P^N real samples to dense coefficients on Z_K^N.
std::vector<Complex> dft_coefficients(std::span<const double> samples, int input_dim, int P,
                                      int K, kernels::Exec exec = kernels::default_exec());

// Coefficients of f on Z_K^N from a P-point-per-axis DFT. P = 0 selects
// 2K + 2, which is exact for f band-limited to Z_K^N. Throws for K < 0 or
// P < 2K + 2.
TrigSeries extract_series(const Function& f, int input_dim, int K, int P = 0);

// l1-Fejer mean: c_j = (1 - |j|_1 / (N K)) fhat_j on Z_K^N.
TrigSeries fejer_mean(const TrigSeries& fourier_coefficients, int K);

// Convenience: Fejer mean of a callable target via a P-point DFT.
TrigSeries fejer_mean(const Function& target, int input_dim, int K, int P = 4096);

// D^alpha of the series.
TrigSeries differentiate(const TrigSeries& s, const MultiIndex& alpha);

struct CoefficientNorms {
  double sup_estimate = 0.0;  // grid estimate of ||f||_inf
  double b_tilde = 0.0;       // sqrt(a0^2 + sum_{w in Omega+} a_w^2 + b_w^2)
};

// grid_points = 0 selects 2001 per axis in 1D, 101 otherwise.
CoefficientNorms coefficient_norms(const TrigSeries& s, int grid_points = 0);

// Smooth bump exp(-1/(1-t^2)) on (-1, 1), normalised by a 4096-point
// trapezoid rule. cdf() is a cubic Hermite interpolant of the running integral.
class Mollifier {
 public:
  Mollifier();
  double density(double t) const;
  double cdf(double t) const;

 private:
  double scale_ = 1.0;
  std::vector<double> table_;  // cdf on 4097 uniform nodes of [-1, 1]
};

struct ExtensionOptions {
  // Torus cell is [origin, origin + 2*pi)^N.
  double torus_origin = 0.0;
  // Stored grid resolution per axis; 0 selects 4096 in 1D, 256 in 2D, 48 in 3D.
  int grid_points = 0;
};

// Periodic extension f_ext = g1 * g2 of a function given on a box U inside
// the torus cell: g1 extends f continuously by clamping to U, and g2 is the
// product over axes of the indicator of U inflated by delta convolved with
// the mollifier of width delta. f_ext = f on U and f_ext = 0 outside the
// 2*delta inflation V of U.
class PeriodicExtension {
 public:
  PeriodicExtension(Function f, Box domain, double delta, ExtensionOptions options);

  double operator()(std::span<const double> x) const;
  double cutoff(std::span<const double> x) const;

  const Box& domain() const { return domain_; }
  double delta() const { return delta_; }
  double torus_origin() const { return options_.torus_origin; }

  // Values on the closed grid origin + 2*pi*m/P, m = 0..P, per axis (row-major).
  int grid_points() const { return options_.grid_points; }
  std::span<const double> grid_values() const { return grid_values_; }

  Function as_function() const;

 private:
  Function f_;
  Box domain_;
  double delta_ = 0.0;
  ExtensionOptions options_;
  Mollifier mollifier_;
  std::vector<double> grid_values_;
};

// Throws std::invalid_argument when the 2*delta inflation of U leaves the open torus cell.
PeriodicExtension periodic_extension(Function f, const Box& domain, double delta,
                                     ExtensionOptions options = {});

}  // namespace spqc
