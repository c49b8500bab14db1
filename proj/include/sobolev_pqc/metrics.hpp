#pragma once

#include <span>
#include <string>
#include <vector>

#include "sobolev_pqc/types.hpp"

namespace spqc {

// Closed uniform grid with `points` nodes per axis on `box`.
struct GridSpec {
  Box box;
  int points = 1001;

  static GridSpec interval(double a, double b, int points = 1001) {
    return {Box::interval(a, b), points};
  }
  int dim() const { return box.dim; }
  std::size_t size() const;
  // Row-major node coordinates.
  std::vector<double> nodes() const;
  // Composite trapezoid weights of the normalised (probability) measure; sum to 1.
  std::vector<double> weights() const;
  void validate() const;
};

// All multi-indices with |alpha| <= k in graded-lexicographic order:
// by total order, then descending lexicographic (e.g. (2,0), (1,1), (0,2)).
std::vector<MultiIndex> multi_indices(int input_dim, int k);

// M(N, k) = sum_{a=1}^{k} C(a + N - 1, N - 1), the number of partial
// derivatives of orders 1..k.
long long count_derivatives(int input_dim, int k);

// A function together with its partial derivatives up to `order`.
struct SobolevFunction {
  int input_dim = 1;
  int order = 0;
  std::function<double(std::span<const double>, const MultiIndex&)> eval;

  double operator()(std::span<const double> x, const MultiIndex& alpha) const {
    return eval(x, alpha);
  }
  static SobolevFunction constant_zero(int input_dim, int order);
};

// (int |f - g|^p dP)^{1/p} under the uniform probability measure on the grid box.
double dist_Lp(const Function& f, const Function& g, double p, const GridSpec& grid);
// max over grid nodes of |f - g|.
double dist_C0(const Function& f, const Function& g, const GridSpec& grid);
// (sum_{|alpha| <= k} int |D^alpha f - D^alpha g|^2 dP)^{1/2}.
double dist_Hk(const SobolevFunction& f, const SobolevFunction& g, int k, const GridSpec& grid);
double dist_Hk_squared(const SobolevFunction& f, const SobolevFunction& g, int k,
                       const GridSpec& grid);

// Training data. Points are row-major I x N; derivative labels are row-major
// I x M(N, order) in the multi_indices() order with alpha = 0 omitted.
struct Dataset {
  int input_dim = 1;
  int order = 0;
  std::vector<double> points;
  std::vector<double> labels;
  std::vector<double> derivatives;

  std::size_t size() const { return labels.size(); }
  std::span<const double> point(std::size_t i) const {
    return std::span<const double>(points).subspan(i * input_dim, input_dim);
  }
  std::size_t derivative_count() const;
  double derivative(std::size_t i, std::size_t m) const {
    return derivatives[i * derivative_count() + m];
  }
  void validate() const;
};

double loss_l2(const Dataset& data, const Function& f);
double loss_l2_squared(const Dataset& data, const Function& f);
double loss_linf(const Dataset& data, const Function& f);
// Rooted discrete Sobolev loss: value residuals plus every derivative
// residual with 1 <= |alpha| <= k, averaged over the I points.
double loss_hk(const Dataset& data, const SobolevFunction& f, int k);
double loss_hk_squared(const Dataset& data, const SobolevFunction& f, int k);

// Whitespace-separated columns x (or x1..xN), y, d1..dM with a header row.
std::string dataset_to_string(const Dataset& data);
Dataset dataset_from_string(const std::string& text);

}  // namespace spqc
