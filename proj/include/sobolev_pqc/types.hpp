#pragma once

#include <array>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace spqc {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Inputs are at most three-dimensional at desk scale.
inline constexpr int kMaxInputDim = 3;

using Function = std::function<double(std::span<const double>)>;

// Integer frequency vector or derivative multi-index; only the first
// `input_dim` entries are meaningful, the rest stay zero.
using IntVec = std::array<int, kMaxInputDim>;
using Frequency = IntVec;
using MultiIndex = IntVec;

inline int l1_norm(const IntVec& v, int dim) {
  int s = 0;
  for (int d = 0; d < dim; ++d) s += v[d] < 0 ? -v[d] : v[d];
  return s;
}

// Axis-aligned box, used both as a domain U and as a grid extent.
struct Box {
  int dim = 1;
  std::array<double, kMaxInputDim> lo{};
  std::array<double, kMaxInputDim> hi{};

  static Box interval(double a, double b) {
    Box box;
    box.lo[0] = a;
    box.hi[0] = b;
    return box;
  }
  static Box cube(int dim, double a, double b) {
    Box box;
    box.dim = dim;
    for (int d = 0; d < dim; ++d) {
      box.lo[d] = a;
      box.hi[d] = b;
    }
    return box;
  }
  bool contains(std::span<const double> x, double tol = 0.0) const {
    for (int d = 0; d < dim; ++d)
      if (x[d] < lo[d] - tol || x[d] > hi[d] + tol) return false;
    return true;
  }
};

// Thrown when an input file or config violates its schema.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when an optimisation produces non-finite values.
struct NumericalDivergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace spqc
