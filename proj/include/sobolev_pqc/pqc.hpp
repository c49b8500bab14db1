#pragma once

#include <array>
#include <span>
#include <vector>

#include "sobolev_pqc/statevector.hpp"
#include "sobolev_pqc/types.hpp"

namespace spqc {

// Layered data re-uploading circuit. Each layer applies RX(scale * x_d) to
// every qubit of input block d, then one trainable RY per qubit, then the
// entangler CNOTs in order. Input coordinate d is encoded on the contiguous
// qubit block [d*n/N, (d+1)*n/N).
// RX is the reference encoding. With real trainable gates it makes every
// model even in x; RY encoding keeps the same spectrum without that symmetry.
enum class EncodingGate { RX, RY };

struct CircuitSpec {
  int n_qubits = 2;
  int n_layers = 3;
  double encoding_scale = 1.0;
  int input_dim = 1;
  std::vector<std::array<int, 2>> entanglers{{0, 1}, {1, 0}};
  Observable observable = Observable::mean_z(2);
  EncodingGate encoding_gate = EncodingGate::RX;

  // Two qubits, three layers, CNOT(0->1) CNOT(1->0), M = (Z1 + Z2) / 2.
  static CircuitSpec reference();

  int parameter_count() const { return n_qubits * n_layers; }
  int qubits_per_input() const { return n_qubits / input_dim; }
  // Number of encoding gates that carry input coordinate d.
  int encoding_gate_count() const { return qubits_per_input() * n_layers; }
  // Throws std::invalid_argument on an inconsistent spec.
  void validate() const;
};

// theta index for (qubit, layer).
inline int param_index(const CircuitSpec& spec, int qubit, int layer) {
  return layer * spec.n_qubits + qubit;
}

class Circuit {
 public:
  explicit Circuit(CircuitSpec spec);

  const CircuitSpec& spec() const { return spec_; }

  double evaluate(std::span<const double> theta, std::span<const double> x) const;

  // Same as evaluate with encoding gate instance `instance` (an index into
  // encoding_instances(d)) of input coordinate d rotated by an extra `shift`.
  double evaluate_shifted(std::span<const double> theta, std::span<const double> x, int d,
                          int instance, double shift) const;

  StateVector state(std::span<const double> theta, std::span<const double> x) const;

 private:
  enum class Source { Fixed, Param, Input };
  struct Op {
    Gate gate;
    Source source = Source::Fixed;
    int index = 0;
  };

  double run(std::span<const double> theta, std::span<const double> x, int shift_op,
             double shift) const;
  void check(std::span<const double> theta, std::span<const double> x) const;

  CircuitSpec spec_;
  std::vector<Op> ops_;
  // ops_ positions of the encoding gates, per input coordinate.
  std::vector<std::vector<int>> encoding_ops_;
};

double evaluate(const CircuitSpec& spec, std::span<const double> theta,
                std::span<const double> x);

struct FrequencySpectrum {
  std::vector<double> frequencies;  // sorted ascending, deduplicated

  bool contains(double w, double tol = 1e-9) const;
  // Largest frequency; the spectrum is symmetric.
  double max_frequency() const { return frequencies.empty() ? 0.0 : frequencies.back(); }
};

// All pairwise differences lambda_j - lambda_k, deduplicated within `tol`.
FrequencySpectrum frequency_spectrum(std::span<const double> eigenvalues, double tol = 1e-9);

// Distinct eigenvalues of the encoding generator for one input coordinate,
// sum_g (scale / 2) Z_g over the encoding gates carrying it.
std::vector<double> encoding_eigenvalues(const CircuitSpec& spec);

struct ModelDegree {
  bool integral = true;
  int K = 0;                    // valid when integral
  double max_frequency = 0.0;   // always valid
  FrequencySpectrum spectrum;   // per-coordinate spectrum
};

ModelDegree model_degree(const CircuitSpec& spec);

}  // namespace spqc
