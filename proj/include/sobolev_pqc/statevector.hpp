#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace spqc {

using Complex = std::complex<double>;

inline constexpr int kMaxQubits = 12;

enum class GateKind { RX, RY, CNOT };

// Single-qubit rotations use the half-angle convention R(phi) = exp(-i phi P / 2).
// For CNOT, qubits[0] is the control and qubits[1] the target.
struct Gate {
  GateKind kind = GateKind::RX;
  double angle = 0.0;
  std::array<int, 2> qubits{0, 0};

  static Gate rx(int qubit, double angle) { return {GateKind::RX, angle, {qubit, qubit}}; }
  static Gate ry(int qubit, double angle) { return {GateKind::RY, angle, {qubit, qubit}}; }
  static Gate cnot(int control, int target) { return {GateKind::CNOT, 0.0, {control, target}}; }
};

using Matrix2 = std::array<Complex, 4>;  // row-major

Matrix2 rotation_matrix(GateKind kind, double angle);

// A product of Pauli-Z operators on `support` scaled by `coefficient`.
// An empty support is the identity.
struct ZTerm {
  double coefficient = 0.0;
  std::vector<int> support;
};

class Observable {
 public:
  Observable() = default;
  explicit Observable(std::vector<ZTerm> terms);

  // (1/n) * sum_q Z_q
  static Observable mean_z(int n_qubits);

  const std::vector<ZTerm>& terms() const { return terms_; }
  // Largest qubit index referenced plus one.
  int min_qubits() const;
  // Value of the diagonal operator on computational basis state `basis`.
  double diagonal(std::uint64_t basis) const;
  double operator_norm(int n_qubits) const;
  Observable scaled(double factor) const;

 private:
  std::vector<ZTerm> terms_;
  std::vector<std::uint64_t> masks_;
};

class StateVector {
 public:
  // |0...0> on n_qubits qubits; throws std::invalid_argument outside 1..12.
  static StateVector zero(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  std::size_t size() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }

  double norm_squared() const;

  // Mutating variant used by the circuit evaluator to avoid copies.
  void apply_inplace(const Gate& gate);

 private:
  explicit StateVector(int n_qubits);

  int n_qubits_ = 0;
  std::vector<Complex> amplitudes_;
};

inline StateVector init_zero(int n_qubits) { return StateVector::zero(n_qubits); }

StateVector apply_gate(const StateVector& state, const Gate& gate);

double expectation(const StateVector& state, const Observable& obs);

}  // namespace spqc
