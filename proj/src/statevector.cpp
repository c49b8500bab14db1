#include "sobolev_pqc/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace spqc {

namespace {

void check_qubit(int q, int n_qubits) {
  if (q < 0 || q >= n_qubits) {
    throw std::out_of_range("qubit index " + std::to_string(q) + " outside register of " +
                            std::to_string(n_qubits) + " qubits");
  }
}

}  // namespace

Matrix2 rotation_matrix(GateKind kind, double angle) {
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  switch (kind) {
    case GateKind::RX:
      return {Complex(c, 0.0), Complex(0.0, -s), Complex(0.0, -s), Complex(c, 0.0)};
    case GateKind::RY:
      return {Complex(c, 0.0), Complex(-s, 0.0), Complex(s, 0.0), Complex(c, 0.0)};
    case GateKind::CNOT:
      break;
  }
  throw std::invalid_argument("rotation_matrix: CNOT is not a rotation");
}

Observable::Observable(std::vector<ZTerm> terms) : terms_(std::move(terms)) {
  masks_.reserve(terms_.size());
  for (const auto& t : terms_) {
    std::uint64_t mask = 0;
    for (int q : t.support) {
      if (q < 0 || q >= kMaxQubits) throw std::out_of_range("observable qubit index out of range");
      mask ^= std::uint64_t{1} << q;
    }
    masks_.push_back(mask);
  }
}

Observable Observable::mean_z(int n_qubits) {
  std::vector<ZTerm> terms;
  for (int q = 0; q < n_qubits; ++q) terms.push_back({1.0 / n_qubits, {q}});
  return Observable(std::move(terms));
}

int Observable::min_qubits() const {
  int n = 0;
  for (const auto& t : terms_)
    for (int q : t.support) n = std::max(n, q + 1);
  return n;
}

double Observable::diagonal(std::uint64_t basis) const {
  double v = 0.0;
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    const bool odd = std::popcount(basis & masks_[t]) & 1;
    v += odd ? -terms_[t].coefficient : terms_[t].coefficient;
  }
  return v;
}

double Observable::operator_norm(int n_qubits) const {
  double best = 0.0;
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  for (std::uint64_t b = 0; b < dim; ++b) best = std::max(best, std::abs(diagonal(b)));
  return best;
}

Observable Observable::scaled(double factor) const {
  auto terms = terms_;
  for (auto& t : terms) t.coefficient *= factor;
  return Observable(std::move(terms));
}

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("n_qubits must lie in 1..12, got " + std::to_string(n_qubits));
  }
  amplitudes_.assign(std::size_t{1} << n_qubits, Complex(0.0, 0.0));
}

StateVector StateVector::zero(int n_qubits) {
  StateVector s(n_qubits);
  s.amplitudes_[0] = 1.0;
  return s;
}

double StateVector::norm_squared() const {
  double acc = 0.0;
  for (const auto& a : amplitudes_) acc += std::norm(a);
  return acc;
}

void StateVector::apply_inplace(const Gate& gate) {
  const std::size_t dim = amplitudes_.size();
  if (gate.kind == GateKind::CNOT) {
    const int control = gate.qubits[0];
    const int target = gate.qubits[1];
    check_qubit(control, n_qubits_);
    check_qubit(target, n_qubits_);
    if (control == target) throw std::invalid_argument("CNOT control equals target");
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t i = 0; i < dim; ++i) {
      if ((i & cbit) && !(i & tbit)) std::swap(amplitudes_[i], amplitudes_[i | tbit]);
    }
    return;
  }
  const int q = gate.qubits[0];
  check_qubit(q, n_qubits_);
  const Matrix2 m = rotation_matrix(gate.kind, gate.angle);
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & bit) continue;
    const Complex a0 = amplitudes_[i];
    const Complex a1 = amplitudes_[i | bit];
    amplitudes_[i] = m[0] * a0 + m[1] * a1;
    amplitudes_[i | bit] = m[2] * a0 + m[3] * a1;
  }
}

StateVector apply_gate(const StateVector& state, const Gate& gate) {
  StateVector out = state;
  out.apply_inplace(gate);
  return out;
}

double expectation(const StateVector& state, const Observable& obs) {
  if (obs.min_qubits() > state.n_qubits()) {
    throw std::out_of_range("observable acts on qubits beyond the register");
  }
  double acc = 0.0;
  const auto amps = state.amplitudes();
  for (std::size_t b = 0; b < amps.size(); ++b) {
    const double p = std::norm(amps[b]);
    if (p != 0.0) acc += p * obs.diagonal(b);
  }
  return acc;
}

}  // namespace spqc
