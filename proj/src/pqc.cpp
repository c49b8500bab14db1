#include "sobolev_pqc/pqc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace spqc {

CircuitSpec CircuitSpec::reference() { return CircuitSpec{}; }

void CircuitSpec::validate() const {
  if (n_qubits < 1 || n_qubits > kMaxQubits)
    throw std::invalid_argument("circuit: n_qubits must lie in 1..12");
  if (n_layers < 1) throw std::invalid_argument("circuit: n_layers must be >= 1");
  if (input_dim < 1 || input_dim > kMaxInputDim)
    throw std::invalid_argument("circuit: input_dim must lie in 1..3");
  if (n_qubits % input_dim != 0)
    throw std::invalid_argument("circuit: n_qubits must be a multiple of input_dim");
  if (!std::isfinite(encoding_scale))
    throw std::invalid_argument("circuit: encoding_scale must be finite");
  for (const auto& [c, t] : entanglers) {
    if (c < 0 || c >= n_qubits || t < 0 || t >= n_qubits)
      throw std::invalid_argument("circuit: entangler qubit out of range");
    if (c == t) throw std::invalid_argument("circuit: entangler control equals target");
  }
  if (observable.min_qubits() > n_qubits)
    throw std::invalid_argument("circuit: observable acts beyond the register");
}

Circuit::Circuit(CircuitSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  encoding_ops_.assign(spec_.input_dim, {});
  const int block = spec_.qubits_per_input();
  for (int l = 0; l < spec_.n_layers; ++l) {
    for (int q = 0; q < spec_.n_qubits; ++q) {
      const int d = q / block;
      encoding_ops_[d].push_back(static_cast<int>(ops_.size()));
      ops_.push_back({spec_.encoding_gate == EncodingGate::RX ? Gate::rx(q, 0.0) : Gate::ry(q, 0.0),
                      Source::Input, d});
    }
    for (int q = 0; q < spec_.n_qubits; ++q)
      ops_.push_back({Gate::ry(q, 0.0), Source::Param, param_index(spec_, q, l)});
    for (const auto& [c, t] : spec_.entanglers) ops_.push_back({Gate::cnot(c, t), Source::Fixed, 0});
  }
}

void Circuit::check(std::span<const double> theta, std::span<const double> x) const {
  if (theta.size() != static_cast<std::size_t>(spec_.parameter_count()))
    throw std::invalid_argument("circuit: expected " + std::to_string(spec_.parameter_count()) +
                                " parameters, got " + std::to_string(theta.size()));
  if (x.size() != static_cast<std::size_t>(spec_.input_dim))
    throw std::invalid_argument("circuit: input dimension mismatch");
}

StateVector Circuit::state(std::span<const double> theta, std::span<const double> x) const {
  check(theta, x);
  StateVector s = StateVector::zero(spec_.n_qubits);
  for (const auto& op : ops_) {
    Gate g = op.gate;
    if (op.source == Source::Param) g.angle = theta[op.index];
    if (op.source == Source::Input) g.angle = spec_.encoding_scale * x[op.index];
    s.apply_inplace(g);
  }
  return s;
}

double Circuit::run(std::span<const double> theta, std::span<const double> x, int shift_op,
                    double shift) const {
  check(theta, x);
  StateVector s = StateVector::zero(spec_.n_qubits);
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    const auto& op = ops_[i];
    Gate g = op.gate;
    if (op.source == Source::Param) g.angle = theta[op.index];
    if (op.source == Source::Input) g.angle = spec_.encoding_scale * x[op.index];
    if (static_cast<int>(i) == shift_op) g.angle += shift;
    s.apply_inplace(g);
  }
  return expectation(s, spec_.observable);
}

double Circuit::evaluate(std::span<const double> theta, std::span<const double> x) const {
  return run(theta, x, -1, 0.0);
}

double Circuit::evaluate_shifted(std::span<const double> theta, std::span<const double> x,
                                 int d, int instance, double shift) const {
  if (d < 0 || d >= spec_.input_dim) throw std::out_of_range("circuit: bad input coordinate");
  const auto& ops = encoding_ops_[d];
  if (instance < 0 || instance >= static_cast<int>(ops.size()))
    throw std::out_of_range("circuit: bad encoding gate instance");
  return run(theta, x, ops[instance], shift);
}

double evaluate(const CircuitSpec& spec, std::span<const double> theta,
                std::span<const double> x) {
  return Circuit(spec).evaluate(theta, x);
}

bool FrequencySpectrum::contains(double w, double tol) const {
  auto it = std::lower_bound(frequencies.begin(), frequencies.end(), w - tol);
  return it != frequencies.end() && std::abs(*it - w) <= tol;
}

FrequencySpectrum frequency_spectrum(std::span<const double> eigenvalues, double tol) {
  if (eigenvalues.empty()) throw std::invalid_argument("frequency_spectrum: no eigenvalues");
  std::vector<double> diffs;
  diffs.reserve(eigenvalues.size() * eigenvalues.size());
  for (double a : eigenvalues)
    for (double b : eigenvalues) diffs.push_back(a - b);
  std::sort(diffs.begin(), diffs.end());
  FrequencySpectrum out;
  for (double d : diffs) {
    if (out.frequencies.empty() || d - out.frequencies.back() > tol) out.frequencies.push_back(d);
  }
  // Snap values that are integers up to rounding, and keep exact symmetry.
  for (auto& f : out.frequencies) {
    const double r = std::round(f);
    if (std::abs(f - r) <= tol) f = r;
  }
  return out;
}

std::vector<double> encoding_eigenvalues(const CircuitSpec& spec) {
  spec.validate();
  const int gates = spec.encoding_gate_count();
  std::vector<double> eig;
  eig.reserve(gates + 1);
  // Sums of +-scale/2 over `gates` terms; multiplicities are irrelevant to the spectrum.
  for (int down = 0; down <= gates; ++down)
    eig.push_back(0.5 * spec.encoding_scale * (gates - 2 * down));
  std::sort(eig.begin(), eig.end());
  return eig;
}

ModelDegree model_degree(const CircuitSpec& spec) {
  ModelDegree out;
  const auto eig = encoding_eigenvalues(spec);
  out.spectrum = frequency_spectrum(eig);
  out.max_frequency = out.spectrum.max_frequency();
  const double w = spec.encoding_scale;
  out.integral = std::abs(w - std::round(w)) <= 1e-12;
  out.K = out.integral ? static_cast<int>(std::lround(std::abs(w))) * spec.encoding_gate_count() : 0;
  return out;
}

}  // namespace spqc
