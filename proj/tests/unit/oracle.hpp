#pragma once

// Dense-matrix reference simulator used as an oracle; shares no code with
// the library's statevector kernels.

#include <complex>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Mat = std::vector<std::vector<C>>;

inline Mat identity(std::size_t n) {
  Mat m(n, std::vector<C>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
  return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
  const std::size_t n = a.size(), m = b.size();
  Mat out(n * m, std::vector<C>(n * m, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) out[i * m + k][j * m + l] = a[i][j] * b[k][l];
  return out;
}

inline Mat mul(const Mat& a, const Mat& b) {
  const std::size_t n = a.size();
  Mat out(n, std::vector<C>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

inline Mat rx(double t) {
  const double c = std::cos(t / 2), s = std::sin(t / 2);
  return {{c, C(0, -s)}, {C(0, -s), c}};
}
inline Mat ry(double t) {
  const double c = std::cos(t / 2), s = std::sin(t / 2);
  return {{c, -s}, {s, c}};
}

// Qubit 0 is the least significant bit of the basis index.
inline Mat on_qubit(const Mat& g, int q, int n) {
  Mat out = identity(1);
  for (int k = n - 1; k >= 0; --k) out = kron(out, k == q ? g : identity(2));
  return out;
}

inline Mat cnot(int control, int target, int n) {
  const std::size_t dim = std::size_t{1} << n;
  Mat m(dim, std::vector<C>(dim, 0.0));
  for (std::size_t b = 0; b < dim; ++b) {
    const std::size_t to = ((b >> control) & 1u) ? b ^ (std::size_t{1} << target) : b;
    m[to][b] = 1.0;
  }
  return m;
}

inline std::vector<C> apply(const Mat& m, const std::vector<C>& v) {
  std::vector<C> out(v.size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

// <Z_q> averaged over all qubits.
inline double mean_z(const std::vector<C>& v, int n) {
  double acc = 0.0;
  for (std::size_t b = 0; b < v.size(); ++b) {
    double z = 0.0;
    for (int q = 0; q < n; ++q) z += ((b >> q) & 1u) ? -1.0 : 1.0;
    acc += std::norm(v[b]) * z / n;
  }
  return acc;
}

// Fig. 4 circuit, RX encoding (or RY when ry_encoding), RY trainable, two CNOTs per layer.
inline double reference_model(const std::vector<double>& theta, double x, int layers = 3,
                              bool ry_encoding = false) {
  const int n = 2;
  std::vector<C> v(4, 0.0);
  v[0] = 1.0;
  for (int l = 0; l < layers; ++l) {
    for (int q = 0; q < n; ++q) v = apply(on_qubit(ry_encoding ? ry(x) : rx(x), q, n), v);
    for (int q = 0; q < n; ++q) v = apply(on_qubit(ry(theta[l * n + q]), q, n), v);
    v = apply(cnot(0, 1, n), v);
    v = apply(cnot(1, 0, n), v);
  }
  return mean_z(v, n);
}

}  // namespace oracle
