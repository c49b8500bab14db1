#include "sobolev_pqc/trigseries.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace spqc {

namespace {

Frequency negate(const Frequency& w) {
  Frequency out{};
  for (int d = 0; d < kMaxInputDim; ++d) out[d] = -w[d];
  return out;
}

std::size_t ipow(std::size_t base, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

void check_dim(int input_dim) {
  if (input_dim < 1 || input_dim > kMaxInputDim)
    throw std::invalid_argument("input_dim must lie in 1..3");
}

}  // namespace

TrigSeries::TrigSeries(int input_dim, std::vector<Frequency> frequencies,
                       std::vector<Complex> coefficients, double tol)
    : input_dim_(input_dim) {
  check_dim(input_dim);
  if (frequencies.size() != coefficients.size())
    throw std::invalid_argument("TrigSeries: frequency/coefficient count mismatch");
  std::vector<std::size_t> order(frequencies.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return frequencies[a] < frequencies[b]; });
  std::vector<Frequency> f;
  std::vector<Complex> c;
  for (std::size_t i : order) {
    for (int d = input_dim; d < kMaxInputDim; ++d)
      if (frequencies[i][d] != 0)
        throw std::invalid_argument("TrigSeries: frequency has entries beyond input_dim");
    if (!f.empty() && f.back() == frequencies[i])
      throw std::invalid_argument("TrigSeries: duplicate frequency");
    f.push_back(frequencies[i]);
    c.push_back(coefficients[i]);
  }
  auto find = [&](const Frequency& w) -> std::ptrdiff_t {
    auto it = std::lower_bound(f.begin(), f.end(), w);
    return (it != f.end() && *it == w) ? it - f.begin() : -1;
  };
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto j = find(negate(f[i]));
    if (j < 0) {
      if (std::abs(c[i]) > tol)
        throw std::invalid_argument("TrigSeries: mirror frequency missing for nonzero coefficient");
      continue;
    }
    const Complex mirror = std::conj(c[j]);
    if (std::abs(c[i] - mirror) > tol * (1.0 + std::abs(c[i])))
      throw std::invalid_argument("TrigSeries: coefficients violate c(-w) = conj(c(w))");
    frequencies_.push_back(f[i]);
    coefficients_.push_back(0.5 * (c[i] + mirror));
  }
}

TrigSeries TrigSeries::from_dense(int input_dim, int K, std::span<const Complex> coefficients,
                                  double tol) {
  auto freqs = box_frequencies(input_dim, K);
  if (freqs.size() != coefficients.size())
    throw std::invalid_argument("TrigSeries::from_dense: size mismatch");
  return TrigSeries(input_dim, std::move(freqs),
                    std::vector<Complex>(coefficients.begin(), coefficients.end()), tol);
}

Complex TrigSeries::coefficient(const Frequency& w) const {
  auto it = std::lower_bound(frequencies_.begin(), frequencies_.end(), w);
  if (it == frequencies_.end() || *it != w) return {0.0, 0.0};
  return coefficients_[it - frequencies_.begin()];
}

int TrigSeries::max_degree() const {
  int k = 0;
  for (const auto& w : frequencies_)
    for (int d = 0; d < input_dim_; ++d) k = std::max(k, std::abs(w[d]));
  return k;
}

Complex TrigSeries::eval_complex(std::span<const double> x) const {
  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i < frequencies_.size(); ++i) {
    double phase = 0.0;
    for (int d = 0; d < input_dim_; ++d) phase += frequencies_[i][d] * x[d];
    acc += coefficients_[i] * Complex(std::cos(phase), std::sin(phase));
  }
  return acc;
}

double TrigSeries::operator()(std::span<const double> x) const { return eval_complex(x).real(); }

TrigSeries TrigSeries::operator+(const TrigSeries& other) const {
  if (other.input_dim_ != input_dim_) throw std::invalid_argument("TrigSeries: dimension mismatch");
  std::vector<Frequency> f(frequencies_.begin(), frequencies_.end());
  std::vector<Complex> c(coefficients_.begin(), coefficients_.end());
  for (std::size_t i = 0; i < other.size(); ++i) {
    auto it = std::lower_bound(frequencies_.begin(), frequencies_.end(), other.frequencies_[i]);
    if (it != frequencies_.end() && *it == other.frequencies_[i]) {
      c[it - frequencies_.begin()] += other.coefficients_[i];
    } else {
      f.push_back(other.frequencies_[i]);
      c.push_back(other.coefficients_[i]);
    }
  }
  return TrigSeries(input_dim_, std::move(f), std::move(c));
}

TrigSeries TrigSeries::operator*(double factor) const {
  TrigSeries out = *this;
  for (auto& c : out.coefficients_) c *= factor;
  return out;
}

std::vector<Frequency> box_frequencies(int input_dim, int K) {
  check_dim(input_dim);
  if (K < 0) throw std::invalid_argument("box_frequencies: K < 0");
  const std::size_t side = 2 * static_cast<std::size_t>(K) + 1;
  const std::size_t total = ipow(side, input_dim);
  std::vector<Frequency> out(total, Frequency{});
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (int d = input_dim - 1; d >= 0; --d) {
      out[idx][d] = static_cast<int>(rem % side) - K;
      rem /= side;
    }
  }
  return out;
}

std::vector<double> periodic_grid_points(int input_dim, int P) {
  check_dim(input_dim);
  const std::size_t total = ipow(P, input_dim);
  std::vector<double> pts(total * input_dim);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (int d = input_dim - 1; d >= 0; --d) {
      pts[idx * input_dim + d] = kTwoPi * static_cast<double>(rem % P) / P;
      rem /= P;
    }
  }
  return pts;
}

std::vector<Complex> dft_coefficients(std::span<const double> samples, int input_dim, int P, int K,
                                      kernels::Exec exec) {
  check_dim(input_dim);
  if (K < 0) throw std::invalid_argument("dft_coefficients: K < 0");
  if (samples.size() != ipow(P, input_dim))
    throw std::invalid_argument("dft_coefficients: sample count must be P^N");
  const std::size_t side = 2 * static_cast<std::size_t>(K) + 1;

  // twiddle[j][m] = exp(-i (j-K) 2 pi m / P) / P with the phase reduced mod P.
  std::vector<Complex> twiddle(side * P);
  for (std::size_t j = 0; j < side; ++j) {
    const long long freq = static_cast<long long>(j) - K;
    for (int m = 0; m < P; ++m) {
      const long long r = ((freq * m) % P + P) % P;
      const double phase = -kTwoPi * static_cast<double>(r) / P;
      twiddle[j * P + m] = Complex(std::cos(phase), std::sin(phase)) / static_cast<double>(P);
    }
  }

  std::vector<Complex> data(samples.begin(), samples.end());
  // shape[d] is P until axis d has been transformed, then 2K+1.
  std::vector<std::size_t> shape(input_dim, P);
  for (int axis = input_dim - 1; axis >= 0; --axis) {
    std::size_t outer = 1, inner = 1;
    for (int d = 0; d < axis; ++d) outer *= shape[d];
    for (int d = axis + 1; d < input_dim; ++d) inner *= shape[d];
    std::vector<Complex> next(outer * side * inner);
    kernels::for_each_index(
        outer * side,
        [&](std::size_t line) {
          const std::size_t o = line / side;
          const std::size_t j = line % side;
          const Complex* tw = &twiddle[j * P];
          for (std::size_t in = 0; in < inner; ++in) {
            Complex acc(0.0, 0.0);
            const Complex* src = &data[o * P * inner + in];
            for (int m = 0; m < P; ++m) acc += tw[m] * src[m * inner];
            next[(o * side + j) * inner + in] = acc;
          }
        },
        exec);
    data = std::move(next);
    shape[axis] = side;
  }
  return data;
}

TrigSeries extract_series(const Function& f, int input_dim, int K, int P) {
  if (K < 0) throw std::invalid_argument("extract_series: K < 0");
  if (P == 0) P = 2 * K + 2;
  if (P < 2 * K + 2) throw std::invalid_argument("extract_series: need at least 2K+2 grid points");
  const auto pts = periodic_grid_points(input_dim, P);
  std::vector<double> samples(pts.size() / input_dim);
  kernels::map_points(f, pts, input_dim, samples);
  const auto dense = dft_coefficients(samples, input_dim, P, K);
  // Real samples give exactly conjugate-symmetric DFT up to rounding.
  return TrigSeries::from_dense(input_dim, K, dense, 1e-9);
}

TrigSeries fejer_mean(const TrigSeries& fourier_coefficients, int K) {
  if (K <= 0) throw std::invalid_argument("fejer_mean: K must be positive");
  const int N = fourier_coefficients.input_dim();
  auto freqs = box_frequencies(N, K);
  std::vector<Complex> coeffs(freqs.size());
  const double norm = static_cast<double>(N) * K;
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    const double weight = 1.0 - l1_norm(freqs[i], N) / norm;
    coeffs[i] = weight * fourier_coefficients.coefficient(freqs[i]);
  }
  return TrigSeries(N, std::move(freqs), std::move(coeffs));
}

TrigSeries fejer_mean(const Function& target, int input_dim, int K, int P) {
  return fejer_mean(extract_series(target, input_dim, K, P), K);
}

TrigSeries differentiate(const TrigSeries& s, const MultiIndex& alpha) {
  const int N = s.input_dim();
  for (int d = 0; d < kMaxInputDim; ++d)
    if (alpha[d] < 0 || (d >= N && alpha[d] != 0))
      throw std::invalid_argument("differentiate: invalid multi-index");
  std::vector<Frequency> f(s.frequencies().begin(), s.frequencies().end());
  std::vector<Complex> c(s.coefficients().begin(), s.coefficients().end());
  for (std::size_t i = 0; i < f.size(); ++i) {
    Complex factor(1.0, 0.0);
    for (int d = 0; d < N; ++d)
      for (int a = 0; a < alpha[d]; ++a) factor *= Complex(0.0, static_cast<double>(f[i][d]));
    c[i] *= factor;
  }
  return TrigSeries(N, std::move(f), std::move(c));
}

CoefficientNorms coefficient_norms(const TrigSeries& s, int grid_points) {
  const int N = s.input_dim();
  if (grid_points == 0) grid_points = N == 1 ? 2001 : 101;
  CoefficientNorms out;

  double sum_sq = 0.0;
  const Frequency zero{};
  const double a0 = 2.0 * s.coefficient(zero).real();
  sum_sq += a0 * a0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& w = s.frequencies()[i];
    // Omega+ holds the frequencies whose first nonzero entry is positive.
    int lead = 0;
    for (int d = 0; d < N && lead == 0; ++d) lead = w[d];
    if (lead <= 0) continue;
    const double a = 2.0 * s.coefficients()[i].real();
    const double b = -2.0 * s.coefficients()[i].imag();
    sum_sq += a * a + b * b;
  }
  out.b_tilde = std::sqrt(sum_sq);

  const std::size_t total = ipow(grid_points, N);
  std::vector<double> pts(total * N);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (int d = N - 1; d >= 0; --d) {
      pts[idx * N + d] = kTwoPi * static_cast<double>(rem % grid_points) / (grid_points - 1);
      rem /= grid_points;
    }
  }
  std::vector<double> vals(total);
  kernels::map_points([&](std::span<const double> x) { return s(x); }, pts, N, vals);
  for (double v : vals) out.sup_estimate = std::max(out.sup_estimate, std::abs(v));
  return out;
}

namespace {
constexpr int kMollifierNodes = 4096;

double bump(double t) {
  if (t <= -1.0 || t >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - t * t));
}
}  // namespace

Mollifier::Mollifier() {
  const double h = 2.0 / kMollifierNodes;
  table_.assign(kMollifierNodes + 1, 0.0);
  for (int i = 1; i <= kMollifierNodes; ++i) {
    const double a = -1.0 + (i - 1) * h;
    table_[i] = table_[i - 1] + 0.5 * h * (bump(a) + bump(a + h));
  }
  scale_ = 1.0 / table_.back();
  for (auto& v : table_) v *= scale_;
  table_.back() = 1.0;
}

double Mollifier::density(double t) const { return scale_ * bump(t); }

double Mollifier::cdf(double t) const {
  if (t <= -1.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double h = 2.0 / kMollifierNodes;
  const double pos = (t + 1.0) / h;
  int i = static_cast<int>(pos);
  if (i >= kMollifierNodes) i = kMollifierNodes - 1;
  const double u = pos - i;
  const double t0 = -1.0 + i * h;
  const double y0 = table_[i], y1 = table_[i + 1];
  const double m0 = density(t0) * h, m1 = density(t0 + h) * h;
  const double u2 = u * u, u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * m0 + (-2 * u3 + 3 * u2) * y1 +
         (u3 - u2) * m1;
}

PeriodicExtension::PeriodicExtension(Function f, Box domain, double delta,
                                     ExtensionOptions options)
    : f_(std::move(f)), domain_(domain), delta_(delta), options_(options) {
  check_dim(domain_.dim);
  if (!(delta_ > 0.0)) throw std::invalid_argument("periodic_extension: delta must be positive");
  const double lo_edge = options_.torus_origin;
  const double hi_edge = options_.torus_origin + kTwoPi;
  for (int d = 0; d < domain_.dim; ++d) {
    if (!(domain_.lo[d] < domain_.hi[d]))
      throw std::invalid_argument("periodic_extension: empty domain");
    if (domain_.lo[d] - 2.0 * delta_ <= lo_edge || domain_.hi[d] + 2.0 * delta_ >= hi_edge)
      throw std::invalid_argument("periodic_extension: delta too large, V leaves the torus cell");
  }
  if (options_.grid_points == 0)
    options_.grid_points = domain_.dim == 1 ? 4096 : (domain_.dim == 2 ? 256 : 48);

  const int N = domain_.dim;
  const int side = options_.grid_points + 1;
  const std::size_t total = ipow(side, N);
  std::vector<double> pts(total * N);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (int d = N - 1; d >= 0; --d) {
      pts[idx * N + d] =
          lo_edge + kTwoPi * static_cast<double>(rem % side) / options_.grid_points;
      rem /= side;
    }
  }
  grid_values_.resize(total);
  kernels::map_points([this](std::span<const double> x) { return (*this)(x); }, pts, N,
                      grid_values_);
}

double PeriodicExtension::cutoff(std::span<const double> x) const {
  double g = 1.0;
  for (int d = 0; d < domain_.dim; ++d) {
    double y = std::fmod(x[d] - options_.torus_origin, kTwoPi);
    if (y < 0.0) y += kTwoPi;
    y += options_.torus_origin;
    const double a = domain_.lo[d] - delta_;
    const double b = domain_.hi[d] + delta_;
    g *= mollifier_.cdf((b - y) / delta_) - mollifier_.cdf((a - y) / delta_);
    if (g == 0.0) return 0.0;
  }
  return g;
}

double PeriodicExtension::operator()(std::span<const double> x) const {
  const double g2 = cutoff(x);
  if (g2 == 0.0) return 0.0;
  std::array<double, kMaxInputDim> y{};
  for (int d = 0; d < domain_.dim; ++d) {
    double v = std::fmod(x[d] - options_.torus_origin, kTwoPi);
    if (v < 0.0) v += kTwoPi;
    v += options_.torus_origin;
    y[d] = std::clamp(v, domain_.lo[d], domain_.hi[d]);
  }
  return f_(std::span<const double>(y.data(), domain_.dim)) * g2;
}

Function PeriodicExtension::as_function() const {
  return [self = *this](std::span<const double> x) { return self(x); };
}

PeriodicExtension periodic_extension(Function f, const Box& domain, double delta,
                                     ExtensionOptions options) {
  return PeriodicExtension(std::move(f), domain, delta, options);
}

}  // namespace spqc
