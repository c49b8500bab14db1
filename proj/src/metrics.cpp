#include "sobolev_pqc/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "sobolev_pqc/dat_table.hpp"
#include "sobolev_pqc/kernels.hpp"

namespace spqc {

std::size_t GridSpec::size() const {
  std::size_t n = 1;
  for (int d = 0; d < box.dim; ++d) n *= static_cast<std::size_t>(points);
  return n;
}

void GridSpec::validate() const {
  if (box.dim < 1 || box.dim > kMaxInputDim) throw std::invalid_argument("grid: bad dimension");
  if (points < 2) throw std::invalid_argument("grid: need at least 2 points per axis");
  for (int d = 0; d < box.dim; ++d)
    if (!(box.lo[d] < box.hi[d])) throw std::invalid_argument("grid: empty box");
}

std::vector<double> GridSpec::nodes() const {
  validate();
  const int N = box.dim;
  const std::size_t total = size();
  std::vector<double> out(total * N);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (int d = N - 1; d >= 0; --d) {
      const auto m = static_cast<double>(rem % points);
      out[idx * N + d] = box.lo[d] + (box.hi[d] - box.lo[d]) * m / (points - 1);
      rem /= points;
    }
  }
  return out;
}

std::vector<double> GridSpec::weights() const {
  validate();
  const int N = box.dim;
  const std::size_t total = size();
  std::vector<double> out(total, 1.0);
  const double h = 1.0 / (points - 1);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (int d = 0; d < N; ++d) {
      const auto m = rem % points;
      rem /= points;
      out[idx] *= (m == 0 || m == static_cast<std::size_t>(points - 1)) ? 0.5 * h : h;
    }
  }
  return out;
}

namespace {

void gen_indices(int dim, int d, int remaining, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (d == dim - 1) {
    cur[d] = remaining;
    out.push_back(cur);
    cur[d] = 0;
    return;
  }
  for (int a = remaining; a >= 0; --a) {
    cur[d] = a;
    gen_indices(dim, d + 1, remaining - a, cur, out);
  }
  cur[d] = 0;
}

double binomial(int n, int r) {
  double b = 1.0;
  for (int i = 1; i <= r; ++i) b = b * (n - r + i) / i;
  return b;
}

double weighted_sum(std::span<const double> values, std::span<const double> weights) {
  std::vector<double> prod(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) prod[i] = values[i] * weights[i];
  return kernels::pairwise_sum(prod);
}

std::vector<double> eval_on(const Function& f, const std::vector<double>& nodes, int dim) {
  std::vector<double> out(nodes.size() / dim);
  kernels::map_points(f, nodes, dim, out);
  return out;
}

void require_nonempty(const Dataset& data) {
  if (data.size() == 0) throw std::invalid_argument("empty dataset");
}

}  // namespace

std::vector<MultiIndex> multi_indices(int input_dim, int k) {
  if (input_dim < 1 || input_dim > kMaxInputDim) throw std::invalid_argument("bad input_dim");
  if (k < 0) throw std::invalid_argument("derivative order must be >= 0");
  std::vector<MultiIndex> out;
  MultiIndex cur{};
  for (int order = 0; order <= k; ++order) gen_indices(input_dim, 0, order, cur, out);
  return out;
}

long long count_derivatives(int input_dim, int k) {
  if (input_dim < 1) throw std::invalid_argument("count_derivatives: N must be >= 1");
  if (k < 0) throw std::invalid_argument("count_derivatives: k must be >= 0");
  double total = 0.0;
  for (int a = 1; a <= k; ++a) total += binomial(a + input_dim - 1, input_dim - 1);
  return std::llround(total);
}

SobolevFunction SobolevFunction::constant_zero(int input_dim, int order) {
  return {input_dim, order, [](std::span<const double>, const MultiIndex&) { return 0.0; }};
}

double dist_Lp(const Function& f, const Function& g, double p, const GridSpec& grid) {
  if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("dist_Lp: need 1 <= p < inf");
  const auto nodes = grid.nodes();
  const auto w = grid.weights();
  const int N = grid.dim();
  const auto fv = eval_on(f, nodes, N);
  const auto gv = eval_on(g, nodes, N);
  std::vector<double> v(fv.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double d = std::abs(fv[i] - gv[i]);
    v[i] = p == 2.0 ? d * d : std::pow(d, p);
  }
  const double integral = weighted_sum(v, w);
  return p == 2.0 ? std::sqrt(integral) : std::pow(integral, 1.0 / p);
}

double dist_C0(const Function& f, const Function& g, const GridSpec& grid) {
  const auto nodes = grid.nodes();
  const int N = grid.dim();
  const auto fv = eval_on(f, nodes, N);
  const auto gv = eval_on(g, nodes, N);
  double m = 0.0;
  for (std::size_t i = 0; i < fv.size(); ++i) m = std::max(m, std::abs(fv[i] - gv[i]));
  return m;
}

double dist_Hk_squared(const SobolevFunction& f, const SobolevFunction& g, int k,
                       const GridSpec& grid) {
  if (f.order < k || g.order < k)
    throw std::invalid_argument("dist_Hk: derivatives up to order k are not available");
  if (f.input_dim != grid.dim() || g.input_dim != grid.dim())
    throw std::invalid_argument("dist_Hk: dimension mismatch");
  const auto nodes = grid.nodes();
  const auto w = grid.weights();
  const int N = grid.dim();
  double total = 0.0;
  for (const auto& alpha : multi_indices(N, k)) {
    const auto fv = eval_on([&](std::span<const double> x) { return f(x, alpha); }, nodes, N);
    const auto gv = eval_on([&](std::span<const double> x) { return g(x, alpha); }, nodes, N);
    std::vector<double> v(fv.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double d = std::abs(fv[i] - gv[i]);
      v[i] = d * d;
    }
    total += weighted_sum(v, w);
  }
  return total;
}

double dist_Hk(const SobolevFunction& f, const SobolevFunction& g, int k, const GridSpec& grid) {
  return std::sqrt(dist_Hk_squared(f, g, k, grid));
}

std::size_t Dataset::derivative_count() const {
  return static_cast<std::size_t>(count_derivatives(input_dim, order));
}

void Dataset::validate() const {
  if (input_dim < 1 || input_dim > kMaxInputDim) throw std::invalid_argument("dataset: bad input_dim");
  if (order < 0) throw std::invalid_argument("dataset: negative derivative order");
  if (labels.empty()) throw std::invalid_argument("empty dataset");
  if (points.size() != labels.size() * input_dim)
    throw std::invalid_argument("dataset: point/label count mismatch");
  if (derivatives.size() != labels.size() * derivative_count())
    throw std::invalid_argument("dataset: every point needs all M(N,k) derivative labels");
}

double loss_l2_squared(const Dataset& data, const Function& f) {
  require_nonempty(data);
  double acc = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double r = data.labels[i] - f(data.point(i));
    acc += r * r;
  }
  return acc / static_cast<double>(data.size());
}

double loss_l2(const Dataset& data, const Function& f) { return std::sqrt(loss_l2_squared(data, f)); }

double loss_linf(const Dataset& data, const Function& f) {
  require_nonempty(data);
  double m = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i)
    m = std::max(m, std::abs(data.labels[i] - f(data.point(i))));
  return m;
}

double loss_hk_squared(const Dataset& data, const SobolevFunction& f, int k) {
  require_nonempty(data);
  if (k < 0) throw std::invalid_argument("loss_hk: k must be >= 0");
  if (k > data.order) throw std::invalid_argument("loss_hk: k exceeds the dataset's derivative order");
  if (k > f.order) throw std::invalid_argument("loss_hk: model derivatives unavailable");
  const auto alphas = multi_indices(data.input_dim, k);
  const std::size_t M = data.derivative_count();
  double acc = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto x = data.point(i);
    const double r0 = data.labels[i] - f(x, alphas[0]);
    double point_sum = r0 * r0;
    // Dataset derivative columns share the multi_indices() order, so the
    // first alphas.size() - 1 columns are exactly the orders 1..k.
    for (std::size_t a = 1; a < alphas.size(); ++a) {
      const double r = data.derivatives[i * M + (a - 1)] - f(x, alphas[a]);
      point_sum += r * r;
    }
    acc += point_sum;
  }
  return acc / static_cast<double>(data.size());
}

double loss_hk(const Dataset& data, const SobolevFunction& f, int k) {
  return std::sqrt(loss_hk_squared(data, f, k));
}

std::string dataset_to_string(const Dataset& data) {
  data.validate();
  DatTable t;
  if (data.input_dim == 1) {
    t.columns.push_back("x");
  } else {
    for (int d = 0; d < data.input_dim; ++d) t.columns.push_back("x" + std::to_string(d + 1));
  }
  t.columns.push_back("y");
  const std::size_t M = data.derivative_count();
  for (std::size_t m = 0; m < M; ++m) t.columns.push_back("d" + std::to_string(m + 1));
  for (std::size_t i = 0; i < data.size(); ++i) {
    std::vector<double> row(data.point(i).begin(), data.point(i).end());
    row.push_back(data.labels[i]);
    for (std::size_t m = 0; m < M; ++m) row.push_back(data.derivative(i, m));
    t.add_row(std::move(row));
  }
  return t.to_string();
}

Dataset dataset_from_string(const std::string& text) {
  const DatTable t = DatTable::parse(text);
  Dataset data;
  std::size_t c = 0;
  int n_x = 0;
  while (c < t.columns.size() && t.columns[c].starts_with("x")) {
    ++n_x;
    ++c;
  }
  if (n_x < 1 || n_x > kMaxInputDim || c >= t.columns.size() || t.columns[c] != "y")
    throw ConfigError("dataset: expected columns x.., y, d1..dM");
  data.input_dim = n_x;
  const std::size_t M = t.columns.size() - c - 1;
  int k = 0;
  while (static_cast<std::size_t>(count_derivatives(n_x, k)) < M) ++k;
  if (static_cast<std::size_t>(count_derivatives(n_x, k)) != M)
    throw ConfigError("dataset: derivative column count is not M(N,k) for any k");
  data.order = k;
  for (const auto& row : t.rows) {
    for (int d = 0; d < n_x; ++d) data.points.push_back(row[d]);
    data.labels.push_back(row[c]);
    for (std::size_t m = 0; m < M; ++m) data.derivatives.push_back(row[c + 1 + m]);
  }
  data.validate();
  return data;
}

}  // namespace spqc
