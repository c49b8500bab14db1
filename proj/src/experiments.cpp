#include "sobolev_pqc/experiments.hpp"

#include <cmath>

#include "sobolev_pqc/metrics.hpp"
#include "sobolev_pqc/trigseries.hpp"

namespace spqc {

void FejerStudyConfig::validate() const {
  if (Ks.empty()) throw ConfigError("fejer: Ks must not be empty");
  for (int K : Ks)
    if (K < 1) throw ConfigError("fejer: every K must be >= 1");
  if (!(domain_lo < domain_hi)) throw ConfigError("fejer: empty domain");
  if (!(delta > 0.0)) throw ConfigError("fejer: delta must be positive");
  if (domain_lo - 2.0 * delta <= torus_origin || domain_hi + 2.0 * delta >= torus_origin + kTwoPi)
    throw ConfigError("fejer: the 2*delta inflation of the domain leaves the torus cell");
  for (int K : Ks)
    if (dft_points < 2 * K + 2) throw ConfigError("fejer: dft_points must be >= 2K + 2");
  if (eval_points < 2 || torus_points < 2) throw ConfigError("fejer: grids need >= 2 points");
}

FejerStudyResult fejer_study(const FejerStudyConfig& config) {
  config.validate();
  const Function target = [](std::span<const double> x) { return x[0] / kTwoPi; };
  const Box U = Box::interval(config.domain_lo, config.domain_hi);
  ExtensionOptions opts;
  opts.torus_origin = config.torus_origin;
  const PeriodicExtension ext = periodic_extension(target, U, config.delta, opts);
  const Function extended = ext.as_function();
  const GridSpec on_U{U, config.eval_points};
  const GridSpec on_torus =
      GridSpec::interval(config.torus_origin, config.torus_origin + kTwoPi, config.torus_points);

  FejerStudyResult out;
  for (int K : config.Ks) {
    const TrigSeries sigma = fejer_mean(extended, 1, K, config.dft_points);
    const Function s = [&sigma](std::span<const double> x) { return sigma(x); };
    out.rows.push_back({K, dist_Lp(s, extended, 2.0, on_torus), dist_C0(s, target, on_U)});
  }
  return out;
}

DatTable FejerStudyResult::to_dat() const {
  DatTable t;
  t.columns = {"K", "dist_L2", "dist_C0"};
  for (const auto& r : rows) t.add_row({static_cast<double>(r.K), r.dist_L2, r.dist_C0});
  return t;
}

std::vector<FigureArm> fig5_arms(const ExperimentConfig& base) {
  std::vector<FigureArm> arms;
  for (NormTarget n : {NormTarget::Half, NormTarget::Full, NormTarget::Double}) {
    ExperimentConfig c = base;
    c.loss = LossKind::L2;
    c.normalization = n;
    arms.push_back({"f_spvsd_" + to_string(n) + ".dat", c});
  }
  return arms;
}

std::vector<FigureArm> fig6_arms(const ExperimentConfig& base) {
  std::vector<FigureArm> arms;
  for (NormTarget n : {NormTarget::Half, NormTarget::Full}) {
    ExperimentConfig h1 = base;
    h1.loss = LossKind::H1;
    h1.normalization = n;
    arms.push_back({"f_gradient_" + to_string(n) + ".dat", h1});
    ExperimentConfig l2 = base;
    l2.loss = LossKind::L2;
    l2.normalization = n;
    arms.push_back({"f_spvsd_" + to_string(n) + ".dat", l2});
  }
  return arms;
}

BoundaryProfile boundary_profile(const RunResult& run) {
  if (run.input_dim != 1) throw std::invalid_argument("boundary_profile: one-dimensional runs only");
  const std::size_t G = run.target_y.size();
  if (G < 3) throw std::invalid_argument("boundary_profile: grid too small");
  const double lo = run.grid_x.front();
  const double hi = run.grid_x.back();
  const double width = hi - lo;
  double outer = 0.0, inner = 0.0;
  std::size_t n_outer = 0, n_inner = 0;
  for (std::size_t g = 0; g < G; ++g) {
    const double u = (run.grid_x[g] - lo) / width;
    const double err = std::abs(run.p50[g] - run.target_y[g]);
    if (u < 0.05 || u > 0.95) {
      outer += err;
      ++n_outer;
    } else if (u >= 0.1 && u <= 0.9) {
      inner += err;
      ++n_inner;
    }
  }
  return {outer / static_cast<double>(n_outer), inner / static_cast<double>(n_inner)};
}

}  // namespace spqc
