#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sobolev_pqc/autodiff.hpp"
#include "sobolev_pqc/bounds.hpp"
#include "sobolev_pqc/config.hpp"
#include "sobolev_pqc/experiments.hpp"
#include "sobolev_pqc/rng.hpp"
#include "sobolev_pqc/selftest.hpp"
#include "sobolev_pqc/trainer.hpp"

namespace fs = std::filesystem;
using namespace spqc;

namespace {

struct Options {
  std::string verb;
  std::string config;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> repeats;
  std::optional<int> threads;
};

Json config_or_empty(const Options& o) {
  if (o.config.empty()) return Json{{"schema_version", kSchemaVersion}};
  return load_config(o.config);
}

fs::path out_dir(const Options& o) {
  std::error_code ec;
  fs::create_directories(o.out, ec);
  if (ec || !fs::is_directory(o.out)) throw IoError("cannot create output directory " + o.out);
  return fs::path(o.out);
}

void write_json(const fs::path& path, const Json& j) { write_text_file(path, j.dump(2) + "\n"); }

ExperimentConfig experiment(const Options& o) {
  ExperimentConfig c = experiment_from_json(config_or_empty(o));
  if (o.seed) c.seed = *o.seed;
  if (o.repeats) c.repeats = *o.repeats;
  c.validate();
  return c;
}

Json run_summary(const RunResult& r) {
  double mean_loss = 0.0;
  for (double l : r.final_loss) mean_loss += l;
  mean_loss /= static_cast<double>(r.final_loss.size());
  return Json{{"repeats", r.final_loss.size()},
              {"median_dist_C0", r.median_dist_C0},
              {"iqr_area", r.iqr_area},
              {"median_final_loss", percentile(r.final_loss, 0.5)},
              {"mean_final_loss", mean_loss}};
}

int cmd_train(const Options& o) {
  const auto cfg = experiment(o);
  const auto dir = out_dir(o);
  const auto res = run_experiment(cfg);
  res.to_dat().write(dir / "results.dat");
  Json s = run_summary(res);
  s["config"] = to_json(cfg);
  write_json(dir / "summary.json", s);
  std::printf("median dist_C0 %.6g, IQR area %.6g -> %s\n", res.median_dist_C0, res.iqr_area,
              (dir / "results.dat").string().c_str());
  return 0;
}

int cmd_figure(const Options& o, bool fig6) {
  const auto base = experiment(o);
  const auto dir = out_dir(o);
  const auto arms = fig6 ? fig6_arms(base) : fig5_arms(base);
  Json summary = Json::object();
  for (const auto& arm : arms) {
    const auto res = run_experiment(arm.config);
    res.to_dat().write(dir / arm.file);
    Json s = run_summary(res);
    s["loss"] = to_string(arm.config.loss);
    s["normalization"] = to_string(arm.config.normalization);
    if (arm.config.circuit.input_dim == 1) {
      const auto prof = boundary_profile(res);
      s["boundary_outer_error"] = prof.outer;
      s["boundary_inner_error"] = prof.inner;
    }
    summary[arm.file] = s;
    std::printf("%-22s median dist_C0 %.6g  IQR area %.6g\n", arm.file.c_str(), res.median_dist_C0,
                res.iqr_area);
  }
  write_json(dir / (fig6 ? "fig6_summary.json" : "fig5_summary.json"), summary);
  return 0;
}

int cmd_fejer(const Options& o) {
  const auto cfg = fejer_from_json(config_or_empty(o));
  const auto dir = out_dir(o);
  const auto res = fejer_study(cfg);
  const auto table = res.to_dat();
  table.write(dir / "fejer.dat");
  std::cout << table.to_string();
  return 0;
}

int cmd_norms(const Options& o) {
  Json j = config_or_empty(o);
  const auto dir = out_dir(o);
  Json report;
  TrigSeries series;
  if (j.contains("series")) {
    for (const auto& [key, v] : j.items())
      if (key != "schema_version" && key != "series") throw ConfigError("norms: unknown key '" + key + "'");
    series = series_from_json(j["series"]);
  } else {
    Json cj = j.contains("circuit") ? j["circuit"] : Json::object();
    for (const auto& [key, v] : j.items())
      if (key != "schema_version" && key != "circuit" && key != "theta")
        throw ConfigError("norms: unknown key '" + key + "'");
    const CircuitSpec spec = circuit_from_json(cj);
    std::vector<double> theta;
    if (j.contains("theta")) {
      if (!j["theta"].is_array()) throw ConfigError("norms: theta must be an array");
      for (const auto& t : j["theta"]) {
        if (!t.is_number()) throw ConfigError("norms: theta must hold numbers");
        theta.push_back(t.get<double>());
      }
      if (theta.size() != static_cast<std::size_t>(spec.parameter_count()))
        throw ConfigError("norms: theta has the wrong length");
    } else {
      theta = initial_theta(spec.parameter_count(), o.seed.value_or(0));
    }
    const auto degree = model_degree(spec);
    if (!degree.integral) throw ConfigError("norms: encoding_scale must be an integer");
    series = model_series(Circuit(spec), theta);
    report["circuit"] = to_json(spec);
    report["theta"] = theta;
    report["K"] = degree.K;
    report["spectrum_size"] = degree.spectrum.frequencies.size();
    report["observable_norm"] = spec.observable.operator_norm(spec.n_qubits);
  }
  const auto n = coefficient_norms(series);
  report["sup_estimate"] = n.sup_estimate;
  report["b_tilde"] = n.b_tilde;
  report["series"] = to_json(series);
  write_json(dir / "norms.json", report);
  std::printf("B (grid sup) %.6g, B~ %.6g\n", n.sup_estimate, n.b_tilde);
  return 0;
}

double parse_p(const Json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string() && (v == "inf" || v == "infinity")) return HUGE_VAL;
  throw ConfigError("bounds: p must be a number or \"inf\"");
}

int cmd_bounds(const Options& o) {
  Json j = config_or_empty(o);
  const auto dir = out_dir(o);
  Json regimes = Json::array();
  if (j.contains("regimes")) {
    if (!j["regimes"].is_array()) throw ConfigError("bounds: regimes must be an array of [N, k, p]");
    for (const auto& r : j["regimes"]) {
      if (!r.is_array() || r.size() != 3 || !r[0].is_number_integer() || !r[1].is_number_integer())
        throw ConfigError("bounds: regimes must be an array of [N, k, p]");
      const auto check = classify_regime(r[0].get<int>(), r[1].get<int>(), parse_p(r[2]));
      regimes.push_back(Json{{"N", check.N},
                             {"k", check.k},
                             {"p", std::isinf(check.p) ? Json("inf") : Json(check.p)},
                             {"regime", to_string(check.regime)}});
    }
  }
  BoundInputs in;
  try {
    in = bound_inputs_from_json(j);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const double r = bound_term(in);
  Json report{{"inputs", to_json(in)},
              {"bound_term", r},
              {"note", "hidden constants set to 1; a diagnostic scale, not a certified bound"},
              {"regimes", regimes}};
  write_json(dir / "bounds.json", report);
  std::printf("bound_term %.17g\n", r);
  for (const auto& x : regimes)
    std::printf("N=%d k=%d p=%s -> %s\n", x["N"].get<int>(), x["k"].get<int>(), x["p"].dump().c_str(),
                x["regime"].get<std::string>().c_str());
  return 0;
}

int cmd_gap(const Options& o) {
  Json j = config_or_empty(o);
  bool probe = false;
  if (j.contains("embedding_probe")) {
    if (!j["embedding_probe"].is_boolean()) throw ConfigError("gap study: embedding_probe must be boolean");
    probe = j["embedding_probe"].get<bool>();
    j.erase("embedding_probe");
  }
  GapStudyConfig cfg = gap_study_from_json(j);
  if (o.seed) cfg.base_seed = *o.seed;
  if (o.repeats) cfg.seeds = *o.repeats;
  cfg.validate();
  const auto dir = out_dir(o);
  const auto res = empirical_gap_study(cfg);
  res.to_dat().write(dir / "gap_table.dat");
  Json rows = Json::array();
  for (const auto& r : res.rows)
    rows.push_back(Json{{"I", r.I},
                        {"gap_mean", r.gap_mean},
                        {"abs_gap_mean", r.abs_gap_mean},
                        {"gap_squared_mean", r.gap_squared_mean},
                        {"gap_C0_mean", r.gap_C0_mean},
                        {"bound_value", r.bound_value},
                        {"bound_holds", r.bound_holds},
                        {"seeds", cfg.seeds}});
  Json summary{{"config", to_json(cfg)},
               {"slope", res.slope},
               {"slope_squared", res.slope_squared},
               {"c_measured", res.c_measured},
               {"bound_inputs", to_json(res.bound_base)},
               {"rows", rows}};
  if (probe) {
    const auto e = embedding_probe(EmbeddingProbeConfig::standard());
    summary["embedding_probe"] = Json{{"C", e.C},
                                      {"coverage", e.coverage},
                                      {"cv", e.cv},
                                      {"calibration_ratios", e.calibration_ratios},
                                      {"test_ratios", e.test_ratios}};
  }
  write_json(dir / "gap_summary.json", summary);
  std::cout << res.to_dat().to_string();
  std::printf("slope of log mean|gap| on log I: %.4f\n", res.slope);
  return 0;
}

int cmd_selftest() {
  const auto rep = run_selftest();
  for (const auto& c : rep.checks)
    std::printf("[%s] %s (%s)\n", c.passed ? "ok" : "FAILED", c.name.c_str(), c.detail.c_str());
  std::printf("%s in %.2f s\n", rep.passed() ? "all checks passed" : "selftest failed", rep.seconds);
  return rep.passed() ? 0 : 1;
}

void apply_threads(const Options& o) {
  int n = 0;
  if (o.threads) {
    n = *o.threads;
  } else if (const char* env = std::getenv("SOBOLEV_PQC_THREADS")) {
    try {
      n = std::stoi(env);
    } catch (const std::exception&) {
      throw ConfigError("SOBOLEV_PQC_THREADS must be a positive integer");
    }
  }
  if (o.threads || std::getenv("SOBOLEV_PQC_THREADS")) {
    if (n < 1) throw ConfigError("thread count must be a positive integer");
    kernels::set_threads(n);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sobolev-loss PQC regression toolkit"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Options o;
  std::uint64_t seed = 0;
  int repeats = 0, threads = 0;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* repeats_opt = nullptr;
  CLI::Option* threads_opt = nullptr;

  const char* verbs[][2] = {
      {"train", "train R models on one experiment config"},
      {"reproduce-fig5", "l2 loss under three normalisations"},
      {"reproduce-fig6", "h1 vs l2 loss under two normalisations"},
      {"fejer", "Fejer-mean convergence table"},
      {"norms", "sup and coefficient norms of a series or circuit"},
      {"bounds", "generalization bound term and embedding regimes"},
      {"gap-study", "empirical generalization gap versus sample size"},
      {"selftest", "invariant suite"}};
  for (const auto& v : verbs) {
    auto* sub = app.add_subcommand(v[0], v[1]);
    sub->callback([&o, name = std::string(v[0])] { o.verb = name; });
  }
  app.add_option("--config", o.config, "JSON config file");
  app.add_option("--out", o.out, "output directory");
  seed_opt = app.add_option("--seed", seed, "seed override");
  repeats_opt = app.add_option("--repeats", repeats, "repeat/seed count override")->check(CLI::PositiveNumber);
  threads_opt = app.add_option("--threads", threads, "worker threads (default: SOBOLEV_PQC_THREADS)")
                    ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (*seed_opt) o.seed = seed;
  if (*repeats_opt) o.repeats = repeats;
  if (*threads_opt) o.threads = threads;

  try {
    apply_threads(o);
    if (o.verb == "train") return cmd_train(o);
    if (o.verb == "reproduce-fig5") return cmd_figure(o, false);
    if (o.verb == "reproduce-fig6") return cmd_figure(o, true);
    if (o.verb == "fejer") return cmd_fejer(o);
    if (o.verb == "norms") return cmd_norms(o);
    if (o.verb == "bounds") return cmd_bounds(o);
    if (o.verb == "gap-study") return cmd_gap(o);
    if (o.verb == "selftest") return cmd_selftest();
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const NumericalDivergence& e) {
    std::fprintf(stderr, "numerical divergence: %s\n", e.what());
    return 3;
  } catch (const IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
