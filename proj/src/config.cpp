#include "sobolev_pqc/config.hpp"

#include <set>

#include "sobolev_pqc/dat_table.hpp"

namespace spqc {

namespace {

// Checks that every key of `j` is allowed; "schema_version" is always allowed.
void check_keys(const Json& j, const char* where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(std::string(where) + ": expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  ok.insert("schema_version");
  for (const auto& [key, value] : j.items())
    if (!ok.count(key)) throw ConfigError(std::string(where) + ": unknown key '" + key + "'");
}

template <class T>
void read(const Json& j, const char* key, T& out, const char* where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string(where) + ": bad value for '" + key + "'");
  }
}

// Integers must be written as JSON integers.
void read_int(const Json& j, const char* key, int& out, const char* where) {
  if (!j.contains(key)) return;
  if (!j.at(key).is_number_integer())
    throw ConfigError(std::string(where) + ": '" + key + "' must be an integer");
  read(j, key, out, where);
}

void read_u64(const Json& j, const char* key, std::uint64_t& out, const char* where) {
  if (!j.contains(key)) return;
  if (!j.at(key).is_number_unsigned())
    throw ConfigError(std::string(where) + ": '" + key + "' must be a non-negative integer");
  read(j, key, out, where);
}

void read_double(const Json& j, const char* key, double& out, const char* where) {
  if (!j.contains(key)) return;
  if (!j.at(key).is_number()) throw ConfigError(std::string(where) + ": '" + key + "' must be a number");
  out = j.at(key).get<double>();
}

void read_int_list(const Json& j, const char* key, std::vector<int>& out, const char* where) {
  if (!j.contains(key)) return;
  const auto& a = j.at(key);
  if (!a.is_array()) throw ConfigError(std::string(where) + ": '" + key + "' must be an array");
  out.clear();
  for (const auto& v : a) {
    if (!v.is_number_integer())
      throw ConfigError(std::string(where) + ": '" + key + "' must hold integers");
    out.push_back(v.get<int>());
  }
}

AdamOptions adam_from_json(const Json& j) {
  const char* where = "adam";
  check_keys(j, where, {"learning_rate", "beta1", "beta2", "epsilon"});
  AdamOptions a;
  read_double(j, "learning_rate", a.learning_rate, where);
  read_double(j, "beta1", a.beta1, where);
  read_double(j, "beta2", a.beta2, where);
  read_double(j, "epsilon", a.epsilon, where);
  return a;
}

Json to_json(const AdamOptions& a) {
  return Json{{"learning_rate", a.learning_rate}, {"beta1", a.beta1}, {"beta2", a.beta2},
              {"epsilon", a.epsilon}};
}

GradientBackend parse_backend(const std::string& s) {
  if (s == "surrogate") return GradientBackend::Surrogate;
  if (s == "circuit") return GradientBackend::Circuit;
  throw ConfigError("unknown backend '" + s + "' (expected surrogate or circuit)");
}

std::string backend_name(GradientBackend b) {
  return b == GradientBackend::Surrogate ? "surrogate" : "circuit";
}

}  // namespace

Json parse_config(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  if (!j.contains("schema_version")) throw ConfigError("config: missing schema_version");
  if (!j["schema_version"].is_number_integer() || j["schema_version"].get<int>() != kSchemaVersion)
    throw ConfigError("config: unsupported schema_version (expected " +
                      std::to_string(kSchemaVersion) + ")");
  return j;
}

Json load_config(const std::filesystem::path& path) { return parse_config(read_text_file(path)); }

CircuitSpec circuit_from_json(const Json& j) {
  const char* where = "circuit";
  check_keys(j, where, {"n_qubits", "n_layers", "encoding_scale", "input_dim", "entanglers", "observable",
                        "encoding_gate"});
  CircuitSpec s = CircuitSpec::reference();
  read_int(j, "n_qubits", s.n_qubits, where);
  read_int(j, "n_layers", s.n_layers, where);
  read_double(j, "encoding_scale", s.encoding_scale, where);
  read_int(j, "input_dim", s.input_dim, where);
  if (j.contains("encoding_gate")) {
    std::string gate;
    read(j, "encoding_gate", gate, where);
    if (gate == "rx")
      s.encoding_gate = EncodingGate::RX;
    else if (gate == "ry")
      s.encoding_gate = EncodingGate::RY;
    else
      throw ConfigError("circuit: encoding_gate must be rx or ry");
  }
  if (j.contains("entanglers")) {
    const auto& e = j["entanglers"];
    if (!e.is_array()) throw ConfigError("circuit: entanglers must be an array of [control, target]");
    s.entanglers.clear();
    for (const auto& pair : e) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
          !pair[1].is_number_integer())
        throw ConfigError("circuit: entanglers must be an array of [control, target]");
      s.entanglers.push_back({pair[0].get<int>(), pair[1].get<int>()});
    }
  }
  if (!j.contains("observable") || (j["observable"].is_string() && j["observable"] == "mean_z")) {
    s.observable = Observable::mean_z(s.n_qubits);
  } else {
    const auto& o = j["observable"];
    if (!o.is_array()) throw ConfigError("circuit: observable must be \"mean_z\" or a list of terms");
    std::vector<ZTerm> terms;
    for (const auto& t : o) {
      check_keys(t, "observable term", {"coefficient", "support"});
      ZTerm term;
      read_double(t, "coefficient", term.coefficient, "observable term");
      read(t, "support", term.support, "observable term");
      terms.push_back(term);
    }
    s.observable = Observable(std::move(terms));
  }
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return s;
}

Json to_json(const CircuitSpec& spec) {
  Json ent = Json::array();
  for (const auto& e : spec.entanglers) ent.push_back({e[0], e[1]});
  Json obs = Json::array();
  for (const auto& t : spec.observable.terms())
    obs.push_back(Json{{"coefficient", t.coefficient}, {"support", t.support}});
  return Json{{"n_qubits", spec.n_qubits},       {"n_layers", spec.n_layers},
              {"encoding_scale", spec.encoding_scale}, {"input_dim", spec.input_dim},
              {"entanglers", ent},               {"observable", obs},
              {"encoding_gate", spec.encoding_gate == EncodingGate::RX ? "rx" : "ry"}};
}

ExperimentConfig experiment_from_json(const Json& j) {
  const char* where = "experiment";
  check_keys(j, where,
             {"circuit", "target", "domain", "normalization", "loss", "k", "points", "sampling",
              "epochs", "repeats", "adam", "seed", "eval_points", "backend"});
  ExperimentConfig c;
  if (j.contains("circuit")) c.circuit = circuit_from_json(j["circuit"]);
  read(j, "target", c.target, where);
  if (j.contains("domain")) {
    const auto& d = j["domain"];
    if (!d.is_array() || d.size() != 2 || !d[0].is_number() || !d[1].is_number())
      throw ConfigError("experiment: domain must be [lo, hi]");
    c.domain_lo = d[0].get<double>();
    c.domain_hi = d[1].get<double>();
  }
  std::string name;
  if (j.contains("normalization")) {
    read(j, "normalization", name, where);
    c.normalization = parse_norm_target(name);
  }
  if (j.contains("loss")) {
    read(j, "loss", name, where);
    c.loss = parse_loss_kind(name);
  }
  read_int(j, "k", c.k, where);
  read_int(j, "points", c.points, where);
  if (j.contains("sampling")) {
    read(j, "sampling", name, where);
    if (name == "grid")
      c.sampling = Sampling::Grid;
    else if (name == "uniform")
      c.sampling = Sampling::Uniform;
    else
      throw ConfigError("experiment: sampling must be grid or uniform");
  }
  read_int(j, "epochs", c.epochs, where);
  read_int(j, "repeats", c.repeats, where);
  if (j.contains("adam")) c.adam = adam_from_json(j["adam"]);
  read_u64(j, "seed", c.seed, where);
  read_int(j, "eval_points", c.eval_points, where);
  if (j.contains("backend")) {
    read(j, "backend", name, where);
    c.backend = parse_backend(name);
  }
  c.validate();
  return c;
}

Json to_json(const ExperimentConfig& c) {
  return Json{{"schema_version", kSchemaVersion},
              {"circuit", to_json(c.circuit)},
              {"target", c.target},
              {"domain", {c.domain_lo, c.domain_hi}},
              {"normalization", to_string(c.normalization)},
              {"loss", to_string(c.loss)},
              {"k", c.k},
              {"points", c.points},
              {"sampling", c.sampling == Sampling::Grid ? "grid" : "uniform"},
              {"epochs", c.epochs},
              {"repeats", c.repeats},
              {"adam", to_json(c.adam)},
              {"seed", c.seed},
              {"eval_points", c.eval_points},
              {"backend", backend_name(c.backend)}};
}

GapStudyConfig gap_study_from_json(const Json& j) {
  const char* where = "gap study";
  check_keys(j, where,
             {"circuit", "sample_sizes", "seeds", "base_seed", "target_degree", "epochs", "adam",
              "eval_points", "delta", "L", "backend"});
  GapStudyConfig c;
  if (j.contains("circuit")) c.circuit = circuit_from_json(j["circuit"]);
  read_int_list(j, "sample_sizes", c.sample_sizes, where);
  read_int(j, "seeds", c.seeds, where);
  read_u64(j, "base_seed", c.base_seed, where);
  read_int(j, "target_degree", c.target_degree, where);
  read_int(j, "epochs", c.epochs, where);
  if (j.contains("adam")) c.adam = adam_from_json(j["adam"]);
  read_int(j, "eval_points", c.eval_points, where);
  read_double(j, "delta", c.delta, where);
  read_double(j, "L", c.L, where);
  if (j.contains("backend")) {
    std::string name;
    read(j, "backend", name, where);
    c.backend = parse_backend(name);
  }
  c.validate();
  return c;
}

Json to_json(const GapStudyConfig& c) {
  return Json{{"schema_version", kSchemaVersion},
              {"circuit", to_json(c.circuit)},
              {"sample_sizes", c.sample_sizes},
              {"seeds", c.seeds},
              {"base_seed", c.base_seed},
              {"target_degree", c.target_degree},
              {"epochs", c.epochs},
              {"adam", to_json(c.adam)},
              {"eval_points", c.eval_points},
              {"delta", c.delta},
              {"L", c.L},
              {"backend", backend_name(c.backend)}};
}

FejerStudyConfig fejer_from_json(const Json& j) {
  const char* where = "fejer";
  check_keys(j, where,
             {"Ks", "domain", "delta", "torus_origin", "dft_points", "eval_points", "torus_points"});
  FejerStudyConfig c;
  read_int_list(j, "Ks", c.Ks, where);
  if (j.contains("domain")) {
    const auto& d = j["domain"];
    if (!d.is_array() || d.size() != 2 || !d[0].is_number() || !d[1].is_number())
      throw ConfigError("fejer: domain must be [lo, hi]");
    c.domain_lo = d[0].get<double>();
    c.domain_hi = d[1].get<double>();
  }
  read_double(j, "delta", c.delta, where);
  read_double(j, "torus_origin", c.torus_origin, where);
  read_int(j, "dft_points", c.dft_points, where);
  read_int(j, "eval_points", c.eval_points, where);
  read_int(j, "torus_points", c.torus_points, where);
  c.validate();
  return c;
}

Json to_json(const FejerStudyConfig& c) {
  return Json{{"schema_version", kSchemaVersion},
              {"Ks", c.Ks},
              {"domain", {c.domain_lo, c.domain_hi}},
              {"delta", c.delta},
              {"torus_origin", c.torus_origin},
              {"dft_points", c.dft_points},
              {"eval_points", c.eval_points},
              {"torus_points", c.torus_points}};
}

BoundInputs bound_inputs_from_json(const Json& j) {
  const char* where = "bound inputs";
  check_keys(j, where, {"omega", "xi", "B", "B_tilde", "c", "L", "I", "delta", "regimes"});
  BoundInputs in;
  read(j, "omega", in.omega, where);
  read(j, "xi", in.xi, where);
  read_double(j, "B", in.B, where);
  in.B_tilde = 2.0 * in.B;
  read_double(j, "B_tilde", in.B_tilde, where);
  read_double(j, "c", in.c, where);
  read_double(j, "L", in.L, where);
  read(j, "I", in.I, where);
  read_double(j, "delta", in.delta, where);
  try {
    in.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return in;
}

Json to_json(const BoundInputs& in) {
  return Json{{"omega", in.omega}, {"xi", in.xi}, {"B", in.B},         {"B_tilde", in.B_tilde},
              {"c", in.c},         {"L", in.L},   {"I", in.I},         {"delta", in.delta}};
}

TrigSeries series_from_json(const Json& j) {
  const char* where = "series";
  check_keys(j, where, {"N", "frequencies", "coefficients"});
  int N = 1;
  read_int(j, "N", N, where);
  if (N < 1 || N > kMaxInputDim) throw ConfigError("series: N must lie in 1..3");
  if (!j.contains("frequencies") || !j.contains("coefficients"))
    throw ConfigError("series: frequencies and coefficients are required");
  const auto& fr = j["frequencies"];
  const auto& co = j["coefficients"];
  if (!fr.is_array() || !co.is_array() || fr.size() != co.size())
    throw ConfigError("series: frequencies and coefficients must be arrays of equal length");
  std::vector<Frequency> freqs;
  std::vector<Complex> coeffs;
  for (std::size_t i = 0; i < fr.size(); ++i) {
    if (!fr[i].is_array() || fr[i].size() != static_cast<std::size_t>(N))
      throw ConfigError("series: each frequency needs N integer entries");
    Frequency w{};
    for (int d = 0; d < N; ++d) {
      if (!fr[i][d].is_number_integer()) throw ConfigError("series: frequencies must be integers");
      w[d] = fr[i][d].get<int>();
    }
    if (!co[i].is_array() || co[i].size() != 2 || !co[i][0].is_number() || !co[i][1].is_number())
      throw ConfigError("series: each coefficient must be [re, im]");
    freqs.push_back(w);
    coeffs.emplace_back(co[i][0].get<double>(), co[i][1].get<double>());
  }
  try {
    return TrigSeries(N, std::move(freqs), std::move(coeffs));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("series: ") + e.what());
  }
}

Json to_json(const TrigSeries& s) {
  Json fr = Json::array(), co = Json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    Json w = Json::array();
    for (int d = 0; d < s.input_dim(); ++d) w.push_back(s.frequencies()[i][d]);
    fr.push_back(w);
    co.push_back({s.coefficients()[i].real(), s.coefficients()[i].imag()});
  }
  return Json{{"N", s.input_dim()}, {"frequencies", fr}, {"coefficients", co}};
}

}  // namespace spqc
