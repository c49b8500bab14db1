#pragma once

#include <filesystem>

#include <json.hpp>

#include "sobolev_pqc/bounds.hpp"
#include "sobolev_pqc/experiments.hpp"
#include "sobolev_pqc/trainer.hpp"
#include "sobolev_pqc/trigseries.hpp"

namespace spqc {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Reads a JSON document; IoError when unreadable, ConfigError when malformed
// or when schema_version is missing or unsupported.
Json load_config(const std::filesystem::path& path);
Json parse_config(const std::string& text);

// All readers reject unknown keys and wrongly typed values with ConfigError.
// Missing keys keep their defaults.
CircuitSpec circuit_from_json(const Json& j);
Json to_json(const CircuitSpec& spec);

ExperimentConfig experiment_from_json(const Json& j);
Json to_json(const ExperimentConfig& config);

GapStudyConfig gap_study_from_json(const Json& j);
Json to_json(const GapStudyConfig& config);

FejerStudyConfig fejer_from_json(const Json& j);
Json to_json(const FejerStudyConfig& config);

BoundInputs bound_inputs_from_json(const Json& j);
Json to_json(const BoundInputs& in);

// {"N": 1, "frequencies": [[w1..wN], ...], "coefficients": [[re, im], ...]}
TrigSeries series_from_json(const Json& j);
Json to_json(const TrigSeries& s);

}  // namespace spqc
