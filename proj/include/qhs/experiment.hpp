#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "qhs/engine.hpp"

namespace qhs {

inline constexpr const char* kVersion = "0.1.0";

enum class ExperimentKind { simulate, simon, shor, sweep_transversal, irreps, fourier_check, recover };

std::string to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view text);

// An element index, or its structured form: tuple digits for product groups,
// [a, b] = r^a s^b for dihedral groups, [x] for cyclic groups.
using GeneratorSpec = std::variant<std::uint64_t, std::vector<std::uint64_t>>;

struct TransversalSpec {
  std::string kind = "shor";  // shor | offset
  std::optional<std::int64_t> bound;
  friend bool operator==(const TransversalSpec&, const TransversalSpec&) = default;
};

// Optional fields stay unset when absent from the JSON so that
// parse -> serialize -> parse is the identity.
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::simulate;
  std::optional<std::string> group;
  std::vector<GeneratorSpec> hidden_generators;
  std::optional<TransversalSpec> transversal;
  std::optional<std::uint64_t> q;
  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> a;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seeds;
  std::uint64_t seed = 0;
  bool allow_any_q = false;
  std::optional<std::string> second_transform;
  std::optional<std::string> measure_granularity;
  std::optional<std::string> ordering;
  std::optional<std::string> dist;
  std::optional<std::string> out_dir;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Strict: unknown keys, wrong types and failed validation raise ConfigError
// naming the field. Resource caps raise ResourceLimitError.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);
// Semantic checks, including resource caps. parse_config calls this.
void validate_config(const ExperimentConfig& cfg);

struct ExperimentReport {
  ExperimentConfig config;
  std::optional<OutcomeDistribution> distribution;
  std::vector<std::string> samples;          // outcome labels in trial order
  std::map<std::string, double> metrics;
  nlohmann::json body;                       // full report, self-contained for replay
  std::map<std::string, std::string> files;  // written artifacts: name -> contents

  std::string samples_csv() const;
};

// Runs the experiment; when config.out_dir is set every artifact in
// report.files is also written there. Output bytes depend only on the config.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

// Subgroup named by the generator specs of a config.
Subgroup hidden_subgroup(const FiniteGroup& g, const std::vector<GeneratorSpec>& gens);

nlohmann::json irreps_json(const FiniteGroup& g);
nlohmann::json representation_report_json(const RepresentationReport& rep);

}  // namespace qhs
