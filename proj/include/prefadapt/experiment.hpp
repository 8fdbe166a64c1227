#pragma once

// Experiment runner: situation -> operator -> estimator -> metrics over a
// horizon and a number of independent replications.
//
// Replication r draws from three streams seeded from derive_seed(seed, r):
// observed situations, operator noise, and held-out probe situations on
// which the current estimate is scored. Situations therefore do not depend on
// operator settings, and every replication is reproducible on its own. run_experiment spreads replications over OpenMP threads;
// run_experiment_serial is the single-threaded reference. Both return
// identical traces.

#include "prefadapt/metrics.hpp"
#include "prefadapt/operator.hpp"
#include "prefadapt/scenario.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace prefadapt {

std::string version();

struct MetricsConfig {
  double beta = 0.95;
  std::size_t window = 20;

  friend bool operator==(const MetricsConfig&, const MetricsConfig&) = default;
};

struct OutputConfig {
  std::string dir = "out";
  std::string per_step = "steps.csv";
  std::string curve = "curve.csv";
  std::string manifest = "manifest.json";
  std::string plot_file = "curve.svg";
  bool plot = false;

  friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct ExperimentConfig {
  std::size_t n = 2;
  std::size_t m_raw = 2;
  std::size_t horizon = 100;
  std::size_t replications = 1;
  std::uint64_t seed = 1;
  OperatorConfig op;
  std::size_t estimator_window = 40;
  PreferenceSchedule schedule;
  SituationGenerator generator;
  MetricsConfig metrics;
  OutputConfig outputs;

  /// Throws ConfigError naming the first offending field.
  void validate() const;
};

bool operator==(const ExperimentConfig& lhs, const ExperimentConfig& rhs);

/// Parses the JSON document. Unknown keys are rejected; missing keys take
/// their defaults. Targets are normalized to unit length.
ExperimentConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig load_config(const std::filesystem::path& path);

struct RunManifest {
  ExperimentConfig config;
  std::string version;
  std::vector<std::uint64_t> replication_seeds;
  double wall_seconds = 0.0;
  std::map<std::string, std::string> digests;  // file name -> SHA-256 hex
};

nlohmann::json manifest_to_json(const RunManifest& manifest);

struct RunResult {
  std::vector<EffectivenessTrace> traces;  // ordered by replication id
  RunManifest manifest;
};

std::uint64_t replication_seed(std::uint64_t seed, std::size_t replication);

/// Simulates one replication over the whole horizon. Step t learns from the
/// operator's decision on situation t, then scores the updated estimate on a
/// probe situation drawn from the same generator.
EffectivenessTrace run_replication(const ExperimentConfig& cfg, std::size_t replication);

/// OpenMP-parallel over replications.
RunResult run_experiment(const ExperimentConfig& cfg);

/// Serial reference for run_experiment.
RunResult run_experiment_serial(const ExperimentConfig& cfg);

/// Mean eta of the fixed uniform estimate on the same situations and
/// schedule: the effectiveness of a robot that never learns.
double uninformed_baseline(const ExperimentConfig& cfg);

/// Runs `base` once per epoch length with a step schedule and reports the
/// time-averaged effectiveness per length. `epoch_lengths` must be nonempty
/// and strictly ascending; `base` needs at least two targets.
FrontierResult frontier_sweep(const ExperimentConfig& base, const std::vector<std::size_t>& epoch_lengths,
                              double theta);

struct OutputFiles {
  std::filesystem::path per_step;
  std::filesystem::path curve;
  std::filesystem::path manifest;
  std::filesystem::path plot;  // empty when not written
};

/// Writes the per-step CSV, the aggregated curve CSV, the optional SVG plot
/// and the manifest (with digests of the other files) under `out_dir`.
/// Throws Error when a file cannot be written.
OutputFiles emit_outputs(RunResult& result, const std::filesystem::path& out_dir);

/// CSV renderings, LF line endings, '.' decimal point.
std::string per_step_csv(const std::vector<EffectivenessTrace>& traces, const MetricsConfig& metrics);
std::string curve_csv(const std::vector<CurvePoint>& curve);
std::string frontier_csv(const FrontierResult& frontier);
std::string curve_svg(const std::vector<CurvePoint>& curve);

std::string sha256_hex(const std::string& bytes);

}  // namespace prefadapt
