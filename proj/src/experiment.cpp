#include "prefadapt/experiment.hpp"

#include "prefadapt/errors.hpp"
#include "prefadapt/estimator.hpp"

#include <chrono>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace prefadapt {

std::string version() { return PREFADAPT_VERSION; }

std::uint64_t replication_seed(std::uint64_t seed, std::size_t replication) {
  return derive_seed(seed, replication);
}

namespace {

constexpr std::uint64_t kSituationStream = 1;
constexpr std::uint64_t kDecisionStream = 2;
constexpr std::uint64_t kEvaluationStream = 3;

struct Streams {
  Rng situations;
  Rng decisions;
  Rng evaluation;
  SituationGenerator generator;
};

Streams open_streams(const ExperimentConfig& cfg, std::size_t replication) {
  const std::uint64_t seed = replication_seed(cfg.seed, replication);
  Rng situations(derive_seed(seed, kSituationStream));
  Rng decisions(derive_seed(seed, kDecisionStream));
  Rng evaluation(derive_seed(seed, kEvaluationStream));
  SituationGenerator gen = fix_demand(cfg.generator, situations);
  return Streams{situations, decisions, evaluation, std::move(gen)};
}

}  // namespace

EffectivenessTrace run_replication(const ExperimentConfig& cfg, std::size_t replication) {
  Streams s = open_streams(cfg, replication);
  OperatorConfig op = cfg.op;
  op.seed = derive_seed(replication_seed(cfg.seed, replication), kDecisionStream);

  EffectivenessTrace trace;
  trace.replication_id = replication;
  trace.n = cfg.n;
  trace.records.reserve(cfg.horizon);

  CutSet state(cfg.n, cfg.estimator_window);
  UnitPreference c_hat = UnitPreference::uniform(cfg.n);
  for (std::size_t t = 0; t < cfg.horizon; ++t) {
    LpInstance inst = next_situation(s.generator, s.situations);
    const UnitPreference c_true = preference_at(cfg.schedule, t);
    Vertex chosen = choose(inst, c_true, op, s.decisions);
    const Label label = evaluate(inst, chosen, c_true, op);

    // Bad observations leave the estimate as it was.
    if (label == Label::kGood) {
      EstimateUpdate upd = update_estimate(state, Observation{t, inst, std::move(chosen), label});
      state = std::move(upd.state);
      c_hat = upd.estimate.c_hat;
    }

    // Score on a fresh situation: on `inst` itself the newest cuts already
    // force c_hat to reproduce the operator's choice.
    const LpInstance probe = next_situation(s.generator, s.evaluation);
    const StepEffectiveness eff = step_effectiveness(probe, c_hat, c_true);
    trace.records.push_back(StepRecord{t, eff.eta, eff.coincide, c_hat, epoch_at(cfg.schedule, t)});
  }
  return trace;
}

namespace {

RunManifest make_manifest(const ExperimentConfig& cfg, double seconds) {
  RunManifest manifest;
  manifest.config = cfg;
  manifest.version = version();
  manifest.wall_seconds = seconds;
  for (std::size_t r = 0; r < cfg.replications; ++r) manifest.replication_seeds.push_back(replication_seed(cfg.seed, r));
  return manifest;
}

}  // namespace

RunResult run_experiment_serial(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  result.traces.reserve(cfg.replications);
  for (std::size_t r = 0; r < cfg.replications; ++r) result.traces.push_back(run_replication(cfg, r));
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  result.manifest = make_manifest(cfg, elapsed.count());
  return result;
}

RunResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto count = static_cast<std::int64_t>(cfg.replications);
  std::vector<EffectivenessTrace> traces(cfg.replications);
  std::vector<std::exception_ptr> errors(cfg.replications);

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t r = 0; r < count; ++r) {
    const auto idx = static_cast<std::size_t>(r);
    try {
      traces[idx] = run_replication(cfg, idx);
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  RunResult result;
  result.traces = std::move(traces);
  result.manifest = make_manifest(cfg, elapsed.count());
  return result;
}

double uninformed_baseline(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto count = static_cast<std::int64_t>(cfg.replications);
  std::vector<double> sums(cfg.replications, 0.0);
  const UnitPreference uniform = UnitPreference::uniform(cfg.n);

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t r = 0; r < count; ++r) {
    const auto idx = static_cast<std::size_t>(r);
    Streams s = open_streams(cfg, idx);
    for (std::size_t t = 0; t < cfg.horizon; ++t) {
      const LpInstance probe = next_situation(s.generator, s.evaluation);
      sums[idx] += step_effectiveness(probe, uniform, preference_at(cfg.schedule, t)).eta;
    }
  }
  double total = 0.0;
  for (const double v : sums) total += v;
  return total / static_cast<double>(cfg.replications * cfg.horizon);
}

FrontierResult frontier_sweep(const ExperimentConfig& base, const std::vector<std::size_t>& epoch_lengths,
                              double theta) {
  if (epoch_lengths.empty()) throw InvalidArgument("frontier_sweep: empty grid");
  for (std::size_t i = 0; i < epoch_lengths.size(); ++i) {
    if (epoch_lengths[i] == 0) throw InvalidArgument("frontier_sweep: epoch lengths must be positive");
    if (i > 0 && epoch_lengths[i] <= epoch_lengths[i - 1]) {
      throw InvalidArgument("frontier_sweep: grid must be strictly ascending");
    }
  }
  if (base.schedule.targets.size() < 2) throw ConfigError("schedule.targets", "frontier needs at least two targets");

  std::vector<std::vector<EffectivenessTrace>> runs;
  runs.reserve(epoch_lengths.size());
  for (const auto length : epoch_lengths) {
    ExperimentConfig cfg = base;
    cfg.schedule.kind = ScheduleKind::kStep;
    cfg.schedule.epoch_length = length;
    runs.push_back(run_experiment(cfg).traces);
  }
  return summarize_frontier(epoch_lengths, runs, theta);
}

}  // namespace prefadapt
