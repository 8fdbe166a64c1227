#pragma once

// Effectiveness and adaptation measures over simulated traces.

#include "prefadapt/lp.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace prefadapt {

struct StepRecord {
  std::size_t t = 0;
  double eta = 0.0;       // normalized effectiveness in [0, 1]
  bool coincide = false;  // robot decision equals the true optimum
  UnitPreference c_hat = UnitPreference::uniform(1);
  std::size_t epoch = 0;
};

struct EffectivenessTrace {
  std::size_t replication_id = 0;
  std::size_t n = 0;
  std::vector<StepRecord> records;  // one per step, ordered by t
};

struct StepEffectiveness {
  double eta = 1.0;
  bool coincide = true;
};

/// eta = c_true.x_hat / c_true.x_star where x_hat and x_star are the
/// solver's decisions under c_hat and c_true; eta = 1 when the optimum is 0.
StepEffectiveness step_effectiveness(const LpInstance& inst, const UnitPreference& c_hat,
                                     const UnitPreference& c_true);

struct CurvePoint {
  std::size_t t = 0;
  double mean_eta = 0.0;
  double coincide_rate = 0.0;
};

/// Pointwise mean over replications. Throws InvalidArgument when traces are
/// empty or disagree in horizon or dimension.
std::vector<CurvePoint> learning_curve(std::span<const EffectivenessTrace> traces);

/// Smallest offset s >= 0 such that, pooled over all traces and the steps
/// [begin + s, begin + s + window), the coincidence frequency is at least
/// beta. Only steps in [begin, end) are considered; `end` defaults to the
/// horizon. Returns nullopt if no such s exists. Throws InvalidArgument when
/// the window does not fit in [begin, end) or beta is outside (0, 1].
std::optional<std::size_t> adaptation_period(std::span<const EffectivenessTrace> traces, double beta,
                                             std::size_t window, std::size_t begin = 0,
                                             std::optional<std::size_t> end = std::nullopt);

/// Per-step adaptation flags for one trace: within each stationary epoch
/// (maximal run of equal `epoch`), steps at or after that epoch's adaptation
/// period are flagged. Epochs shorter than `window` are never flagged.
std::vector<bool> tau_flags(const EffectivenessTrace& trace, double beta, std::size_t window);

/// Mean eta over all steps and replications. Throws on empty input.
double time_average_effectiveness(std::span<const EffectivenessTrace> traces);

/// Standard error of the per-replication time averages (0 for one trace).
double replication_std_error(std::span<const EffectivenessTrace> traces);

struct FrontierPoint {
  std::size_t epoch_length = 0;
  double mean_eta = 0.0;
  double std_error = 0.0;
  bool qualifies = false;
};

struct FrontierResult {
  std::vector<FrontierPoint> points;
  std::optional<std::size_t> t_critical;  // smallest qualifying epoch length
};

/// Builds the frontier table from per-epoch-length runs, ordered as given.
/// A point qualifies when mean_eta >= theta.
FrontierResult summarize_frontier(std::span<const std::size_t> epoch_lengths,
                                  std::span<const std::vector<EffectivenessTrace>> runs, double theta);

/// True when no point falls below an earlier one by more than `k_se`
/// combined standard errors.
bool monotone_within_errors(const FrontierResult& frontier, double k_se = 2.0);

/// Number of adjacent pairs with values[i + 1] < values[i].
std::size_t count_decreasing_pairs(std::span<const double> values);

}  // namespace prefadapt
