#pragma once

// Changing environment: random decision situations and the schedule that
// moves the operator's true preferences over time.

#include "prefadapt/lp.hpp"
#include "prefadapt/random.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace prefadapt {

/// Draws allocation problems. Demand entries are uniform on
/// [entry_low, entry_high]; availabilities and per-variable bounds are
/// uniform on [avail_low, avail_high]. In the default fixed-demand mode the
/// demand matrix is drawn once per replication (see fix_demand) and only the
/// availabilities and bounds change between situations.
struct SituationGenerator {
  std::size_t n = 2;
  std::size_t m_raw = 2;
  double entry_low = 0.1;
  double entry_high = 1.0;
  double avail_low = 1.0;
  double avail_high = 2.0;
  bool redraw_demand = false;
  std::optional<Matrix> fixed_demand;

  /// Defaults with avail_high = n.
  static SituationGenerator with_defaults(std::size_t n, std::size_t m_raw);

  /// Throws InvalidArgument on empty dimensions or inverted/negative ranges.
  void validate() const;
};

/// Copy of `gen` whose demand matrix is drawn now and then held fixed.
/// Returns `gen` unchanged when redraw_demand is set.
SituationGenerator fix_demand(SituationGenerator gen, Rng& rng);

/// One canonicalized situation. Bounded and origin-feasible by construction.
LpInstance next_situation(const SituationGenerator& gen, Rng& rng);

enum class ScheduleKind { kFixed, kStep, kDrift };

struct PreferenceSchedule {
  ScheduleKind kind = ScheduleKind::kFixed;
  std::size_t epoch_length = 1;  // steps per epoch, step kind
  std::vector<UnitPreference> targets;
  double drift_rate = 0.0;  // radians per step, drift kind

  void validate() const;
};

/// True preferences at step t.
///   fixed: targets[0]
///   step:  targets[(t / epoch_length) mod |targets|], the change landing on
///          the first step of each new epoch
///   drift: targets[0] rotated toward targets[1] along the great circle by
///          drift_rate * t radians, stopping at targets[1]
UnitPreference preference_at(const PreferenceSchedule& sched, std::size_t t);

/// Index of the stationary epoch containing t (always 0 unless step kind).
std::size_t epoch_at(const PreferenceSchedule& sched, std::size_t t);

}  // namespace prefadapt
