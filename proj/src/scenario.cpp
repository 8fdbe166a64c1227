#include "prefadapt/scenario.hpp"

#include "prefadapt/errors.hpp"

#include <algorithm>
#include <cmath>

namespace prefadapt {

SituationGenerator SituationGenerator::with_defaults(std::size_t n, std::size_t m_raw) {
  SituationGenerator gen;
  gen.n = n;
  gen.m_raw = m_raw;
  gen.avail_high = static_cast<double>(n);
  return gen;
}

void SituationGenerator::validate() const {
  if (n == 0) throw InvalidArgument("SituationGenerator: n must be positive");
  if (!(entry_low > 0.0 && entry_low <= entry_high && std::isfinite(entry_high))) {
    throw InvalidArgument("SituationGenerator: need 0 < entry_low <= entry_high");
  }
  if (!(avail_low >= 0.0 && avail_low <= avail_high && std::isfinite(avail_high))) {
    throw InvalidArgument("SituationGenerator: need 0 <= avail_low <= avail_high");
  }
  if (fixed_demand && (fixed_demand->rows() != static_cast<Eigen::Index>(m_raw) ||
                       fixed_demand->cols() != static_cast<Eigen::Index>(n))) {
    throw InvalidArgument("SituationGenerator: fixed demand has the wrong shape");
  }
}

namespace {

Matrix draw_demand(const SituationGenerator& gen, Rng& rng) {
  Matrix a(static_cast<Eigen::Index>(gen.m_raw), static_cast<Eigen::Index>(gen.n));
  // Row-major draw order, stable across storage layouts.
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = rng.uniform(gen.entry_low, gen.entry_high);
  }
  return a;
}

}  // namespace

SituationGenerator fix_demand(SituationGenerator gen, Rng& rng) {
  gen.validate();
  if (!gen.redraw_demand) gen.fixed_demand = draw_demand(gen, rng);
  return gen;
}

LpInstance next_situation(const SituationGenerator& gen, Rng& rng) {
  gen.validate();
  const Matrix a = (gen.fixed_demand && !gen.redraw_demand) ? *gen.fixed_demand : draw_demand(gen, rng);
  Vector a0(static_cast<Eigen::Index>(gen.m_raw));
  for (auto& v : a0) v = rng.uniform(gen.avail_low, gen.avail_high);
  Vector b(static_cast<Eigen::Index>(gen.n));
  for (auto& v : b) v = rng.uniform(gen.avail_low, gen.avail_high);
  return canonicalize(a, a0, b);
}

void PreferenceSchedule::validate() const {
  if (targets.empty()) throw InvalidArgument("PreferenceSchedule: no targets");
  const auto n = targets.front().n();
  for (const auto& t : targets) {
    if (t.n() != n) throw InvalidArgument("PreferenceSchedule: targets differ in dimension");
  }
  if (epoch_length < 1) throw InvalidArgument("PreferenceSchedule: epoch_length must be at least 1");
  if (!(drift_rate >= 0.0 && std::isfinite(drift_rate))) {
    throw InvalidArgument("PreferenceSchedule: drift_rate must be finite and nonnegative");
  }
}

UnitPreference preference_at(const PreferenceSchedule& sched, std::size_t t) {
  sched.validate();
  switch (sched.kind) {
    case ScheduleKind::kFixed:
      return sched.targets.front();
    case ScheduleKind::kStep:
      return sched.targets[(t / sched.epoch_length) % sched.targets.size()];
    case ScheduleKind::kDrift: {
      if (sched.targets.size() < 2 || sched.drift_rate == 0.0) return sched.targets.front();
      const Vector& from = sched.targets[0].c();
      const Vector& to = sched.targets[1].c();
      const double span = std::acos(std::clamp(from.dot(to), -1.0, 1.0));
      if (span < 1e-12) return sched.targets.front();
      const double angle = std::min(sched.drift_rate * static_cast<double>(t), span);
      if (angle >= span) return sched.targets[1];
      // Both weights are nonnegative for angle in [0, span], so the result
      // stays in the nonnegative orthant.
      const Vector c = (std::sin(span - angle) * from + std::sin(angle) * to) / std::sin(span);
      return UnitPreference::normalized(c.cwiseMax(0.0));
    }
  }
  throw InvalidArgument("PreferenceSchedule: unknown kind");
}

std::size_t epoch_at(const PreferenceSchedule& sched, std::size_t t) {
  return sched.kind == ScheduleKind::kStep ? t / sched.epoch_length : 0;
}

}  // namespace prefadapt
