#include "prefadapt/metrics.hpp"

#include "prefadapt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace prefadapt {

StepEffectiveness step_effectiveness(const LpInstance& inst, const UnitPreference& c_hat,
                                     const UnitPreference& c_true) {
  const Vertex robot = solve_lp(inst, c_hat).vertex;
  const LpSolution best = solve_lp(inst, c_true);
  StepEffectiveness out;
  out.coincide = same_point(robot.x, best.vertex.x);
  if (best.value <= 0.0) {
    out.eta = 1.0;
  } else {
    out.eta = std::clamp(objective_value(c_true, robot.x) / best.value, 0.0, 1.0);
  }
  return out;
}

namespace {

void check_traces(std::span<const EffectivenessTrace> traces) {
  if (traces.empty()) throw InvalidArgument("no traces");
  const auto horizon = traces.front().records.size();
  const auto n = traces.front().n;
  for (const auto& tr : traces) {
    if (tr.records.size() != horizon) throw InvalidArgument("traces differ in horizon");
    if (tr.n != n) throw InvalidArgument("traces differ in dimension");
  }
}

double trace_mean(const EffectivenessTrace& trace) {
  if (trace.records.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& r : trace.records) sum += r.eta;
  return sum / static_cast<double>(trace.records.size());
}

}  // namespace

std::vector<CurvePoint> learning_curve(std::span<const EffectivenessTrace> traces) {
  check_traces(traces);
  const auto horizon = traces.front().records.size();
  const auto count = static_cast<double>(traces.size());
  std::vector<CurvePoint> curve(horizon);
  for (std::size_t t = 0; t < horizon; ++t) {
    double eta = 0.0;
    double hits = 0.0;
    for (const auto& tr : traces) {
      eta += tr.records[t].eta;
      hits += tr.records[t].coincide ? 1.0 : 0.0;
    }
    curve[t] = CurvePoint{traces.front().records[t].t, eta / count, hits / count};
  }
  return curve;
}

std::optional<std::size_t> adaptation_period(std::span<const EffectivenessTrace> traces, double beta,
                                             std::size_t window, std::size_t begin,
                                             std::optional<std::size_t> end) {
  check_traces(traces);
  if (!(beta > 0.0 && beta <= 1.0)) throw InvalidArgument("adaptation_period: beta must lie in (0, 1]");
  if (window == 0) throw InvalidArgument("adaptation_period: window must be at least 1");
  const std::size_t stop = end.value_or(traces.front().records.size());
  if (stop > traces.front().records.size() || begin > stop || window > stop - begin) {
    throw InvalidArgument("adaptation_period: window exceeds the horizon");
  }

  // Coincidence counts per step pooled over replications, then a sliding sum.
  std::vector<std::size_t> hits(stop - begin, 0);
  for (const auto& tr : traces) {
    for (std::size_t t = begin; t < stop; ++t) hits[t - begin] += tr.records[t].coincide ? 1 : 0;
  }
  const double pool = static_cast<double>(window * traces.size());
  std::size_t in_window = std::accumulate(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(window),
                                          std::size_t{0});
  for (std::size_t s = 0; s + window <= hits.size(); ++s) {
    if (s > 0) in_window = in_window + hits[s + window - 1] - hits[s - 1];
    if (static_cast<double>(in_window) >= beta * pool) return s;
  }
  return std::nullopt;
}

std::vector<bool> tau_flags(const EffectivenessTrace& trace, double beta, std::size_t window) {
  std::vector<bool> flags(trace.records.size(), false);
  const std::span<const EffectivenessTrace> one(&trace, 1);
  std::size_t start = 0;
  while (start < trace.records.size()) {
    std::size_t stop = start;
    while (stop < trace.records.size() && trace.records[stop].epoch == trace.records[start].epoch) ++stop;
    if (stop - start >= window) {
      if (const auto tau = adaptation_period(one, beta, window, start, stop)) {
        for (std::size_t t = start + *tau; t < stop; ++t) flags[t] = true;
      }
    }
    start = stop;
  }
  return flags;
}

double time_average_effectiveness(std::span<const EffectivenessTrace> traces) {
  if (traces.empty()) throw InvalidArgument("time_average_effectiveness: no traces");
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& tr : traces) {
    for (const auto& r : tr.records) sum += r.eta;
    count += tr.records.size();
  }
  if (count == 0) throw InvalidArgument("time_average_effectiveness: traces have no steps");
  return sum / static_cast<double>(count);
}

double replication_std_error(std::span<const EffectivenessTrace> traces) {
  if (traces.size() < 2) return 0.0;
  std::vector<double> means;
  means.reserve(traces.size());
  for (const auto& tr : traces) means.push_back(trace_mean(tr));
  const double mean = std::accumulate(means.begin(), means.end(), 0.0) / static_cast<double>(means.size());
  double ss = 0.0;
  for (const double v : means) ss += (v - mean) * (v - mean);
  const double var = ss / static_cast<double>(means.size() - 1);
  return std::sqrt(var / static_cast<double>(means.size()));
}

FrontierResult summarize_frontier(std::span<const std::size_t> epoch_lengths,
                                  std::span<const std::vector<EffectivenessTrace>> runs, double theta) {
  if (epoch_lengths.size() != runs.size()) throw InvalidArgument("summarize_frontier: size mismatch");
  FrontierResult out;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    FrontierPoint p;
    p.epoch_length = epoch_lengths[i];
    p.mean_eta = time_average_effectiveness(runs[i]);
    p.std_error = replication_std_error(runs[i]);
    p.qualifies = p.mean_eta >= theta;
    if (p.qualifies && !out.t_critical) out.t_critical = p.epoch_length;
    out.points.push_back(p);
  }
  return out;
}

bool monotone_within_errors(const FrontierResult& frontier, double k_se) {
  const auto& pts = frontier.points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double se = std::hypot(pts[i].std_error, pts[j].std_error);
      if (pts[j].mean_eta < pts[i].mean_eta - k_se * se) return false;
    }
  }
  return true;
}

std::size_t count_decreasing_pairs(std::span<const double> values) {
  std::size_t count = 0;
  for (std::size_t i = 1; i < values.size(); ++i) count += values[i] < values[i - 1] ? 1 : 0;
  return count;
}

}  // namespace prefadapt
