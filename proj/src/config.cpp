#include "prefadapt/errors.hpp"
#include "prefadapt/experiment.hpp"

#include <fstream>
#include <set>

namespace prefadapt {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::string& where, const std::set<std::string>& known) {
  if (!obj.is_object()) throw ConfigError(where.empty() ? "<root>" : where, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (!known.count(key)) throw ConfigError(where.empty() ? key : where + "." + key, "unknown key");
  }
}

std::string join(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

template <typename T>
void read(const json& obj, const std::string& where, const std::string& key, T& out) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  const std::string field = join(where, key);
  if constexpr (std::is_same_v<T, bool>) {
    if (!v.is_boolean()) throw ConfigError(field, "expected a boolean");
  } else if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_unsigned()) throw ConfigError(field, "expected a nonnegative integer");
  } else if constexpr (std::is_floating_point_v<T>) {
    if (!v.is_number()) throw ConfigError(field, "expected a number");
  } else {
    if (!v.is_string()) throw ConfigError(field, "expected a string");
  }
  out = v.get<T>();
}

const char* kind_name(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::kFixed: return "fixed";
    case ScheduleKind::kStep: return "step";
    case ScheduleKind::kDrift: return "drift";
  }
  return "fixed";
}

ScheduleKind parse_kind(const json& v) {
  if (!v.is_string()) throw ConfigError("schedule.kind", "expected a string");
  const auto s = v.get<std::string>();
  if (s == "fixed") return ScheduleKind::kFixed;
  if (s == "step") return ScheduleKind::kStep;
  if (s == "drift") return ScheduleKind::kDrift;
  throw ConfigError("schedule.kind", "expected one of fixed, step, drift");
}

std::vector<UnitPreference> parse_targets(const json& v) {
  if (!v.is_array() || v.empty()) throw ConfigError("schedule.targets", "expected a nonempty array of vectors");
  std::vector<UnitPreference> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string field = "schedule.targets[" + std::to_string(i) + "]";
    const json& row = v[i];
    if (!row.is_array() || row.empty()) throw ConfigError(field, "expected a nonempty array of numbers");
    Vector c(static_cast<Eigen::Index>(row.size()));
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (!row[j].is_number()) throw ConfigError(field, "expected numbers");
      c[static_cast<Eigen::Index>(j)] = row[j].get<double>();
    }
    if ((c.array() < 0.0).any()) throw ConfigError(field, "components must be nonnegative");
    if ((c.array() == 0.0).all()) throw ConfigError(field, "all components are zero");
    try {
      out.push_back(UnitPreference::normalized(c));
    } catch (const InvalidArgument& e) {
      throw ConfigError(field, e.what());
    }
  }
  return out;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (n == 0) throw ConfigError("n", "must be at least 1");
  if (horizon == 0) throw ConfigError("horizon", "must be at least 1");
  if (replications == 0) throw ConfigError("replications", "must be at least 1");
  if (estimator_window == 0) throw ConfigError("estimator.window", "must be at least 1");
  if (!(op.p_noise >= 0.0 && op.p_noise <= 1.0)) throw ConfigError("operator.p_noise", "must lie in [0, 1]");
  if (!(op.delta_good >= 0.0 && op.delta_good <= 1.0)) {
    throw ConfigError("operator.delta_good", "must lie in [0, 1]");
  }
  if (schedule.targets.empty()) throw ConfigError("schedule.targets", "at least one target is required");
  for (std::size_t i = 0; i < schedule.targets.size(); ++i) {
    if (schedule.targets[i].n() != n) {
      throw ConfigError("schedule.targets[" + std::to_string(i) + "]", "length differs from n");
    }
  }
  if (schedule.epoch_length == 0) throw ConfigError("schedule.epoch_length", "must be at least 1");
  if (!(schedule.drift_rate >= 0.0 && std::isfinite(schedule.drift_rate))) {
    throw ConfigError("schedule.drift_rate", "must be finite and nonnegative");
  }
  if (generator.n != n || generator.m_raw != m_raw) throw ConfigError("generator", "dimensions differ from n, m_raw");
  if (!(generator.entry_low > 0.0)) throw ConfigError("generator.entry_low", "must be positive");
  if (!(generator.entry_low <= generator.entry_high)) {
    throw ConfigError("generator.entry_high", "must be at least entry_low");
  }
  if (!(generator.avail_low >= 0.0)) throw ConfigError("generator.avail_low", "must be nonnegative");
  if (!(generator.avail_low <= generator.avail_high)) {
    throw ConfigError("generator.avail_high", "must be at least avail_low");
  }
  if (!std::isfinite(generator.entry_high) || !std::isfinite(generator.avail_high)) {
    throw ConfigError("generator", "ranges must be finite");
  }
  if (!(metrics.beta > 0.0 && metrics.beta <= 1.0)) throw ConfigError("metrics.beta", "must lie in (0, 1]");
  if (metrics.window == 0) throw ConfigError("metrics.window", "must be at least 1");
}

bool operator==(const ExperimentConfig& lhs, const ExperimentConfig& rhs) {
  const auto& gl = lhs.generator;
  const auto& gr = rhs.generator;
  return lhs.n == rhs.n && lhs.m_raw == rhs.m_raw && lhs.horizon == rhs.horizon &&
         lhs.replications == rhs.replications && lhs.seed == rhs.seed && lhs.op == rhs.op &&
         lhs.estimator_window == rhs.estimator_window && lhs.schedule.kind == rhs.schedule.kind &&
         lhs.schedule.epoch_length == rhs.schedule.epoch_length && lhs.schedule.targets == rhs.schedule.targets &&
         lhs.schedule.drift_rate == rhs.schedule.drift_rate && gl.n == gr.n && gl.m_raw == gr.m_raw &&
         gl.entry_low == gr.entry_low && gl.entry_high == gr.entry_high && gl.avail_low == gr.avail_low &&
         gl.avail_high == gr.avail_high && gl.redraw_demand == gr.redraw_demand && lhs.metrics == rhs.metrics &&
         lhs.outputs == rhs.outputs;
}

ExperimentConfig config_from_json(const json& doc) {
  reject_unknown(doc, "", {"n", "m_raw", "horizon", "replications", "seed", "operator", "estimator", "schedule",
                           "generator", "metrics", "outputs"});
  ExperimentConfig cfg;
  read(doc, "", "n", cfg.n);
  cfg.m_raw = cfg.n;
  read(doc, "", "m_raw", cfg.m_raw);
  read(doc, "", "horizon", cfg.horizon);
  read(doc, "", "replications", cfg.replications);
  read(doc, "", "seed", cfg.seed);
  if (cfg.n == 0) throw ConfigError("n", "must be at least 1");

  if (doc.contains("operator")) {
    const json& op = doc.at("operator");
    reject_unknown(op, "operator", {"p_noise", "delta_good"});
    read(op, "operator", "p_noise", cfg.op.p_noise);
    read(op, "operator", "delta_good", cfg.op.delta_good);
  }
  if (doc.contains("estimator")) {
    const json& est = doc.at("estimator");
    reject_unknown(est, "estimator", {"window"});
    read(est, "estimator", "window", cfg.estimator_window);
  }

  cfg.schedule.kind = ScheduleKind::kFixed;
  cfg.schedule.epoch_length = 100;
  if (doc.contains("schedule")) {
    const json& s = doc.at("schedule");
    reject_unknown(s, "schedule", {"kind", "epoch_length", "targets", "drift_rate"});
    if (s.contains("kind")) cfg.schedule.kind = parse_kind(s.at("kind"));
    read(s, "schedule", "epoch_length", cfg.schedule.epoch_length);
    read(s, "schedule", "drift_rate", cfg.schedule.drift_rate);
    if (s.contains("targets")) cfg.schedule.targets = parse_targets(s.at("targets"));
  }
  if (cfg.schedule.targets.empty()) cfg.schedule.targets.push_back(UnitPreference::uniform(cfg.n));

  cfg.generator = SituationGenerator::with_defaults(cfg.n, cfg.m_raw);
  if (doc.contains("generator")) {
    const json& g = doc.at("generator");
    reject_unknown(g, "generator", {"entry_low", "entry_high", "avail_low", "avail_high", "redraw_demand"});
    read(g, "generator", "entry_low", cfg.generator.entry_low);
    read(g, "generator", "entry_high", cfg.generator.entry_high);
    read(g, "generator", "avail_low", cfg.generator.avail_low);
    read(g, "generator", "avail_high", cfg.generator.avail_high);
    read(g, "generator", "redraw_demand", cfg.generator.redraw_demand);
  }
  if (doc.contains("metrics")) {
    const json& m = doc.at("metrics");
    reject_unknown(m, "metrics", {"beta", "window"});
    read(m, "metrics", "beta", cfg.metrics.beta);
    read(m, "metrics", "window", cfg.metrics.window);
  }
  if (doc.contains("outputs")) {
    const json& o = doc.at("outputs");
    reject_unknown(o, "outputs", {"dir", "per_step", "curve", "manifest", "plot_file", "plot"});
    read(o, "outputs", "dir", cfg.outputs.dir);
    read(o, "outputs", "per_step", cfg.outputs.per_step);
    read(o, "outputs", "curve", cfg.outputs.curve);
    read(o, "outputs", "manifest", cfg.outputs.manifest);
    read(o, "outputs", "plot_file", cfg.outputs.plot_file);
    read(o, "outputs", "plot", cfg.outputs.plot);
  }
  cfg.validate();
  return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
  json targets = json::array();
  for (const auto& t : cfg.schedule.targets) targets.push_back(std::vector<double>(t.c().begin(), t.c().end()));
  return json{
      {"n", cfg.n},
      {"m_raw", cfg.m_raw},
      {"horizon", cfg.horizon},
      {"replications", cfg.replications},
      {"seed", cfg.seed},
      {"operator", {{"p_noise", cfg.op.p_noise}, {"delta_good", cfg.op.delta_good}}},
      {"estimator", {{"window", cfg.estimator_window}}},
      {"schedule",
       {{"kind", kind_name(cfg.schedule.kind)},
        {"epoch_length", cfg.schedule.epoch_length},
        {"targets", targets},
        {"drift_rate", cfg.schedule.drift_rate}}},
      {"generator",
       {{"entry_low", cfg.generator.entry_low},
        {"entry_high", cfg.generator.entry_high},
        {"avail_low", cfg.generator.avail_low},
        {"avail_high", cfg.generator.avail_high},
        {"redraw_demand", cfg.generator.redraw_demand}}},
      {"metrics", {{"beta", cfg.metrics.beta}, {"window", cfg.metrics.window}}},
      {"outputs",
       {{"dir", cfg.outputs.dir},
        {"per_step", cfg.outputs.per_step},
        {"curve", cfg.outputs.curve},
        {"manifest", cfg.outputs.manifest},
        {"plot_file", cfg.outputs.plot_file},
        {"plot", cfg.outputs.plot}}},
  };
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("<file>", std::string("malformed JSON: ") + e.what());
  }
  return config_from_json(doc);
}

}  // namespace prefadapt
