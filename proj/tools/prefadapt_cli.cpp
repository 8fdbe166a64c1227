#include "prefadapt/errors.hpp"
#include "prefadapt/experiment.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <optional>
#include <sstream>

namespace {

using namespace prefadapt;

constexpr int kRuntimeError = 1;
constexpr int kConfigError = 2;

std::vector<std::size_t> parse_grid(const std::string& text) {
  std::vector<std::size_t> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    unsigned long long value = 0;
    try {
      value = std::stoull(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("t-grid", "not an integer: '" + item + "'");
    }
    if (used != item.size() || value == 0) throw ConfigError("t-grid", "expected positive integers, got '" + item + "'");
    grid.push_back(static_cast<std::size_t>(value));
  }
  if (grid.empty()) throw ConfigError("t-grid", "empty grid");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] <= grid[i - 1]) throw ConfigError("t-grid", "values must be strictly ascending");
  }
  return grid;
}

int simulate(const std::string& config_path, const std::string& out_dir, bool plot, std::optional<std::uint64_t> seed) {
  ExperimentConfig cfg = load_config(config_path);
  if (seed) cfg.seed = *seed;
  if (plot) cfg.outputs.plot = true;
  cfg.validate();

  RunResult result = run_experiment(cfg);
  const OutputFiles files = emit_outputs(result, out_dir.empty() ? cfg.outputs.dir : out_dir);
  const auto curve = learning_curve(result.traces);
  const auto tau = adaptation_period(result.traces, cfg.metrics.beta, std::min(cfg.metrics.window, cfg.horizon));
  fmt::print("replications {}  horizon {}  mean eta {:.6f}  final eta {:.6f}  tau {}  ({:.2f} s)\n",
             cfg.replications, cfg.horizon, time_average_effectiveness(result.traces), curve.back().mean_eta,
             tau ? std::to_string(*tau) : "none", result.manifest.wall_seconds);
  fmt::print("wrote {}\n", files.per_step.string());
  fmt::print("wrote {}\n", files.curve.string());
  if (!files.plot.empty()) fmt::print("wrote {}\n", files.plot.string());
  fmt::print("wrote {}\n", files.manifest.string());
  return 0;
}

int frontier(const std::string& config_path, const std::string& grid_text, double theta, const std::string& out_dir) {
  const ExperimentConfig cfg = load_config(config_path);
  const std::vector<std::size_t> grid = parse_grid(grid_text);
  const FrontierResult fr = frontier_sweep(cfg, grid, theta);
  const std::string csv = frontier_csv(fr);
  fmt::print("{}", csv);
  fmt::print("T_critical,{}\n", fr.t_critical ? std::to_string(*fr.t_critical) : "none");

  const std::filesystem::path dir = out_dir.empty() ? cfg.outputs.dir : out_dir;
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / "frontier.csv", std::ios::binary | std::ios::trunc);
  out << csv;
  if (!out) throw Error("cannot write " + (dir / "frontier.csv").string());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learns a hidden LP objective from an operator's decisions and measures adaptation."};
  app.set_version_flag("--version", prefadapt::version());
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  bool plot = false;
  std::optional<std::uint64_t> seed;
  auto* sim = app.add_subcommand("simulate", "run replications and write per-step and curve CSVs");
  sim->add_option("--config", config_path, "JSON config")->required();
  sim->add_option("--out-dir", out_dir, "output directory (overrides outputs.dir)");
  sim->add_flag("--plot", plot, "also write an SVG of the learning curve");
  sim->add_option("--seed", seed, "override the master seed");

  std::string grid;
  double theta = 0.95;
  auto* fr = app.add_subcommand("frontier", "time-averaged effectiveness over a grid of epoch lengths");
  fr->add_option("--config", config_path, "JSON config")->required();
  fr->add_option("--t-grid", grid, "comma-separated epoch lengths, ascending")->required();
  fr->add_option("--theta", theta, "effectiveness threshold")->required();
  fr->add_option("--out-dir", out_dir, "output directory (overrides outputs.dir)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*sim) return simulate(config_path, out_dir, plot, seed);
    return frontier(config_path, grid, theta, out_dir);
  } catch (const prefadapt::ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kRuntimeError;
  }
}
