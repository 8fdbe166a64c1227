#include "prefadapt/errors.hpp"
#include "prefadapt/experiment.hpp"

#include <fmt/format.h>
#include <openssl/evp.h>

#include <algorithm>
#include <fstream>

namespace prefadapt {

namespace fs = std::filesystem;
using nlohmann::json;

std::string per_step_csv(const std::vector<EffectivenessTrace>& traces, const MetricsConfig& metrics) {
  std::vector<const EffectivenessTrace*> ordered;
  for (const auto& tr : traces) ordered.push_back(&tr);
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto* lhs, const auto* rhs) {
    return lhs->replication_id < rhs->replication_id;
  });

  fmt::memory_buffer out;
  fmt::format_to(std::back_inserter(out), "replication,t,epoch,eta,coincide,tau_flag,c_hat\n");
  for (const auto* tr : ordered) {
    const std::vector<bool> flags = tau_flags(*tr, metrics.beta, metrics.window);
    for (std::size_t i = 0; i < tr->records.size(); ++i) {
      const StepRecord& rec = tr->records[i];
      fmt::format_to(std::back_inserter(out), "{},{},{},{:.9f},{},{},", tr->replication_id, rec.t, rec.epoch,
                     rec.eta, rec.coincide ? 1 : 0, flags[i] ? 1 : 0);
      const Vector& c = rec.c_hat.c();
      for (Eigen::Index j = 0; j < c.size(); ++j) {
        fmt::format_to(std::back_inserter(out), "{}{:.9f}", j > 0 ? ";" : "", c[j]);
      }
      out.push_back('\n');
    }
  }
  return fmt::to_string(out);
}

std::string curve_csv(const std::vector<CurvePoint>& curve) {
  fmt::memory_buffer out;
  fmt::format_to(std::back_inserter(out), "t,mean_eta,coincide_rate\n");
  for (const auto& p : curve) fmt::format_to(std::back_inserter(out), "{},{:.9f},{:.9f}\n", p.t, p.mean_eta, p.coincide_rate);
  return fmt::to_string(out);
}

std::string frontier_csv(const FrontierResult& frontier) {
  fmt::memory_buffer out;
  fmt::format_to(std::back_inserter(out), "T,mean_eta,qualifies\n");
  for (const auto& p : frontier.points) {
    fmt::format_to(std::back_inserter(out), "{},{:.9f},{}\n", p.epoch_length, p.mean_eta, p.qualifies ? 1 : 0);
  }
  return fmt::to_string(out);
}

std::string curve_svg(const std::vector<CurvePoint>& curve) {
  constexpr double kWidth = 640.0;
  constexpr double kHeight = 360.0;
  constexpr double kPad = 40.0;
  const double span = curve.size() > 1 ? static_cast<double>(curve.size() - 1) : 1.0;
  auto px = [&](std::size_t i) { return kPad + (kWidth - 2 * kPad) * static_cast<double>(i) / span; };
  auto py = [&](double eta) { return kHeight - kPad - (kHeight - 2 * kPad) * eta; };

  fmt::memory_buffer out;
  auto put = [&]<typename... Args>(fmt::format_string<Args...> f, Args&&... args) {
    fmt::format_to(std::back_inserter(out), f, std::forward<Args>(args)...);
  };
  put("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n", kWidth,
      kHeight, kWidth, kHeight);
  put("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
  put("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n", kPad, py(0.0), kWidth - kPad, py(0.0));
  put("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n", kPad, py(0.0), kPad, py(1.0));
  put("<text x=\"{}\" y=\"{}\" font-size=\"12\">1</text>\n", kPad - 14, py(1.0) + 4);
  put("<text x=\"{}\" y=\"{}\" font-size=\"12\">0</text>\n", kPad - 14, py(0.0) + 4);
  put("<text x=\"{}\" y=\"{}\" font-size=\"12\">t = {}</text>\n", kWidth - kPad - 40, kHeight - 12,
      curve.empty() ? 0 : curve.back().t);
  put("<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"");
  for (std::size_t i = 0; i < curve.size(); ++i) put("{}{:.2f},{:.2f}", i > 0 ? " " : "", px(i), py(curve[i].mean_eta));
  put("\"/>\n</svg>\n");
  return fmt::to_string(out);
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256: digest failed");
  }
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

json manifest_to_json(const RunManifest& manifest) {
  return json{
      {"config", config_to_json(manifest.config)},
      {"version", manifest.version},
      {"replication_seeds", manifest.replication_seeds},
      {"wall_seconds", manifest.wall_seconds},
      {"digests", manifest.digests},
  };
}

namespace {

void write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("cannot write " + path.string());
}

}  // namespace

OutputFiles emit_outputs(RunResult& result, const fs::path& out_dir) {
  const ExperimentConfig& cfg = result.manifest.config;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error("cannot create " + out_dir.string() + ": " + ec.message());

  OutputFiles files;
  files.per_step = out_dir / cfg.outputs.per_step;
  files.curve = out_dir / cfg.outputs.curve;
  files.manifest = out_dir / cfg.outputs.manifest;

  const std::string steps = per_step_csv(result.traces, cfg.metrics);
  const auto curve = learning_curve(result.traces);
  const std::string aggregated = curve_csv(curve);
  write_file(files.per_step, steps);
  write_file(files.curve, aggregated);
  result.manifest.digests[cfg.outputs.per_step] = sha256_hex(steps);
  result.manifest.digests[cfg.outputs.curve] = sha256_hex(aggregated);

  if (cfg.outputs.plot) {
    files.plot = out_dir / cfg.outputs.plot_file;
    const std::string svg = curve_svg(curve);
    write_file(files.plot, svg);
    result.manifest.digests[cfg.outputs.plot_file] = sha256_hex(svg);
  }

  write_file(files.manifest, manifest_to_json(result.manifest).dump(2) + "\n");
  return files;
}

}  // namespace prefadapt
