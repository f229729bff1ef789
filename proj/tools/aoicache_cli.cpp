// aoicache: run the AoI-aware caching and service simulator from the command line.
//
//   aoicache run     --config PATH|--preset NAME [--seed N] [--out DIR] [--policy NAME] [--service-policy NAME]
//   aoicache sweep   --config PATH|--preset NAME --seeds N [--out DIR] [--jobs J]
//   aoicache presets [--name NAME]
//
// Exit codes: 0 success, 2 config error, 3 I/O error.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <thread>

#include "aoicache.hpp"

namespace fs = std::filesystem;
using namespace aoicache;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct Source {
  std::string config_path;
  std::string preset;
};

// Any failure while building the config, other than reading the file, is a config error.
template <typename Fn>
SystemConfig as_config_stage(Fn&& build) {
  try {
    return build();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::IoFailure || is_config_error(e.kind())) throw;
    throw Error(ErrorKind::InvalidParameter, e.what());
  }
}

SystemConfig load_source(const Source& src) {
  if (!src.preset.empty()) {
    const auto all = presets();
    const auto it = all.find(src.preset);
    if (it == all.end()) throw Error(ErrorKind::UnknownKind, "unknown preset '" + src.preset + "'");
    return validate_config(it->second);
  }
  return load_config(src.config_path);
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw Error(ErrorKind::IoFailure, "cannot create output directory '" + dir.string() + "'");
  }
}

void add_source_options(CLI::App* cmd, Source& src) {
  auto* config = cmd->add_option("--config", src.config_path, "Config JSON file");
  auto* preset = cmd->add_option("--preset", src.preset, "Built-in preset (fig1, fig2)");
  config->excludes(preset);
  preset->excludes(config);
  cmd->callback([cmd, config, preset] {
    if (config->count() + preset->count() == 0) {
      throw CLI::RequiredError(cmd->get_name() + " needs --config or --preset");
    }
  });
}

int cmd_run(const Source& src, std::optional<std::uint64_t> seed, const std::string& out,
            const std::string& policy, const std::string& service) {
  const auto cfg = as_config_stage([&] {
    auto c = load_source(src);
    if (seed) c.seed = *seed;
    if (!policy.empty()) c.policy = parse_refresh_policy(policy);
    if (!service.empty()) c.service_policy = parse_service_policy(service);
    return validate_config(c);
  });

  const auto traces = run(cfg);
  const fs::path dir(out);
  ensure_dir(dir);
  write_traces(traces, cfg, (dir / "traces.csv").string());
  if (!traces.empty()) {
    write_text_file((dir / "summary.json").string(), to_json(summarize(traces, cfg)).dump(2) + "\n");
  }
  std::cout << "wrote " << traces.size() << " slots to " << (dir / "traces.csv").string() << "\n";
  return kExitOk;
}

Json aggregate(const std::vector<RunSummary>& runs) {
  auto mean_of = [&](auto field) {
    double total = 0.0;
    for (const auto& r : runs) total += field(r);
    return total / static_cast<double>(runs.size());
  };
  std::int64_t violations = 0;
  std::int64_t drops = 0;
  Json per_seed = Json::array();
  for (const auto& r : runs) {
    violations += r.violation_count;
    drops += r.drop_count;
    per_seed.push_back(to_json(r));
  }
  return {
      {"seeds", runs.size()},
      {"mean_reward", mean_of([](const RunSummary& r) { return r.mean_reward; })},
      {"mean_cost", mean_of([](const RunSummary& r) { return r.mean_cost; })},
      {"mean_backlog", mean_of([](const RunSummary& r) {
         double q = 0.0;
         for (double v : r.mean_backlog) q += v;
         return r.mean_backlog.empty() ? 0.0 : q / static_cast<double>(r.mean_backlog.size());
       })},
      {"violation_count", violations},
      {"drop_count", drops},
      {"runs", per_seed},
  };
}

int cmd_sweep(const Source& src, std::uint64_t seeds, const std::string& out, unsigned jobs) {
  const auto base = as_config_stage([&] { return load_source(src); });
  if (base.horizon_slots == 0) throw Error(ErrorKind::InvalidParameter, "sweep needs horizon_slots > 0");
  const fs::path dir(out);
  ensure_dir(dir);

  std::vector<RunSummary> summaries(seeds);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::uint64_t i = next++; i < seeds; i = next++) {
      try {
        auto cfg = base;
        cfg.seed = base.seed + i;
        const auto traces = run(cfg);
        write_traces(traces, cfg, (dir / ("traces_seed" + std::to_string(cfg.seed) + ".csv")).string());
        summaries[i] = summarize(traces, cfg);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(seeds)));
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  pool.clear();
  if (failure) std::rethrow_exception(failure);

  write_text_file((dir / "aggregate.json").string(), aggregate(summaries).dump(2) + "\n");
  std::cout << "wrote " << seeds << " runs to " << dir.string() << "\n";
  return kExitOk;
}

int cmd_presets(const std::string& name) {
  const auto all = presets();
  if (!name.empty()) {
    const auto it = all.find(name);
    if (it == all.end()) throw Error(ErrorKind::UnknownKind, "unknown preset '" + name + "'");
    std::cout << serialize_config(it->second);
    return kExitOk;
  }
  Json j = Json::object();
  for (const auto& [key, cfg] : all) j[key] = to_json(cfg);
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AoI-aware edge caching and Lyapunov service simulator"};
  app.require_subcommand(1);

  Source run_src;
  std::optional<std::uint64_t> run_seed;
  std::string run_out = "out";
  std::string run_policy;
  std::string run_service;
  auto* run_cmd = app.add_subcommand("run", "Simulate one seed, write traces.csv and summary.json");
  add_source_options(run_cmd, run_src);
  run_cmd->add_option("--seed", run_seed, "Override the config seed");
  run_cmd->add_option("--out", run_out, "Output directory")->capture_default_str();
  run_cmd->add_option("--policy", run_policy, "Refresh policy override");
  run_cmd->add_option("--service-policy", run_service, "Service policy override");

  Source sweep_src;
  std::uint64_t sweep_seeds = 0;
  std::string sweep_out = "out";
  unsigned sweep_jobs = std::max(1u, std::thread::hardware_concurrency());
  auto* sweep_cmd = app.add_subcommand("sweep", "Simulate seeds seed..seed+N-1 concurrently");
  add_source_options(sweep_cmd, sweep_src);
  sweep_cmd->add_option("--seeds", sweep_seeds, "Number of seeds")->required()->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--out", sweep_out, "Output directory")->capture_default_str();
  sweep_cmd->add_option("--jobs", sweep_jobs, "Worker threads")->check(CLI::PositiveNumber);

  std::string preset_name;
  auto* presets_cmd = app.add_subcommand("presets", "Print the built-in configurations as JSON");
  presets_cmd->add_option("--name", preset_name, "Print a single preset");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run_cmd) return cmd_run(run_src, run_seed, run_out, run_policy, run_service);
    if (*sweep_cmd) return cmd_sweep(sweep_src, sweep_seeds, sweep_out, sweep_jobs);
    if (*presets_cmd) return cmd_presets(preset_name);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_config_error(e.kind()) ? kExitConfig : kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}
