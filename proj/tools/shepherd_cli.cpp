// Command-line front end: `shepherd sweep ...` and `shepherd episode ...`.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "shepherd/config.hpp"
#include "shepherd/csv.hpp"
#include "shepherd/engine.hpp"
#include "shepherd/harness.hpp"

namespace {

shepherd::SweepSpec load_spec(const std::string& config_path) {
  return config_path.empty() ? shepherd::SweepSpec{} : shepherd::load_sweep_spec(config_path);
}

int run_sweep_command(const std::string& config_path, const std::string& out_dir,
                      std::optional<std::size_t> episodes, std::optional<std::uint64_t> seed,
                      const std::string& cells, unsigned threads, bool record, bool quiet) {
  shepherd::SweepSpec spec = load_spec(config_path);
  if (episodes) spec.episodes_per_setup = *episodes;
  if (seed) spec.master_seed = *seed;
  if (!cells.empty()) spec.cells = shepherd::parse_cells(cells);
  spec.validate();

  const std::filesystem::path out(out_dir);
  shepherd::ResultWriter writer(out, spec);

  shepherd::RunOptions options;
  options.threads = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  if (record) options.trajectory_dir = out / "trajectories";

  const std::size_t total = spec.setups().size();
  std::size_t done = 0;
  const auto start = std::chrono::steady_clock::now();
  options.on_cell_done = [&](const shepherd::CellResult& cell) {
    writer.append(cell);
    ++done;
    if (!quiet) {
      const auto& s = cell.summary;
      std::cerr << "[" << done << "/" << total << "] f" << s.setup.f_level << " a"
                << s.setup.alpha_level << " l" << s.setup.lambda_level
                << "  SR=" << shepherd::format_number(s.success_rate_pct)
                << "%  NS=" << (s.mean_ns ? shepherd::format_number(*s.mean_ns) : "-")
                << "  SEM-P=" << (s.sem_percent ? shepherd::format_number(*s.sem_percent) : "-")
                << "  stable_at=" << (s.stable_at ? std::to_string(*s.stable_at) : "-") << '\n';
    }
  };

  const shepherd::SweepResult result = shepherd::run_sweep(spec, options);
  writer.finish(result);
  if (!quiet) {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cerr << "wrote " << out.string() << " (" << total << " cells, " << secs << " s)\n";
  }
  return 0;
}

int run_episode_command(const std::string& config_path, int f_level, int alpha, int lambda,
                        std::uint64_t seed, const std::string& dump) {
  const shepherd::SweepSpec spec = load_spec(config_path);
  shepherd::EpisodeConfig config =
      shepherd::make_episode_config(spec.params, f_level, alpha, lambda, seed);
  config.record_trajectory = !dump.empty();
  const shepherd::EpisodeOutcome outcome = shepherd::run_episode(config);

  if (outcome.trajectory) {
    std::ofstream out(dump);
    if (!out) throw std::runtime_error("cannot open " + dump + " for writing");
    shepherd::write_trajectory_csv(out, *outcome.trajectory);
    if (!out.flush()) throw std::runtime_error("write to " + dump + " failed");
  }

  nlohmann::json j;
  j["f_level"] = f_level;
  j["alpha_level"] = alpha;
  j["lambda_level"] = lambda;
  j["threshold"] = shepherd::threshold_value(f_level, spec.params).value;
  j["alpha"] = config.noise.alpha;
  j["lambda"] = config.noise.lambda;
  j["seed"] = outcome.result.seed;
  j["success"] = outcome.result.success;
  j["steps"] = outcome.result.steps;
  j["final_gcm_distance"] = outcome.result.final_gcm_distance;
  if (outcome.trajectory) {
    j["trajectory_hash"] = shepherd::trajectory_hash(*outcome.trajectory);
  }
  std::cout << j.dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shepherding simulator under actuation and perception noise"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::optional<std::size_t> episodes;
  std::optional<std::uint64_t> master_seed;
  std::string cells;
  unsigned threads = 0;
  bool record = false;
  bool quiet = false;

  CLI::App* sweep = app.add_subcommand("sweep", "Run the threshold x perception x actuation grid");
  sweep->add_option("--config", config_path, "JSON config (params + sweep)")
      ->check(CLI::ExistingFile);
  sweep->add_option("--out", out_dir, "Output directory")->required();
  sweep->add_option("--episodes", episodes, "Episodes per setup (overrides config)");
  sweep->add_option("--master-seed", master_seed, "Master seed (overrides config)");
  sweep->add_option("--cells", cells, "Comma-separated f:a:l cells, e.g. 0:0:0,0:0:5");
  sweep->add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");
  sweep->add_flag("--record-trajectories", record, "Write one trajectory CSV per episode");
  sweep->add_flag("-q,--quiet", quiet, "Suppress progress output");

  int f_level = 0;
  int alpha = 0;
  int lambda = 0;
  std::uint64_t seed = 0;
  std::string dump;
  CLI::App* episode = app.add_subcommand("episode", "Run a single episode");
  episode->add_option("--config", config_path, "JSON config (params section is used)")
      ->check(CLI::ExistingFile);
  episode->add_option("--f-level", f_level, "Threshold level in [-3, 3]")->required();
  episode->add_option("--alpha", alpha, "Perception noise level in [0, 6]")->required();
  episode->add_option("--lambda", lambda, "Actuation noise level in [0, 6]")->required();
  episode->add_option("--seed", seed, "Episode seed")->required();
  episode->add_option("--dump-trajectory", dump, "Write the trajectory CSV here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) {
      return run_sweep_command(config_path, out_dir, episodes, master_seed, cells, threads,
                               record, quiet);
    }
    return run_episode_command(config_path, f_level, alpha, lambda, seed, dump);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
