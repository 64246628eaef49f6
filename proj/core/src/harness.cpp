#include "shepherd/harness.hpp"

#include <atomic>
#include <charconv>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "shepherd/behavior.hpp"
#include "shepherd/config.hpp"
#include "shepherd/csv.hpp"
#include "shepherd/noise.hpp"

#ifndef SHEPHERD_VERSION
#define SHEPHERD_VERSION "0.0.0"
#endif

namespace shepherd {

std::string_view library_version() { return SHEPHERD_VERSION; }

std::uint64_t setup_index(const SetupId& setup) {
  return static_cast<std::uint64_t>((setup.f_level + 3) * 49 + setup.alpha_level * 7 +
                                    setup.lambda_level);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t setup_index,
                          std::uint64_t episode_index) {
  return mix64(mix64(mix64(master_seed) ^ setup_index) ^ episode_index);
}

namespace {

void check_levels(const std::vector<int>& levels, int lo, int hi, const char* what) {
  if (levels.empty()) throw std::invalid_argument(std::string(what) + " list is empty");
  for (int l : levels) {
    if (l < lo || l > hi) {
      throw std::out_of_range(std::string(what) + " level " + std::to_string(l) + " outside [" +
                              std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
  }
}

void check_cell(const SetupId& c) {
  check_levels({c.f_level}, kMinThresholdLevel, kMaxThresholdLevel, "threshold");
  check_levels({c.alpha_level}, 0, kMaxNoiseLevel, "perception");
  check_levels({c.lambda_level}, 0, kMaxNoiseLevel, "actuation");
}

int parse_int(std::string_view s, std::string_view whole) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("malformed cell '" + std::string(whole) + "', expected f:a:l");
  }
  return v;
}

std::string opt_number(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string{};
}

std::filesystem::path trajectory_path(const std::filesystem::path& dir, const SetupId& s,
                                      std::size_t episode) {
  return dir / ("f" + std::to_string(s.f_level) + "_a" + std::to_string(s.alpha_level) + "_l" +
                std::to_string(s.lambda_level) + "_ep" + std::to_string(episode) + ".csv");
}

}  // namespace

void SweepSpec::validate() const {
  params.validate();
  if (episodes_per_setup < 1) throw std::invalid_argument("episodes_per_setup must be >= 1");
  if (!(stability_threshold > 0.0)) {
    throw std::invalid_argument("stability_threshold must be > 0");
  }
  if (cells) {
    if (cells->empty()) throw std::invalid_argument("cell list is empty");
    for (const auto& c : *cells) check_cell(c);
  } else {
    check_levels(threshold_levels, kMinThresholdLevel, kMaxThresholdLevel, "threshold");
    check_levels(alpha_levels, 0, kMaxNoiseLevel, "perception");
    check_levels(lambda_levels, 0, kMaxNoiseLevel, "actuation");
  }
  for (const auto& c : setups()) threshold_value(c.f_level, params);
}

std::vector<SetupId> SweepSpec::setups() const {
  if (cells) return *cells;
  std::vector<SetupId> out;
  for (int f : threshold_levels) {
    for (int a : alpha_levels) {
      for (int l : lambda_levels) out.push_back({f, a, l});
    }
  }
  return out;
}

std::vector<SetupId> parse_cells(std::string_view text) {
  std::vector<SetupId> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string_view item =
        text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    const std::size_t c1 = item.find(':');
    const std::size_t c2 = c1 == std::string_view::npos ? c1 : item.find(':', c1 + 1);
    if (c1 == std::string_view::npos || c2 == std::string_view::npos ||
        item.find(':', c2 + 1) != std::string_view::npos) {
      throw std::invalid_argument("malformed cell '" + std::string(item) + "', expected f:a:l");
    }
    SetupId cell{parse_int(item.substr(0, c1), item),
                 parse_int(item.substr(c1 + 1, c2 - c1 - 1), item),
                 parse_int(item.substr(c2 + 1), item)};
    check_cell(cell);
    out.push_back(cell);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

EpisodeConfig cell_episode_config(const SweepSpec& spec, const SetupId& setup,
                                  std::size_t episode_index) {
  return make_episode_config(spec.params, setup.f_level, setup.alpha_level, setup.lambda_level,
                             derive_seed(spec.master_seed, setup_index(setup), episode_index));
}

SweepResult run_sweep(const SweepSpec& spec, const RunOptions& options) {
  spec.validate();
  if (options.trajectory_dir) {
    std::error_code ec;
    std::filesystem::create_directories(*options.trajectory_dir, ec);
    if (ec) {
      throw std::runtime_error("cannot create trajectory directory " +
                               options.trajectory_dir->string() + ": " + ec.message());
    }
  }

  SweepResult result;
  result.spec = spec;
  const unsigned threads = std::max(1u, options.threads);

  for (const SetupId& setup : spec.setups()) {
    CellResult cell;
    cell.episodes.resize(spec.episodes_per_setup);

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    const auto worker = [&] {
      for (;;) {
        const std::size_t e = next.fetch_add(1);
        if (e >= spec.episodes_per_setup) return;
        try {
          EpisodeConfig config = cell_episode_config(spec, setup, e);
          config.record_trajectory = options.trajectory_dir.has_value();
          EpisodeOutcome outcome = run_episode(config);
          cell.episodes[e] = outcome.result;
          if (outcome.trajectory) {
            const auto path = trajectory_path(*options.trajectory_dir, setup, e);
            std::ofstream out(path);
            if (out) write_trajectory_csv(out, *outcome.trajectory);
            if (!out) throw std::runtime_error("cannot write trajectory " + path.string());
          }
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = spec.episodes_per_setup;
          return;
        }
      }
    };

    const unsigned pool = std::min<std::size_t>(threads, spec.episodes_per_setup);
    if (pool <= 1) {
      worker();
    } else {
      std::vector<std::jthread> workers;
      workers.reserve(pool);
      for (unsigned t = 0; t < pool; ++t) workers.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);

    cell.summary =
        summarize_setup(setup, cell.episodes, spec.step_policy, spec.stability_threshold);
    if (options.on_cell_done) options.on_cell_done(cell);
    result.cells.push_back(std::move(cell));
  }
  return result;
}

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::out | std::ios::trunc | std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

void check_stream(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

}  // namespace

ResultWriter::ResultWriter(const std::filesystem::path& out_dir, const SweepSpec&)
    : dir_(out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir_.string() + ": " + ec.message());
  episodes_ = open_output(dir_ / "episodes.csv");
  summary_ = open_output(dir_ / "summary.csv");
  curves_ = open_output(dir_ / "sem_curves.csv");

  episodes_ << "setup_f,setup_alpha,setup_lambda,episode,seed,success,steps\n";
  summary_ << "f_level,alpha_level,lambda_level,episodes,success_rate_pct,mean_ns,sem,"
              "sem_percent,stable_at\n";
  curves_ << "f_level,alpha_level,lambda_level,episode,mean_ns,sem,sem_percent\n";
  check_stream(episodes_, dir_ / "episodes.csv");
  check_stream(summary_, dir_ / "summary.csv");
  check_stream(curves_, dir_ / "sem_curves.csv");
}

void ResultWriter::append(const CellResult& cell) {
  const SetupId& s = cell.summary.setup;
  const std::string prefix = std::to_string(s.f_level) + ',' + std::to_string(s.alpha_level) +
                             ',' + std::to_string(s.lambda_level) + ',';
  for (std::size_t e = 0; e < cell.episodes.size(); ++e) {
    const EpisodeResult& r = cell.episodes[e];
    episodes_ << prefix << e << ',' << r.seed << ',' << (r.success ? 1 : 0) << ',' << r.steps
              << '\n';
  }
  const SetupSummary& sum = cell.summary;
  summary_ << prefix << sum.episodes << ',' << format_number(sum.success_rate_pct) << ','
           << opt_number(sum.mean_ns) << ',' << opt_number(sum.sem) << ','
           << opt_number(sum.sem_percent) << ','
           << (sum.stable_at ? std::to_string(*sum.stable_at) : std::string{}) << '\n';
  for (const SemCurvePoint& p : sum.curve) {
    curves_ << prefix << p.episode << ',' << format_number(p.mean_ns) << ','
            << format_number(p.sem) << ',' << opt_number(p.sem_percent) << '\n';
  }
  check_stream(episodes_, dir_ / "episodes.csv");
  check_stream(summary_, dir_ / "summary.csv");
  check_stream(curves_, dir_ / "sem_curves.csv");
}

void ResultWriter::finish(const SweepResult& result) {
  const auto path = dir_ / "run.json";
  std::ofstream out = open_output(path);
  out << provenance_json(result.spec) << '\n';
  check_stream(out, path);
}

void write_results(const SweepResult& result, const std::filesystem::path& out_dir) {
  ResultWriter writer(out_dir, result.spec);
  for (const auto& cell : result.cells) writer.append(cell);
  writer.finish(result);
}

std::string provenance_json(const SweepSpec& spec) {
  using nlohmann::json;
  json j;
  j["artifact"] = "shepherd-noise";
  j["version"] = std::string(library_version());
  j["master_seed"] = spec.master_seed;
  j["episodes_per_setup"] = spec.episodes_per_setup;
  j["stability_threshold_pct"] = spec.stability_threshold;
  j["step_policy"] = std::string(to_string(spec.step_policy));
  json cells = json::array();
  for (const auto& c : spec.setups()) {
    cells.push_back({c.f_level, c.alpha_level, c.lambda_level});
  }
  j["cells"] = cells;
  j["params"] = json::parse(params_to_json(spec.params));
  j["threshold_f0"] = threshold_value(0, spec.params).value;
  j["delta_n"] = compute_delta_n(spec.params);
  j["seeding"] =
      "episode seed = mix64(mix64(mix64(master) ^ setup_index) ^ episode); "
      "setup_index = (f+3)*49 + alpha*7 + lambda";
  j["rng"] = "xoshiro256** seeded via splitmix64; normals by Marsaglia polar method";
  return j.dump(2);
}

}  // namespace shepherd
