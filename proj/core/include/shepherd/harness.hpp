#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shepherd/engine.hpp"
#include "shepherd/metrics.hpp"
#include "shepherd/params.hpp"

namespace shepherd {

std::string_view library_version();

/// Grid-position independent cell id: (f + 3) * 49 + alpha * 7 + lambda.
std::uint64_t setup_index(const SetupId& setup);

/// Seed of one episode: mix64(mix64(mix64(master) ^ setup_index) ^ episode).
/// Bit-stable on every platform.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t setup_index,
                          std::uint64_t episode_index);

struct SweepSpec {
  std::vector<int> threshold_levels{-3, -2, -1, 0, 1, 2, 3};
  std::vector<int> alpha_levels{0, 1, 2, 3, 4, 5, 6};
  std::vector<int> lambda_levels{0, 1, 2, 3, 4, 5, 6};
  /// When set, replaces the product of the three level lists.
  std::optional<std::vector<SetupId>> cells;
  std::size_t episodes_per_setup{300};
  std::uint64_t master_seed{1};
  double stability_threshold{3.0};
  StepPolicy step_policy{StepPolicy::IncludeFailures};
  ModelParams params;

  /// Throws std::invalid_argument / std::out_of_range on bad levels or counts.
  void validate() const;
  /// Cells in run order: explicit list, or f-major product of the level lists.
  std::vector<SetupId> setups() const;
};

/// Parses "f:a:l,f:a:l,..." into cell ids. Throws std::invalid_argument.
std::vector<SetupId> parse_cells(std::string_view text);

struct CellResult {
  SetupSummary summary;
  std::vector<EpisodeResult> episodes;  ///< in episode-index order
};

struct SweepResult {
  SweepSpec spec;
  std::vector<CellResult> cells;
};

struct RunOptions {
  unsigned threads{1};
  /// When set, every episode's trajectory is written below this directory.
  std::optional<std::filesystem::path> trajectory_dir;
  /// Called on the calling thread after each cell finishes, in run order.
  std::function<void(const CellResult&)> on_cell_done;
};

/// Runs every episode of every cell. Stability is reported, never used to
/// stop early. Output does not depend on the thread count.
SweepResult run_sweep(const SweepSpec& spec, const RunOptions& options = {});

/// Episode config of one cell of a sweep.
EpisodeConfig cell_episode_config(const SweepSpec& spec, const SetupId& setup,
                                  std::size_t episode_index);

/// Streams sweep output into `out_dir`:
///   episodes.csv, summary.csv, sem_curves.csv (appended per cell) and
///   run.json (written by finish()).
/// Throws std::runtime_error with the offending path on any I/O failure.
class ResultWriter {
 public:
  ResultWriter(const std::filesystem::path& out_dir, const SweepSpec& spec);

  void append(const CellResult& cell);
  void finish(const SweepResult& result);

 private:
  std::filesystem::path dir_;
  std::ofstream episodes_;
  std::ofstream summary_;
  std::ofstream curves_;
};

/// Writes every output file for a finished sweep.
void write_results(const SweepResult& result, const std::filesystem::path& out_dir);

/// Provenance document written to run.json.
std::string provenance_json(const SweepSpec& spec);

}  // namespace shepherd
