#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "shepherd/behavior.hpp"
#include "shepherd/model.hpp"
#include "shepherd/noise.hpp"
#include "shepherd/params.hpp"

namespace shepherd {

/// One grid cell plus the seed of a single episode.
struct EpisodeConfig {
  ModelParams params;
  int threshold_level{0};
  NoiseSpec noise;
  std::uint64_t seed{0};
  bool record_trajectory{false};
  /// When false, perception and actuation noise are skipped outright
  /// instead of being applied with zero magnitude.
  bool noise_enabled{true};
};

/// Builds a config whose noise magnitudes follow the level ladders of `params`.
EpisodeConfig make_episode_config(const ModelParams& params, int threshold_level,
                                  int alpha_level, int lambda_level, std::uint64_t seed);

struct EpisodeResult {
  bool success{false};
  std::size_t steps{0};  ///< steps elapsed; equals step_limit on failure
  std::uint64_t seed{0};
  double final_gcm_distance{0.0};

  bool operator==(const EpisodeResult&) const = default;
};

struct TrajectoryFrame {
  std::vector<Vec2> sheep;
  std::vector<Vec2> shepherds;
  /// Mode of the decision that produced this frame; empty for the initial frame.
  std::optional<ShepherdMode> mode;
};

/// Every state of an episode, initial state included.
struct TrajectoryRecord {
  std::vector<TrajectoryFrame> frames;
};

struct EpisodeOutcome {
  EpisodeResult result;
  std::optional<TrajectoryRecord> trajectory;
};

/// Sheep uniform in [L/4, 3L/4]^2, shepherds uniform in [0, L/10]^2,
/// target at the origin, zero inertia, step 0.
WorldState init_world(const ModelParams& params, Rng& rng);

/// Reusable per-episode buffers for tick().
struct TickScratch {
  std::vector<Vec2> sheep_positions;
  std::vector<Vec2> shepherd_positions;
  std::vector<Vec2> escape_reference;
  std::vector<Vec2> next_positions;
  std::vector<Vec2> next_forces;
  std::vector<Vec2> jitter;
  std::vector<std::size_t> neighbor_ids;
  std::vector<Vec2> neighbor_positions;
  NeighborFinder finder;
};

/// Advances the world by one step: perceive, decide, move shepherds, move
/// sheep from their true positions, increment the step counter. Returns the
/// decision of the first shepherd.
///
/// Throws std::logic_error when world.step has reached the step limit.
ShepherdDecision tick(WorldState& world, const EpisodeConfig& config, EpisodeStreams& streams,
                      TickScratch& scratch);
ShepherdDecision tick(WorldState& world, const EpisodeConfig& config, EpisodeStreams& streams);

/// Distance between the true flock centre and the target.
double gcm_distance_to_target(const WorldState& world);

/// Runs one episode to success or the step limit. Success is checked before
/// the first tick and after every tick.
EpisodeOutcome run_episode(const EpisodeConfig& config);

/// Same, but starting from a caller-supplied world. The init stream is unused.
EpisodeOutcome run_episode(const EpisodeConfig& config, WorldState initial);

/// Writes step,agent_kind,agent_id,x,y,mode rows with a header line.
void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& trajectory);

/// FNV-1a over the bit patterns of every recorded coordinate and mode.
std::uint64_t trajectory_hash(const TrajectoryRecord& trajectory);

}  // namespace shepherd
