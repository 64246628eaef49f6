#include "shepherd/engine.hpp"

#include <bit>
#include <ostream>
#include <stdexcept>

#include "shepherd/csv.hpp"

namespace shepherd {

EpisodeConfig make_episode_config(const ModelParams& params, int threshold_level,
                                  int alpha_level, int lambda_level, std::uint64_t seed) {
  EpisodeConfig config;
  config.params = params;
  config.threshold_level = threshold_level;
  config.noise = noise_values(alpha_level, lambda_level, compute_delta_n(params));
  config.seed = seed;
  return config;
}

WorldState init_world(const ModelParams& params, Rng& rng) {
  const double L = params.paddock_length;
  WorldState world;
  world.sheep.resize(params.sheep_count);
  for (auto& s : world.sheep) {
    const double x = rng.uniform(0.25 * L, 0.75 * L);
    const double y = rng.uniform(0.25 * L, 0.75 * L);
    s.position = {x, y};
  }
  world.shepherds.resize(params.shepherd_count);
  for (auto& d : world.shepherds) {
    const double x = rng.uniform(0.0, 0.1 * L);
    const double y = rng.uniform(0.0, 0.1 * L);
    d.position = {x, y};
  }
  world.target = {0.0, 0.0};
  world.step = 0;
  return world;
}

ShepherdDecision tick(WorldState& world, const EpisodeConfig& config, EpisodeStreams& streams,
                      TickScratch& scratch) {
  const ModelParams& p = config.params;
  if (world.step >= p.step_limit) {
    throw std::logic_error("tick called on a world at the step limit");
  }
  const double threshold = threshold_value(config.threshold_level, p).value;
  const std::size_t n = world.sheep.size();

  auto& pos = scratch.sheep_positions;
  pos.resize(n);
  for (std::size_t i = 0; i < n; ++i) pos[i] = world.sheep[i].position;

  auto& dogs = scratch.shepherd_positions;
  dogs.resize(world.shepherds.size());
  for (std::size_t j = 0; j < dogs.size(); ++j) dogs[j] = world.shepherds[j].position;
  scratch.escape_reference = dogs;

  // Shepherds act on perceived positions.
  const std::vector<Vec2> perceived =
      config.noise_enabled ? perceive_positions(pos, config.noise.alpha, streams.perception)
                           : pos;

  ShepherdDecision first;
  for (std::size_t j = 0; j < world.shepherds.size(); ++j) {
    const ShepherdDecision decision =
        shepherd_decide(perceived, pos, dogs[j], world.target, threshold, p);
    const Vec2 jitter =
        p.w_shepherd_jitter > 0.0 ? streams.shepherd_jitter.uniform_unit_vector() : Vec2{};
    const Vec2 force = shepherd_total_force(decision.steer_force, jitter, p.w_shepherd_jitter);
    world.shepherds[j].position =
        step_position(dogs[j], p.shepherd_speed, force, p.paddock_length);
    if (j == 0) first = decision;
  }
  if (p.update_order == UpdateOrder::Sequential) {
    for (std::size_t j = 0; j < dogs.size(); ++j) {
      scratch.escape_reference[j] = world.shepherds[j].position;
    }
  }

  // Sheep respond to true positions only; all sheep move synchronously.
  auto& jitter = scratch.jitter;
  jitter.assign(n, Vec2{});
  if (p.w_sheep_jitter > 0.0) {
    for (auto& v : jitter) v = streams.sheep_jitter.uniform_unit_vector();
  }

  const std::size_t k = p.effective_neighbor_count();
  scratch.next_positions.resize(n);
  scratch.next_forces.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 here = pos[i];
    const bool active = p.activation == SheepActivation::AlwaysActive ||
                        shepherd_in_range(here, scratch.escape_reference, p.sheep_sense_shepherd);
    SheepForces forces;
    forces.repulsion = scratch.finder.scan(i, pos, p.sheep_sense_sheep, streams.coincidence);
    forces.jitter = jitter[i];
    if (active) {
      scratch.finder.select(k, scratch.neighbor_ids);
      scratch.neighbor_positions.clear();
      for (std::size_t id : scratch.neighbor_ids) scratch.neighbor_positions.push_back(pos[id]);
      forces.grouping = sheep_grouping_force(here, scratch.neighbor_positions);
      forces.escape = sheep_escape_force(here, scratch.escape_reference, p.sheep_sense_shepherd);
    }
    const Vec2 total = sheep_total_force(world.sheep[i], p, forces, active);
    const Vec2 moved =
        config.noise_enabled
            ? apply_actuation_noise(here, p.sheep_speed, total, config.noise.lambda,
                                    streams.actuation)
            : here + p.sheep_speed * total;
    scratch.next_positions[i] = clamp_to_paddock(moved, p.paddock_length);
    scratch.next_forces[i] = total;
  }
  for (std::size_t i = 0; i < n; ++i) {
    world.sheep[i].position = scratch.next_positions[i];
    world.sheep[i].prev_force = scratch.next_forces[i];
  }
  ++world.step;
  return first;
}

ShepherdDecision tick(WorldState& world, const EpisodeConfig& config, EpisodeStreams& streams) {
  TickScratch scratch;
  return tick(world, config, streams, scratch);
}

double gcm_distance_to_target(const WorldState& world) {
  Vec2 sum;
  for (const auto& s : world.sheep) sum += s.position;
  const Vec2 gcm = sum / static_cast<double>(world.sheep.size());
  return distance(gcm, world.target);
}

namespace {

TrajectoryFrame snapshot(const WorldState& world, std::optional<ShepherdMode> mode) {
  return {world.sheep_positions(), world.shepherd_positions(), mode};
}

EpisodeOutcome run_from(const EpisodeConfig& config, WorldState world, EpisodeStreams& streams) {
  config.params.validate();
  if (world.sheep.empty()) throw std::invalid_argument("episode needs at least one sheep");

  EpisodeOutcome outcome;
  if (config.record_trajectory) {
    outcome.trajectory.emplace();
    outcome.trajectory->frames.push_back(snapshot(world, std::nullopt));
  }

  TickScratch scratch;
  double d = gcm_distance_to_target(world);
  bool success = d <= config.params.goal_distance;
  while (!success && world.step < config.params.step_limit) {
    const ShepherdDecision decision = tick(world, config, streams, scratch);
    if (outcome.trajectory) outcome.trajectory->frames.push_back(snapshot(world, decision.mode));
    d = gcm_distance_to_target(world);
    success = d <= config.params.goal_distance;
  }

  outcome.result.success = success;
  outcome.result.steps = world.step;
  outcome.result.seed = config.seed;
  outcome.result.final_gcm_distance = d;
  return outcome;
}

}  // namespace

EpisodeOutcome run_episode(const EpisodeConfig& config) {
  EpisodeStreams streams(config.seed);
  WorldState world = init_world(config.params, streams.init);
  return run_from(config, std::move(world), streams);
}

EpisodeOutcome run_episode(const EpisodeConfig& config, WorldState initial) {
  EpisodeStreams streams(config.seed);
  return run_from(config, std::move(initial), streams);
}

void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& trajectory) {
  os << "step,agent_kind,agent_id,x,y,mode\n";
  for (std::size_t t = 0; t < trajectory.frames.size(); ++t) {
    const auto& frame = trajectory.frames[t];
    const std::string_view mode = frame.mode ? to_string(*frame.mode) : std::string_view{};
    for (std::size_t i = 0; i < frame.sheep.size(); ++i) {
      os << t << ",sheep," << i << ',' << format_number(frame.sheep[i].x) << ','
         << format_number(frame.sheep[i].y) << ',' << mode << '\n';
    }
    for (std::size_t j = 0; j < frame.shepherds.size(); ++j) {
      os << t << ",shepherd," << j << ',' << format_number(frame.shepherds[j].x) << ','
         << format_number(frame.shepherds[j].y) << ',' << mode << '\n';
    }
  }
}

std::uint64_t trajectory_hash(const TrajectoryRecord& trajectory) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const auto feed = [&h](std::uint64_t word) {
    for (int b = 0; b < 8; ++b) {
      h ^= (word >> (8 * b)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& frame : trajectory.frames) {
    for (const auto& v : frame.sheep) {
      feed(std::bit_cast<std::uint64_t>(v.x));
      feed(std::bit_cast<std::uint64_t>(v.y));
    }
    for (const auto& v : frame.shepherds) {
      feed(std::bit_cast<std::uint64_t>(v.x));
      feed(std::bit_cast<std::uint64_t>(v.y));
    }
    feed(frame.mode ? static_cast<std::uint64_t>(*frame.mode) + 1 : 0);
  }
  return h;
}

}  // namespace shepherd
