#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "shepherd/params.hpp"
#include "shepherd/rng.hpp"
#include "shepherd/vec2.hpp"

namespace shepherd {

inline constexpr int kMaxNoiseLevel = 6;

/// Noise scale unit: the largest threshold on the ladder, f(N) + 3 * delta_f.
double compute_delta_n(const ModelParams& params);

/// Perception (alpha) and actuation (lambda) noise of one setup, in metres.
struct NoiseSpec {
  int alpha_level{0};
  int lambda_level{0};
  double alpha{0.0};
  double lambda{0.0};
  double delta_n{0.0};
};

/// alpha = 0.1 * alpha_level * delta_n, lambda = 0.01 * lambda_level * delta_n.
/// Throws std::out_of_range for levels outside [0, 6].
NoiseSpec noise_values(int alpha_level, int lambda_level, double delta_n);

std::string_view perception_level_name(int level);
std::string_view actuation_level_name(int level);

/// pos + speed * (force + lambda * draw), unclamped.
Vec2 apply_actuation_noise(const Vec2& pos, double speed, const Vec2& force, double lambda,
                           const Vec2& draw);

/// Same, drawing two independent standard normals from `rng`.
/// With lambda == 0 nothing is drawn and the result is pos + speed * force.
Vec2 apply_actuation_noise(const Vec2& pos, double speed, const Vec2& force, double lambda,
                           Rng& rng);

/// true_positions[i] + alpha * draws[i] for every sheep.
std::vector<Vec2> perceive_positions(std::span<const Vec2> true_positions, double alpha,
                                     std::span<const Vec2> draws);

/// Same, drawing per-coordinate standard normals from `rng`.
/// With alpha == 0 the input is returned unchanged and nothing is drawn.
std::vector<Vec2> perceive_positions(std::span<const Vec2> true_positions, double alpha,
                                     Rng& rng);

/// Independent random streams of one episode. Each channel is derived from
/// the episode seed alone, so changing one noise level never shifts the draws
/// of another channel.
struct EpisodeStreams {
  enum Channel : std::uint64_t {
    kInit = 1,
    kSheepJitter = 2,
    kShepherdJitter = 3,
    kActuation = 4,
    kPerception = 5,
    kCoincidence = 6,
  };

  explicit EpisodeStreams(std::uint64_t episode_seed);

  Rng init;
  Rng sheep_jitter;
  Rng shepherd_jitter;
  Rng actuation;
  Rng perception;
  Rng coincidence;
};

}  // namespace shepherd
