#include "shepherd/noise.hpp"

#include <array>
#include <stdexcept>
#include <string>

#include "shepherd/behavior.hpp"

namespace shepherd {

namespace {

void check_level(int level, const char* what) {
  if (level < 0 || level > kMaxNoiseLevel) {
    throw std::out_of_range(std::string(what) + " level " + std::to_string(level) +
                            " outside [0, 6]");
  }
}

constexpr std::array<std::string_view, 7> kNoiseNames = {
    "Noise Free", "Very little", "Little", "Small", "Medium", "High", "Very High"};

}  // namespace

double compute_delta_n(const ModelParams& params) {
  return threshold_value(kMaxThresholdLevel, params).value;
}

NoiseSpec noise_values(int alpha_level, int lambda_level, double delta_n) {
  check_level(alpha_level, "perception");
  check_level(lambda_level, "actuation");
  NoiseSpec spec;
  spec.alpha_level = alpha_level;
  spec.lambda_level = lambda_level;
  spec.delta_n = delta_n;
  spec.alpha = alpha_level == 0 ? 0.0 : 0.1 * alpha_level * delta_n;
  spec.lambda = lambda_level == 0 ? 0.0 : 0.01 * lambda_level * delta_n;
  return spec;
}

std::string_view perception_level_name(int level) {
  if (level < 0 || level > kMaxNoiseLevel) return "?";
  return kNoiseNames[static_cast<std::size_t>(level)];
}

std::string_view actuation_level_name(int level) { return perception_level_name(level); }

Vec2 apply_actuation_noise(const Vec2& pos, double speed, const Vec2& force, double lambda,
                           const Vec2& draw) {
  return pos + speed * (force + lambda * draw);
}

Vec2 apply_actuation_noise(const Vec2& pos, double speed, const Vec2& force, double lambda,
                           Rng& rng) {
  if (lambda == 0.0) return pos + speed * force;
  return apply_actuation_noise(pos, speed, force, lambda, rng.standard_normal2());
}

std::vector<Vec2> perceive_positions(std::span<const Vec2> true_positions, double alpha,
                                     std::span<const Vec2> draws) {
  if (draws.size() != true_positions.size()) {
    throw std::invalid_argument("perceive_positions: one draw per sheep required");
  }
  std::vector<Vec2> out(true_positions.begin(), true_positions.end());
  if (alpha == 0.0) return out;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += alpha * draws[i];
  return out;
}

std::vector<Vec2> perceive_positions(std::span<const Vec2> true_positions, double alpha,
                                     Rng& rng) {
  std::vector<Vec2> out(true_positions.begin(), true_positions.end());
  if (alpha == 0.0) return out;
  for (auto& p : out) p += alpha * rng.standard_normal2();
  return out;
}

EpisodeStreams::EpisodeStreams(std::uint64_t episode_seed)
    : init(derive_stream_seed(episode_seed, kInit)),
      sheep_jitter(derive_stream_seed(episode_seed, kSheepJitter)),
      shepherd_jitter(derive_stream_seed(episode_seed, kShepherdJitter)),
      actuation(derive_stream_seed(episode_seed, kActuation)),
      perception(derive_stream_seed(episode_seed, kPerception)),
      coincidence(derive_stream_seed(episode_seed, kCoincidence)) {}

}  // namespace shepherd
