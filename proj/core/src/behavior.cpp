#include "shepherd/behavior.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace shepherd {

double behaviour_threshold(double sheep_sense_sheep, std::size_t sheep_count) {
  return sheep_sense_sheep * std::cbrt(static_cast<double>(sheep_count) *
                                       static_cast<double>(sheep_count));
}

ThresholdLevel threshold_value(int level, const ModelParams& params) {
  if (level < kMinThresholdLevel || level > kMaxThresholdLevel) {
    throw std::out_of_range("threshold level " + std::to_string(level) +
                            " outside [-3, 3]");
  }
  const double value = behaviour_threshold(params.sheep_sense_sheep, params.sheep_count) +
                       static_cast<double>(level) * params.delta_f;
  if (!(value > 0.0)) {
    throw std::invalid_argument("threshold level " + std::to_string(level) +
                                " gives a non-positive radius");
  }
  return {level, value};
}

std::string_view threshold_level_name(int level) {
  static constexpr std::array<std::string_view, 7> kNames = {
      "Extreme", "Very High", "High", "Normal", "Infrequent", "Very Infrequent", "Rare"};
  if (level < kMinThresholdLevel || level > kMaxThresholdLevel) return "?";
  return kNames[static_cast<std::size_t>(level - kMinThresholdLevel)];
}

std::string_view to_string(ShepherdMode mode) {
  return mode == ShepherdMode::Driving ? "driving" : "collecting";
}

Vec2 global_center_of_mass(std::span<const Vec2> positions) {
  if (positions.empty()) throw std::invalid_argument("centre of mass of an empty flock");
  Vec2 sum;
  for (const auto& p : positions) sum += p;
  return sum / static_cast<double>(positions.size());
}

FurthestSheep furthest_sheep(std::span<const Vec2> positions, const Vec2& gcm) {
  FurthestSheep best;
  double best_d2 = -1.0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const double d2 = distance_squared(positions[i], gcm);
    if (d2 > best_d2) {
      best_d2 = d2;
      best.index = i;
    }
  }
  if (!positions.empty()) best.distance = distance(positions[best.index], gcm);
  return best;
}

ShepherdMode select_behaviour(std::span<const Vec2> perceived_positions, double threshold) {
  const Vec2 gcm = global_center_of_mass(perceived_positions);
  const FurthestSheep far = furthest_sheep(perceived_positions, gcm);
  return far.distance <= threshold ? ShepherdMode::Driving : ShepherdMode::Collecting;
}

Vec2 driving_point(const Vec2& gcm, const Vec2& target, double drive_offset) {
  return gcm + drive_offset * unit(gcm - target);
}

Vec2 collecting_point(const Vec2& gcm, const Vec2& furthest, double collect_offset) {
  return furthest + collect_offset * unit(furthest - gcm);
}

ShepherdDecision shepherd_decide(std::span<const Vec2> perceived_positions,
                                 std::span<const Vec2> true_positions, const Vec2& shepherd_pos,
                                 const Vec2& target, double threshold, const ModelParams& params) {
  ShepherdDecision decision;
  const Vec2 gcm = global_center_of_mass(perceived_positions);
  const FurthestSheep far = furthest_sheep(perceived_positions, gcm);
  decision.mode = far.distance <= threshold ? ShepherdMode::Driving : ShepherdMode::Collecting;
  decision.steer_point = decision.mode == ShepherdMode::Driving
                             ? driving_point(gcm, target, params.drive_offset)
                             : collecting_point(gcm, perceived_positions[far.index],
                                                params.collect_offset);

  if (params.shepherd_standoff > 0.0) {
    const double r2 = params.shepherd_standoff * params.shepherd_standoff;
    for (const auto& p : true_positions) {
      if (distance_squared(p, shepherd_pos) <= r2) {
        decision.halted = true;
        break;
      }
    }
  }
  decision.steer_force = decision.halted ? Vec2{} : unit(decision.steer_point - shepherd_pos);
  return decision;
}

}  // namespace shepherd
