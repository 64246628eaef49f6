#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "shepherd/params.hpp"
#include "shepherd/vec2.hpp"

namespace shepherd {

inline constexpr int kMinThresholdLevel = -3;
inline constexpr int kMaxThresholdLevel = 3;

/// Collect/drive switching radius of the reference model: R * N^(2/3).
double behaviour_threshold(double sheep_sense_sheep, std::size_t sheep_count);

/// One rung of the threshold ladder: f(N) + level * delta_f.
struct ThresholdLevel {
  int level{0};
  double value{0.0};
};

/// Throws std::out_of_range for levels outside [-3, 3] and
/// std::invalid_argument if the resulting radius is not positive.
ThresholdLevel threshold_value(int level, const ModelParams& params);

/// Name of the collecting-frequency rung ("Extreme" ... "Rare").
std::string_view threshold_level_name(int level);

enum class ShepherdMode { Driving, Collecting };

std::string_view to_string(ShepherdMode mode);

/// Arithmetic mean of a non-empty set of positions.
/// Throws std::invalid_argument on an empty span.
Vec2 global_center_of_mass(std::span<const Vec2> positions);

struct FurthestSheep {
  std::size_t index{0};
  double distance{0.0};
};

/// Sheep furthest from `gcm`; equal distances resolve to the lower index.
FurthestSheep furthest_sheep(std::span<const Vec2> positions, const Vec2& gcm);

/// Driving when every position lies within `threshold` of the centre of mass
/// (boundary inclusive), Collecting otherwise.
ShepherdMode select_behaviour(std::span<const Vec2> perceived_positions, double threshold);

/// Point `drive_offset` behind the flock centre on the ray from the target
/// through the centre. Returns `gcm` when centre and target coincide.
Vec2 driving_point(const Vec2& gcm, const Vec2& target, double drive_offset);

/// Point `collect_offset` beyond the furthest sheep on the ray from the flock
/// centre through that sheep. Returns `furthest` when the two coincide.
Vec2 collecting_point(const Vec2& gcm, const Vec2& furthest, double collect_offset);

struct ShepherdDecision {
  ShepherdMode mode{ShepherdMode::Driving};
  Vec2 steer_point;
  Vec2 steer_force;
  bool halted{false};
};

/// One shepherd's steering decision.
///
/// Mode, centre of mass and furthest sheep come from `perceived_positions`.
/// The standoff halt uses `true_positions`: when any real sheep is within
/// params.shepherd_standoff of the shepherd the steering force is zero.
ShepherdDecision shepherd_decide(std::span<const Vec2> perceived_positions,
                                 std::span<const Vec2> true_positions, const Vec2& shepherd_pos,
                                 const Vec2& target, double threshold, const ModelParams& params);

}  // namespace shepherd
