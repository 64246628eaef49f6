#pragma once

#include <cstddef>
#include <string_view>

namespace shepherd {

/// Which sheep receive the full weighted force.
enum class SheepActivation {
  /// Only sheep with a shepherd inside the shepherd sensing range flock;
  /// the rest feel mutual repulsion and jitter only.
  ShepherdPressure,
  /// Every sheep flocks every step regardless of shepherd distance.
  AlwaysActive,
};

/// Ordering of shepherd and sheep moves inside one tick.
enum class UpdateOrder {
  /// Shepherd moves first; sheep react to its new position.
  Sequential,
  /// Sheep react to the shepherd position from the start of the tick.
  Simultaneous,
};

/// Every constant of one simulated episode. Defaults are the standard
/// Strömbom environment (150 m paddock, 100 sheep, one shepherd).
struct ModelParams {
  double paddock_length{150.0};
  std::size_t sheep_count{100};
  std::size_t shepherd_count{1};

  double sheep_sense_shepherd{65.0};  ///< sheep-to-shepherd sensing range, metres
  double sheep_sense_sheep{2.0};      ///< sheep-to-sheep repulsion range, metres

  double w_sheep_repulsion{2.0};
  double w_shepherd_repulsion{1.0};
  double w_lcm_attraction{1.05};
  double w_inertia{0.5};
  double w_sheep_jitter{0.3};
  double w_shepherd_jitter{0.3};

  std::size_t neighbor_count{25};
  double sheep_speed{1.0};     ///< metres per step
  double shepherd_speed{2.0};  ///< metres per step
  double goal_distance{5.0};   ///< success radius of the flock centre around the target
  std::size_t step_limit{1000};

  double delta_f{5.0};  ///< spacing of the collect/drive threshold ladder, metres

  double drive_offset{20.0};       ///< sheep_sense_sheep * sqrt(sheep_count)
  double collect_offset{2.0};      ///< sheep_sense_sheep
  double shepherd_standoff{6.0};   ///< 3 * sheep_sense_sheep; 0 disables halting

  SheepActivation activation{SheepActivation::ShepherdPressure};
  UpdateOrder update_order{UpdateOrder::Sequential};

  /// Neighbourhood size actually used: min(neighbor_count, sheep_count - 1).
  std::size_t effective_neighbor_count() const;

  /// Throws std::invalid_argument naming the first offending field.
  void validate() const;

  bool operator==(const ModelParams&) const = default;
};

/// Recomputes drive/collect/standoff distances from sheep_sense_sheep and
/// sheep_count the way the reference model does.
ModelParams with_derived_offsets(ModelParams params);

std::string_view to_string(SheepActivation a);
std::string_view to_string(UpdateOrder o);
SheepActivation parse_activation(std::string_view s);
UpdateOrder parse_update_order(std::string_view s);

}  // namespace shepherd
