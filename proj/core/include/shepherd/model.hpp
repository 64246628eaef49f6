#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "shepherd/params.hpp"
#include "shepherd/rng.hpp"
#include "shepherd/vec2.hpp"

namespace shepherd {

struct SheepState {
  Vec2 position;
  /// Normalised total force of the previous step; drives the inertia term.
  Vec2 prev_force;
};

struct ShepherdState {
  Vec2 position;
};

struct WorldState {
  std::vector<SheepState> sheep;
  std::vector<ShepherdState> shepherds;
  Vec2 target;
  std::size_t step{0};

  std::vector<Vec2> sheep_positions() const;
  std::vector<Vec2> shepherd_positions() const;
};

/// Indices of the min(k, N-1) sheep closest to sheep `i`, nearest first.
/// Equal distances resolve to the lower index.
std::vector<std::size_t> nearest_neighbors(std::size_t i, std::span<const Vec2> positions,
                                           std::size_t k);

/// Allocation-free neighbour search for the hot loop.
///
/// scan() measures every distance from sheep `i` once and returns its
/// repulsion force (bit-identical to sheep_repulsion_force); select() then
/// picks the k nearest from the same scan.
class NeighborFinder {
 public:
  void find(std::size_t i, std::span<const Vec2> positions, std::size_t k,
            std::vector<std::size_t>& out);

  Vec2 scan(std::size_t i, std::span<const Vec2> positions, double repulsion_range, Rng& rng);
  void select(std::size_t k, std::vector<std::size_t>& out);

 private:
  struct Candidate {
    double d2;
    std::size_t index;
  };
  std::vector<Candidate> candidates_;
};

/// True when any shepherd lies within `range` of the sheep.
bool shepherd_in_range(const Vec2& sheep_pos, std::span<const Vec2> shepherd_positions,
                       double range);

/// Normalised sum of unit vectors pointing away from every shepherd within
/// `range`; zero when none is in range.
Vec2 sheep_escape_force(const Vec2& sheep_pos, std::span<const Vec2> shepherd_positions,
                        double range);

/// Normalised sum of unit vectors pointing away from every other sheep within
/// `range`. A sheep sitting on top of sheep `i` contributes a direction drawn
/// from `rng`.
Vec2 sheep_repulsion_force(std::size_t i, std::span<const Vec2> positions, double range,
                           Rng& rng);

/// Unit vector from the sheep towards the centroid of its neighbours.
/// Zero for an empty neighbourhood or when the sheep sits on the centroid.
Vec2 sheep_grouping_force(const Vec2& sheep_pos, std::span<const Vec2> neighbor_positions);

struct SheepForces {
  Vec2 escape;
  Vec2 repulsion;
  Vec2 grouping;
  Vec2 jitter;
};

/// Weighted force of one sheep, normalised so the sheep moves at constant
/// speed. An inactive sheep ignores inertia, grouping and escape.
Vec2 sheep_total_force(const SheepState& sheep, const ModelParams& params,
                       const SheepForces& forces, bool active);

/// normalize(steer + jitter_weight * jitter)
Vec2 shepherd_total_force(const Vec2& steer, const Vec2& jitter, double jitter_weight);

/// Each coordinate clamped to [0, paddock_length].
Vec2 clamp_to_paddock(const Vec2& pos, double paddock_length);

/// clamp(pos + speed * force) to the paddock.
Vec2 step_position(const Vec2& pos, double speed, const Vec2& force, double paddock_length);

}  // namespace shepherd
