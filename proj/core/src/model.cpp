#include "shepherd/model.hpp"

#include <algorithm>
#include <cmath>

namespace shepherd {

std::vector<Vec2> WorldState::sheep_positions() const {
  std::vector<Vec2> out;
  out.reserve(sheep.size());
  for (const auto& s : sheep) out.push_back(s.position);
  return out;
}

std::vector<Vec2> WorldState::shepherd_positions() const {
  std::vector<Vec2> out;
  out.reserve(shepherds.size());
  for (const auto& s : shepherds) out.push_back(s.position);
  return out;
}

namespace {

// Shared by the standalone op and NeighborFinder::scan so both sum in index order.
inline void accumulate_repulsion(Vec2& sum, const Vec2& away, double d2, Rng& rng) {
  if (d2 <= kUnitEpsilon * kUnitEpsilon) {
    sum += rng.uniform_unit_vector();
  } else {
    sum += away / std::sqrt(d2);
  }
}

}  // namespace

void NeighborFinder::find(std::size_t i, std::span<const Vec2> positions, std::size_t k,
                          std::vector<std::size_t>& out) {
  candidates_.clear();
  const Vec2 self = positions[i];
  for (std::size_t j = 0; j < positions.size(); ++j) {
    if (j != i) candidates_.push_back({distance_squared(self, positions[j]), j});
  }
  select(k, out);
}

Vec2 NeighborFinder::scan(std::size_t i, std::span<const Vec2> positions, double repulsion_range,
                          Rng& rng) {
  const std::size_t n = positions.size();
  candidates_.resize(n > 0 ? n - 1 : 0);
  const Vec2 self = positions[i];
  const double r2 = repulsion_range * repulsion_range;
  Vec2 sum;
  Candidate* slot = candidates_.data();
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    const Vec2 away = self - positions[j];
    const double d2 = norm_squared(away);
    *slot++ = {d2, j};
    if (d2 <= r2) accumulate_repulsion(sum, away, d2, rng);
  }
  return unit(sum);
}

void NeighborFinder::select(std::size_t k, std::vector<std::size_t>& out) {
  out.clear();
  if (candidates_.empty() || k == 0) return;
  const auto closer = [](const Candidate& a, const Candidate& b) {
    return a.d2 < b.d2 || (a.d2 == b.d2 && a.index < b.index);
  };
  const std::size_t take = std::min(k, candidates_.size());
  auto mid = candidates_.begin() + static_cast<std::ptrdiff_t>(take);
  if (take < candidates_.size()) std::nth_element(candidates_.begin(), mid, candidates_.end(), closer);
  std::sort(candidates_.begin(), mid, closer);
  for (auto it = candidates_.begin(); it != mid; ++it) out.push_back(it->index);
}

std::vector<std::size_t> nearest_neighbors(std::size_t i, std::span<const Vec2> positions,
                                           std::size_t k) {
  NeighborFinder finder;
  std::vector<std::size_t> out;
  finder.find(i, positions, k, out);
  return out;
}

bool shepherd_in_range(const Vec2& sheep_pos, std::span<const Vec2> shepherd_positions,
                       double range) {
  const double r2 = range * range;
  return std::any_of(shepherd_positions.begin(), shepherd_positions.end(),
                     [&](const Vec2& p) { return distance_squared(sheep_pos, p) <= r2; });
}

Vec2 sheep_escape_force(const Vec2& sheep_pos, std::span<const Vec2> shepherd_positions,
                        double range) {
  Vec2 sum;
  for (const auto& p : shepherd_positions) {
    if (distance(sheep_pos, p) <= range) sum += unit(sheep_pos - p);
  }
  return unit(sum);
}

Vec2 sheep_repulsion_force(std::size_t i, std::span<const Vec2> positions, double range,
                           Rng& rng) {
  const Vec2 self = positions[i];
  const double r2 = range * range;
  Vec2 sum;
  for (std::size_t k = 0; k < positions.size(); ++k) {
    if (k == i) continue;
    const Vec2 away = self - positions[k];
    const double d2 = norm_squared(away);
    if (d2 <= r2) accumulate_repulsion(sum, away, d2, rng);
  }
  return unit(sum);
}

Vec2 sheep_grouping_force(const Vec2& sheep_pos, std::span<const Vec2> neighbor_positions) {
  if (neighbor_positions.empty()) return {};
  Vec2 centroid;
  for (const auto& p : neighbor_positions) centroid += p;
  centroid = centroid / static_cast<double>(neighbor_positions.size());
  return unit(centroid - sheep_pos);
}

Vec2 sheep_total_force(const SheepState& sheep, const ModelParams& params,
                       const SheepForces& forces, bool active) {
  Vec2 total = params.w_sheep_repulsion * forces.repulsion + params.w_sheep_jitter * forces.jitter;
  if (active) {
    total += params.w_inertia * sheep.prev_force;
    total += params.w_lcm_attraction * forces.grouping;
    total += params.w_shepherd_repulsion * forces.escape;
  }
  return unit(total);
}

Vec2 shepherd_total_force(const Vec2& steer, const Vec2& jitter, double jitter_weight) {
  return unit(steer + jitter_weight * jitter);
}

Vec2 clamp_to_paddock(const Vec2& pos, double paddock_length) {
  return {std::clamp(pos.x, 0.0, paddock_length), std::clamp(pos.y, 0.0, paddock_length)};
}

Vec2 step_position(const Vec2& pos, double speed, const Vec2& force, double paddock_length) {
  return clamp_to_paddock(pos + speed * force, paddock_length);
}

}  // namespace shepherd
