#include "shepherd/params.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace shepherd {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("invalid ModelParams: ") + what);
}

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

std::size_t ModelParams::effective_neighbor_count() const {
  return sheep_count == 0 ? 0 : std::min(neighbor_count, sheep_count - 1);
}

void ModelParams::validate() const {
  require(std::isfinite(paddock_length) && paddock_length > 0.0, "paddock_length must be > 0");
  require(sheep_count >= 1, "sheep_count must be >= 1");
  require(shepherd_count >= 1, "shepherd_count must be >= 1");
  require(std::isfinite(sheep_sense_shepherd) && sheep_sense_shepherd > 0.0,
          "sheep_sense_shepherd must be > 0");
  require(std::isfinite(sheep_sense_sheep) && sheep_sense_sheep > 0.0,
          "sheep_sense_sheep must be > 0");
  require(finite_nonneg(w_sheep_repulsion), "w_sheep_repulsion must be >= 0");
  require(finite_nonneg(w_shepherd_repulsion), "w_shepherd_repulsion must be >= 0");
  require(finite_nonneg(w_lcm_attraction), "w_lcm_attraction must be >= 0");
  require(finite_nonneg(w_inertia), "w_inertia must be >= 0");
  require(finite_nonneg(w_sheep_jitter), "w_sheep_jitter must be >= 0");
  require(finite_nonneg(w_shepherd_jitter), "w_shepherd_jitter must be >= 0");
  require(finite_nonneg(sheep_speed), "sheep_speed must be >= 0");
  require(finite_nonneg(shepherd_speed), "shepherd_speed must be >= 0");
  require(finite_nonneg(goal_distance), "goal_distance must be >= 0");
  require(step_limit >= 1, "step_limit must be >= 1");
  require(finite_nonneg(delta_f), "delta_f must be >= 0");
  require(std::isfinite(drive_offset) && drive_offset > 0.0, "drive_offset must be > 0");
  require(std::isfinite(collect_offset) && collect_offset > 0.0, "collect_offset must be > 0");
  require(finite_nonneg(shepherd_standoff), "shepherd_standoff must be >= 0");
}

ModelParams with_derived_offsets(ModelParams params) {
  const double r = params.sheep_sense_sheep;
  params.drive_offset = r * std::sqrt(static_cast<double>(params.sheep_count));
  params.collect_offset = r;
  params.shepherd_standoff = 3.0 * r;
  return params;
}

std::string_view to_string(SheepActivation a) {
  return a == SheepActivation::AlwaysActive ? "always_active" : "shepherd_pressure";
}

std::string_view to_string(UpdateOrder o) {
  return o == UpdateOrder::Simultaneous ? "simultaneous" : "sequential";
}

SheepActivation parse_activation(std::string_view s) {
  if (s == "shepherd_pressure") return SheepActivation::ShepherdPressure;
  if (s == "always_active") return SheepActivation::AlwaysActive;
  throw std::invalid_argument("unknown sheep activation '" + std::string(s) + "'");
}

UpdateOrder parse_update_order(std::string_view s) {
  if (s == "sequential") return UpdateOrder::Sequential;
  if (s == "simultaneous") return UpdateOrder::Simultaneous;
  throw std::invalid_argument("unknown update order '" + std::string(s) + "'");
}

}  // namespace shepherd
