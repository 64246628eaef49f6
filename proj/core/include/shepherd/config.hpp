#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "shepherd/harness.hpp"
#include "shepherd/params.hpp"

namespace shepherd {

/// Reads a sweep config document:
///
///   {
///     "params": { <any ModelParams field>, "activation": "...",
///                 "update_order": "..." },
///     "sweep":  { "threshold_levels": [...], "alpha_levels": [...],
///                 "lambda_levels": [...], "episodes_per_setup": 300,
///                 "master_seed": 1, "stability_threshold": 3.0,
///                 "step_policy": "include_failures" }
///   }
///
/// Every key is optional. Omitted drive_offset / collect_offset /
/// shepherd_standoff are derived from sheep_sense_sheep and sheep_count.
/// Unknown keys and wrong types throw std::invalid_argument.
SweepSpec sweep_spec_from_json(std::string_view text);

/// Reads a config file. Throws std::runtime_error if it cannot be read.
SweepSpec load_sweep_spec(const std::filesystem::path& path);

/// ModelParams as a JSON object, using the config field names.
std::string params_to_json(const ModelParams& params, int indent = -1);

}  // namespace shepherd
