#include "shepherd/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace shepherd {

namespace {

using nlohmann::json;

struct DoubleField {
  const char* name;
  double ModelParams::*member;
};

struct CountField {
  const char* name;
  std::size_t ModelParams::*member;
};

constexpr DoubleField kDoubleFields[] = {
    {"paddock_length", &ModelParams::paddock_length},
    {"sheep_sense_shepherd", &ModelParams::sheep_sense_shepherd},
    {"sheep_sense_sheep", &ModelParams::sheep_sense_sheep},
    {"w_sheep_repulsion", &ModelParams::w_sheep_repulsion},
    {"w_shepherd_repulsion", &ModelParams::w_shepherd_repulsion},
    {"w_lcm_attraction", &ModelParams::w_lcm_attraction},
    {"w_inertia", &ModelParams::w_inertia},
    {"w_sheep_jitter", &ModelParams::w_sheep_jitter},
    {"w_shepherd_jitter", &ModelParams::w_shepherd_jitter},
    {"sheep_speed", &ModelParams::sheep_speed},
    {"shepherd_speed", &ModelParams::shepherd_speed},
    {"goal_distance", &ModelParams::goal_distance},
    {"delta_f", &ModelParams::delta_f},
    {"drive_offset", &ModelParams::drive_offset},
    {"collect_offset", &ModelParams::collect_offset},
    {"shepherd_standoff", &ModelParams::shepherd_standoff},
};

constexpr CountField kCountFields[] = {
    {"sheep_count", &ModelParams::sheep_count},
    {"shepherd_count", &ModelParams::shepherd_count},
    {"neighbor_count", &ModelParams::neighbor_count},
    {"step_limit", &ModelParams::step_limit},
};

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument("config: " + what);
}

double as_double(const json& v, const std::string& key) {
  if (!v.is_number()) fail("'" + key + "' must be a number");
  return v.get<double>();
}

std::uint64_t as_unsigned(const json& v, const std::string& key) {
  if (!v.is_number_unsigned()) fail("'" + key + "' must be a non-negative integer");
  return v.get<std::uint64_t>();
}

std::vector<int> as_levels(const json& v, const std::string& key) {
  if (!v.is_array()) fail("'" + key + "' must be an array of integers");
  std::vector<int> out;
  for (const auto& e : v) {
    if (!e.is_number_integer()) fail("'" + key + "' must contain integers only");
    out.push_back(e.get<int>());
  }
  return out;
}

ModelParams params_from_json(const json& j) {
  if (!j.is_object()) fail("'params' must be an object");
  ModelParams p;
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const auto& f : kDoubleFields) {
      if (key == f.name) {
        p.*f.member = as_double(value, key);
        known = true;
      }
    }
    for (const auto& f : kCountFields) {
      if (key == f.name) {
        p.*f.member = static_cast<std::size_t>(as_unsigned(value, key));
        known = true;
      }
    }
    if (key == "activation" || key == "update_order") {
      if (!value.is_string()) fail("'" + key + "' must be a string");
      if (key == "activation") {
        p.activation = parse_activation(value.get<std::string>());
      } else {
        p.update_order = parse_update_order(value.get<std::string>());
      }
      known = true;
    }
    if (!known) fail("unknown params key '" + key + "'");
  }
  // Offsets left out of the document follow sheep_sense_sheep and sheep_count.
  const ModelParams derived = with_derived_offsets(p);
  if (!j.contains("drive_offset")) p.drive_offset = derived.drive_offset;
  if (!j.contains("collect_offset")) p.collect_offset = derived.collect_offset;
  if (!j.contains("shepherd_standoff")) p.shepherd_standoff = derived.shepherd_standoff;
  p.validate();
  return p;
}

json params_json(const ModelParams& p) {
  json j = json::object();
  for (const auto& f : kDoubleFields) j[f.name] = p.*f.member;
  for (const auto& f : kCountFields) j[f.name] = static_cast<std::uint64_t>(p.*f.member);
  j["activation"] = std::string(to_string(p.activation));
  j["update_order"] = std::string(to_string(p.update_order));
  return j;
}

}  // namespace

SweepSpec sweep_spec_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("top level must be an object");

  SweepSpec spec;
  for (const auto& [key, value] : doc.items()) {
    if (key == "params") {
      spec.params = params_from_json(value);
    } else if (key == "sweep") {
      if (!value.is_object()) fail("'sweep' must be an object");
      for (const auto& [k, v] : value.items()) {
        if (k == "threshold_levels") {
          spec.threshold_levels = as_levels(v, k);
        } else if (k == "alpha_levels") {
          spec.alpha_levels = as_levels(v, k);
        } else if (k == "lambda_levels") {
          spec.lambda_levels = as_levels(v, k);
        } else if (k == "episodes_per_setup") {
          spec.episodes_per_setup = static_cast<std::size_t>(as_unsigned(v, k));
        } else if (k == "master_seed") {
          spec.master_seed = as_unsigned(v, k);
        } else if (k == "stability_threshold") {
          spec.stability_threshold = as_double(v, k);
        } else if (k == "step_policy") {
          if (!v.is_string()) fail("'step_policy' must be a string");
          spec.step_policy = parse_step_policy(v.get<std::string>());
        } else {
          fail("unknown sweep key '" + k + "'");
        }
      }
    } else {
      fail("unknown top-level key '" + key + "'");
    }
  }
  spec.validate();
  return spec;
}

SweepSpec load_sweep_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return sweep_spec_from_json(buf.str());
}

std::string params_to_json(const ModelParams& params, int indent) {
  return params_json(params).dump(indent);
}

}  // namespace shepherd
