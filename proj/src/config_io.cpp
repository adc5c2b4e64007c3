#include "cogsense/config_io.hpp"

#include <limits>
#include <set>
#include <vector>

#include <json.hpp>

#include "cogsense/csv.hpp"
#include "cogsense/errors.hpp"

namespace cogsense {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

json parse_strict(const std::string& text) {
  std::vector<std::set<std::string>> scopes;
  json::parser_callback_t cb = [&scopes](int /*depth*/, json::parse_event_t event,
                                         json& parsed) {
    switch (event) {
      case json::parse_event_t::object_start:
        scopes.emplace_back();
        break;
      case json::parse_event_t::object_end:
        scopes.pop_back();
        break;
      case json::parse_event_t::key: {
        const auto key = parsed.get<std::string>();
        if (!scopes.back().insert(key).second) {
          throw ConfigError(key, "duplicate key");
        }
        break;
      }
      default:
        break;
    }
    return true;
  };
  try {
    return json::parse(text, cb);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& scope) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (allowed.find(key) == allowed.end()) {
      throw ConfigError(scope.empty() ? key : scope + "." + key,
                        "unknown key");
    }
  }
}

int get_int(const json& obj, const char* key, int fallback) {
  if (!obj.contains(key)) {
    return fallback;
  }
  const json& v = obj.at(key);
  if (!v.is_number_integer() ||
      v.get<long long>() > std::numeric_limits<int>::max() ||
      v.get<long long>() < std::numeric_limits<int>::min()) {
    throw ConfigError(key, "must be an integer");
  }
  return v.get<int>();
}

double get_double(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) {
    return fallback;
  }
  const json& v = obj.at(key);
  if (!v.is_number()) {
    throw ConfigError(key, "must be a number");
  }
  return v.get<double>();
}

}  // namespace

std::string attack_kind_name(AttackKind kind) {
  switch (kind) {
    case AttackKind::kHonest:
      return "honest";
    case AttackKind::kAlwaysNo:
      return "always_no";
    case AttackKind::kAlwaysYes:
      return "always_yes";
  }
  return "?";
}

ScenarioConfig parse_config(const std::string& text) {
  const json root = parse_strict(text);
  if (!root.is_object()) {
    throw ConfigError("", "top level must be a JSON object");
  }
  reject_unknown_keys(root,
                      {"n_su", "n_malicious", "snr_db", "samples_per_sensing",
                       "n_instants", "pu_present_prob", "attack",
                       "method_multiplier_k", "max_iterations",
                       "threshold_tolerance", "master_seed", "threshold_grid"},
                      "");

  ScenarioConfig config;
  if (!root.contains("n_malicious")) {
    throw ConfigError("n_malicious", "required key is missing");
  }
  if (!root.contains("master_seed")) {
    throw ConfigError("master_seed", "required key is missing");
  }

  config.n_su = get_int(root, "n_su", config.n_su);
  config.n_malicious = get_int(root, "n_malicious", config.n_malicious);
  config.snr_db = get_double(root, "snr_db", config.snr_db);
  config.samples_per_sensing =
      get_int(root, "samples_per_sensing", config.samples_per_sensing);
  config.n_instants = get_int(root, "n_instants", config.n_instants);
  config.pu_present_prob =
      get_double(root, "pu_present_prob", config.pu_present_prob);
  config.method_multiplier_k =
      get_double(root, "method_multiplier_k", config.method_multiplier_k);
  config.max_iterations = get_int(root, "max_iterations", config.max_iterations);
  config.threshold_tolerance =
      get_double(root, "threshold_tolerance", config.threshold_tolerance);

  {
    const json& seed = root.at("master_seed");
    if (!seed.is_number_unsigned()) {
      throw ConfigError("master_seed", "must be an unsigned integer");
    }
    config.master_seed = seed.get<std::uint64_t>();
  }

  if (root.contains("attack")) {
    const json& attack = root.at("attack");
    if (!attack.is_object()) {
      throw ConfigError("attack", "must be an object");
    }
    reject_unknown_keys(attack, {"kind", "severity"}, "attack");
    if (attack.contains("kind")) {
      const json& kind = attack.at("kind");
      if (!kind.is_string()) {
        throw ConfigError("attack.kind", "must be a string");
      }
      const auto name = kind.get<std::string>();
      if (name == "honest") {
        config.attack.kind = AttackKind::kHonest;
      } else if (name == "always_no") {
        config.attack.kind = AttackKind::kAlwaysNo;
      } else if (name == "always_yes") {
        config.attack.kind = AttackKind::kAlwaysYes;
      } else {
        throw ConfigError("attack.kind",
                          "must be one of honest, always_no, always_yes");
      }
    }
    // Default severity tracks the attack kind when only the kind is given.
    if (config.attack.kind == AttackKind::kAlwaysYes) {
      config.attack.severity = 2.0;
    }
    config.attack.severity =
        get_double(attack, "severity", config.attack.severity);
  }

  if (root.contains("threshold_grid")) {
    const json& grid = root.at("threshold_grid");
    if (!grid.is_object()) {
      throw ConfigError("threshold_grid", "must be an object");
    }
    reject_unknown_keys(grid, {"start", "stop", "steps"}, "threshold_grid");
    config.threshold_grid.start =
        get_double(grid, "start", config.threshold_grid.start);
    config.threshold_grid.stop =
        get_double(grid, "stop", config.threshold_grid.stop);
    config.threshold_grid.steps =
        get_int(grid, "steps", config.threshold_grid.steps);
  }

  config.validate();
  return config;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec) || ec) {
    throw MissingInput("config file not found: " + path.string());
  }
  return parse_config(read_file(path));
}

std::string canonical_config_json(const ScenarioConfig& config) {
  ordered_json j;
  j["n_su"] = config.n_su;
  j["n_malicious"] = config.n_malicious;
  j["snr_db"] = config.snr_db;
  j["samples_per_sensing"] = config.samples_per_sensing;
  j["n_instants"] = config.n_instants;
  j["pu_present_prob"] = config.pu_present_prob;
  j["attack"] = {{"kind", attack_kind_name(config.attack.kind)},
                 {"severity", config.attack.severity}};
  j["method_multiplier_k"] = config.method_multiplier_k;
  j["max_iterations"] = config.max_iterations;
  j["threshold_tolerance"] = config.threshold_tolerance;
  j["master_seed"] = config.master_seed;
  j["threshold_grid"] = {{"start", config.threshold_grid.start},
                         {"stop", config.threshold_grid.stop},
                         {"steps", config.threshold_grid.steps}};
  return j.dump(2) + "\n";
}

}  // namespace cogsense
