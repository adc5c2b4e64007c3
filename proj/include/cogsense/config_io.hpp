#pragma once

#include <filesystem>
#include <string>

#include "cogsense/sensing.hpp"

// Strict JSON configuration: unknown or duplicate keys are rejected,
// everything except n_malicious and master_seed has a default.

namespace cogsense {

// Throws MissingInput when the file does not exist, ConfigError on any
// schema violation (including duplicate keys and malformed JSON).
ScenarioConfig load_config(const std::filesystem::path& path);

ScenarioConfig parse_config(const std::string& text);

// Canonical serialization of the resolved config; equal strings iff equal
// resolved configs. Feeds the manifest's config digest.
std::string canonical_config_json(const ScenarioConfig& config);

std::string attack_kind_name(AttackKind kind);

}  // namespace cogsense
