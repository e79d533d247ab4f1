#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "formation/scenario.hpp"

namespace formation {

// Scenario file format: JSON with top-level sections graph / agents / angles /
// gains / estimators / maneuvers / integration (field names documented in the
// README). Throws ConfigError with the offending path on any problem.
Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);

Scenario load_scenario_file(const std::filesystem::path& path);
void save_scenario_file(const Scenario& s, const std::filesystem::path& path);

// Applies one "key=value" override to a scenario JSON document. Keys are
// dotted paths ("integration.dt", "maneuvers.velocity_tracking.enabled");
// bare shorthands dt / duration / T / log_stride / r_hat0 / label are
// accepted. Values are parsed as JSON, falling back to a plain string.
void apply_override(nlohmann::json& doc, const std::string& assignment);

}  // namespace formation
