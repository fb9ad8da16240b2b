#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "swarmopt/scenario.hpp"

namespace swarmopt {

/// Configuration file problem: missing file, malformed JSON, unknown key,
/// wrong type or an invariant violation. The message names the field.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Strict parse: unknown keys are rejected, defaults applied, all invariants
/// validated. Relative pattern-file references resolve against the config
/// file's directory.
ScenarioConfig parse_scenario_config(const std::filesystem::path& path);
ScenarioConfig parse_scenario_json(const nlohmann::json& j,
                                   const std::filesystem::path& base_dir = {});

nlohmann::json scenario_to_json(const ScenarioConfig& config);

/// Pattern file: JSON array of {"angle_deg", "gain_dbi"} objects.
RadiationPattern load_pattern_file(const std::filesystem::path& path);
nlohmann::json pattern_to_json(const RadiationPattern& pattern);

/// Ready-made configs for the three scenario kinds with the documented
/// default parameterization, jammer placement and static layout.
ScenarioConfig make_default_scenario(ScenarioKind kind);

/// Documented 4-UAV layout used by the static scenario when the config does
/// not list positions.
std::vector<Position> default_static_positions();

}  // namespace swarmopt
