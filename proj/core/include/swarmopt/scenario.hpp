#pragma once

#include <optional>
#include <vector>

#include "swarmopt/ga.hpp"

namespace swarmopt {

enum class ScenarioKind { kStatic, kFixedArea, kMoving };

/// Straight-line drift of the deployment area, re-optimized once per window.
struct MotionSpec {
    double speed_mps = 2.0;
    double heading_deg = 0.0;  // direction of progression, CCW from +x
    double window_s = 7.5;     // optimizer refresh interval
    int n_windows = 4;
    double budget_guard_fraction = 0.1;  // share of the window reserved for distribution

    bool operator==(const MotionSpec&) const = default;

    void validate() const;
};

struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::kFixedArea;
    int n_uav = 4;
    GridSpec grid;
    ChannelParams channel;
    Jammer jammer{{25.0, -50.0}, 100.0, RadiationPattern::omni()};
    RadiationPattern pattern = RadiationPattern::default_directional();
    ObjectiveWeights weights;
    GaConfig ga;
    std::vector<Position> fixed_positions;  // Static only
    std::optional<MotionSpec> motion;       // Moving only

    bool operator==(const ScenarioConfig&) const = default;

    void validate() const;
};

FitnessEnv make_env(const ScenarioConfig& config);

/// Channel, routing and objective state of one swarm configuration.
struct Snapshot {
    std::vector<UavState> uavs;
    CapacityMatrix capacity;
    RoutingResult routing;
    double of = 0.0;
};

Snapshot make_snapshot(std::span<const UavState> uavs, const ScenarioConfig& config);

struct WindowRecord {
    int window_index = 0;
    Position area_origin;
    GaReport report;
    Snapshot snapshot;
};

struct StaticResult {
    GaReport report;
    double omni_baseline_of = 0.0;
};

/// Beam-direction optimization for pinned UAV positions, plus the
/// omnidirectional baseline OF of the same geometry.
StaticResult run_static(const ScenarioConfig& config);

/// Full nested GA over the static deployment area.
GaReport run_fixed_area(const ScenarioConfig& config);

/// Time-windowed re-optimization while the deployment area slides along the
/// heading. The previous window's best formation is translated with the area
/// and seeded into the next initial population.
std::vector<WindowRecord> run_moving(const ScenarioConfig& config);

struct ScenarioResult {
    std::vector<WindowRecord> windows;
    std::optional<double> omni_baseline_of;  // Static runs only
};

/// Uniform front end over the three scenario kinds.
ScenarioResult run_scenario(const ScenarioConfig& config);

}  // namespace swarmopt
