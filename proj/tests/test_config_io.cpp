#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>

#include "swarmopt/config_io.hpp"

using namespace swarmopt;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name, const std::string& content) {
    const fs::path p = fs::temp_directory_path() / name;
    std::ofstream out(p);
    out << content;
    return p;
}

}  // namespace

TEST_SUITE_BEGIN("config_io");

TEST_CASE("a bare fixed_area config resolves to the shipped defaults") {
    const ScenarioConfig cfg = parse_scenario_json(json{{"kind", "fixed_area"}});
    CHECK(cfg.kind == ScenarioKind::kFixedArea);
    CHECK(cfg.n_uav == 4);
    CHECK(cfg.grid.width == 50.0);
    CHECK(cfg.grid.height == 40.0);
    CHECK(cfg.grid.spacing == 5.0);
    CHECK(cfg.channel.bandwidth_hz == 2.4e9);
    CHECK(cfg.channel.tx_power_dbm == 20.0);
    CHECK(cfg.channel.jammer_power_dbm == 100.0);
    CHECK(cfg.channel.path_loss_exponent == 2.0);
    CHECK(cfg.channel.ref_distance_m == 1.0);
    CHECK(cfg.channel.ref_loss_db == 30.0);
    CHECK(cfg.channel.noise_floor_dbm == -100.0);
    CHECK(cfg.ga.population_size == 100);
    CHECK(cfg.ga.max_generations == 50);
    CHECK(cfg.ga.mutation_rate == 0.15);
    CHECK(cfg.ga.crossover_rate == 0.9);
    CHECK(cfg.jammer.power_dbm == 100.0);
    CHECK(cfg.pattern == RadiationPattern::default_directional());
}

TEST_CASE("a bare static config ships the documented layout") {
    const ScenarioConfig cfg = parse_scenario_json(json{{"kind", "static"}});
    CHECK(cfg.fixed_positions == default_static_positions());
}

TEST_CASE("kind is required") {
    CHECK_THROWS_AS(parse_scenario_json(json::object()), ConfigError);
    CHECK_THROWS_AS(parse_scenario_json(json{{"kind", "strolling"}}), ConfigError);
}

TEST_CASE("grid invariants are enforced with the field name in the message") {
    try {
        parse_scenario_json(json{{"kind", "fixed_area"}, {"grid", {{"spacing", 0.0}}}});
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("spacing") != std::string::npos);
    }
    CHECK_THROWS_AS(
        parse_scenario_json(json{{"kind", "fixed_area"}, {"grid", {{"width", 52.0}}}}),
        ConfigError);  // not a multiple of the spacing
}

TEST_CASE("moving without a motion block is rejected") {
    CHECK_THROWS_AS(parse_scenario_json(json{{"kind", "moving"}}), ConfigError);
}

TEST_CASE("unknown keys are rejected at any level") {
    CHECK_THROWS_AS(parse_scenario_json(json{{"kind", "fixed_area"}, {"species", 1}}), ConfigError);
    try {
        parse_scenario_json(json{{"kind", "fixed_area"}, {"ga", {{"popsize", 10}}}});
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("ga.popsize") != std::string::npos);
    }
}

TEST_CASE("scenario kinds reject each other's blocks") {
    CHECK_THROWS_AS(parse_scenario_json(json{
                        {"kind", "fixed_area"},
                        {"fixed_positions", json::array({json{{"x", 0}, {"y", 0}}})}}),
                    ConfigError);
    CHECK_THROWS_AS(parse_scenario_json(json{{"kind", "static"}, {"motion", json::object()}}),
                    ConfigError);
}

TEST_CASE("static with a non-default UAV count needs explicit positions") {
    CHECK_THROWS_AS(parse_scenario_json(json{{"kind", "static"}, {"n_uav", 3}}), ConfigError);

    json three = {{"kind", "static"},
                  {"n_uav", 3},
                  {"fixed_positions", json::array({json{{"x", 0}, {"y", 0}}, json{{"x", 10}, {"y", 0}},
                                                   json{{"x", 5}, {"y", 8}}})}};
    const ScenarioConfig cfg = parse_scenario_json(three);
    CHECK(cfg.fixed_positions.size() == 3);
}

TEST_CASE("invariant violations surface the offending field") {
    try {
        parse_scenario_json(json{{"kind", "fixed_area"}, {"ga", {{"mutation_rate", 1.5}}}});
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("mutation_rate") != std::string::npos);
    }
}

TEST_CASE("serialized configs parse back to the identical value") {
    for (ScenarioKind kind :
         {ScenarioKind::kStatic, ScenarioKind::kFixedArea, ScenarioKind::kMoving}) {
        const ScenarioConfig cfg = make_default_scenario(kind);
        CHECK(parse_scenario_json(scenario_to_json(cfg)) == cfg);
    }

    ScenarioConfig custom = make_default_scenario(ScenarioKind::kMoving);
    custom.jammer.power_dbm = Jammer::off_power();
    custom.jammer.position = {-7.25, 103.5};
    custom.pattern = RadiationPattern({{0.0, 12.0}, {60.0, 3.0}, {180.0, -20.0}});
    custom.ga.time_budget_s = 2.5;
    custom.ga.rng_seed = 987654321;
    custom.weights = {2.0, 0.25};
    custom.channel.shadowing_sigma_db = 4.0;
    custom.motion->heading_deg = 45.0;
    custom.motion->n_windows = 9;
    CHECK(parse_scenario_json(scenario_to_json(custom)) == custom);
}

TEST_CASE("jammer can be switched off in the config") {
    const ScenarioConfig cfg =
        parse_scenario_json(json{{"kind", "fixed_area"}, {"jammer", {{"power_dbm", "off"}}}});
    CHECK(cfg.jammer.is_off());
    CHECK_THROWS_AS(
        parse_scenario_json(json{{"kind", "fixed_area"}, {"jammer", {{"power_dbm", "strong"}}}}),
        ConfigError);
}

TEST_CASE("jammer power defaults to the channel table value") {
    const ScenarioConfig cfg = parse_scenario_json(
        json{{"kind", "fixed_area"}, {"channel", {{"jammer_power_dbm", 73.0}}}});
    CHECK(cfg.jammer.power_dbm == 73.0);
}

TEST_CASE("pattern specs: omni, default, inline table, file reference") {
    const ScenarioConfig omni =
        parse_scenario_json(json{{"kind", "fixed_area"}, {"pattern", "omni"}});
    CHECK(omni.pattern.is_omni());

    json inline_cfg = {{"kind", "fixed_area"},
                       {"pattern", json::array({json{{"angle_deg", 0.0}, {"gain_dbi", 5.0}},
                                                json{{"angle_deg", 120.0}, {"gain_dbi", -5.0}}})}};
    const ScenarioConfig inl = parse_scenario_json(inline_cfg);
    CHECK(inl.pattern.samples().size() == 2);

    const fs::path pf = temp_file("pattern_ok.json",
                                  R"([{"angle_deg": 0, "gain_dbi": 6}, {"angle_deg": 180, "gain_dbi": -6}])");
    json file_cfg = {{"kind", "fixed_area"}, {"pattern", {{"file", pf.string()}}}};
    const ScenarioConfig fromfile = parse_scenario_json(file_cfg);
    CHECK(fromfile.pattern.samples().front().gain_dbi == 6.0);
}

TEST_CASE("pattern file loader rejects malformed tables") {
    CHECK_THROWS_AS(load_pattern_file("/nonexistent/pattern.json"), ConfigError);

    const fs::path unsorted = temp_file("pattern_unsorted.json",
                                        R"([{"angle_deg": 0, "gain_dbi": 1}, {"angle_deg": 200, "gain_dbi": 2},
                                            {"angle_deg": 100, "gain_dbi": 3}])");
    CHECK_THROWS_AS(load_pattern_file(unsorted), ConfigError);

    const fs::path out_of_range = temp_file("pattern_range.json",
                                            R"([{"angle_deg": 0, "gain_dbi": 1}, {"angle_deg": 360, "gain_dbi": 2}])");
    CHECK_THROWS_AS(load_pattern_file(out_of_range), ConfigError);

    const fs::path no_zero = temp_file("pattern_nozero.json",
                                       R"([{"angle_deg": 5, "gain_dbi": 1}])");
    CHECK_THROWS_AS(load_pattern_file(no_zero), ConfigError);

    const fs::path not_array = temp_file("pattern_obj.json", R"({"angle_deg": 0})");
    CHECK_THROWS_AS(load_pattern_file(not_array), ConfigError);
}

TEST_CASE("missing or malformed config files produce named diagnostics") {
    CHECK_THROWS_AS(parse_scenario_config("/nonexistent/config.json"), ConfigError);
    const fs::path bad = temp_file("bad_config.json", "{ this is not json");
    try {
        parse_scenario_config(bad);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("malformed JSON") != std::string::npos);
    }
}

TEST_CASE("shipped scenario configs parse and match the built-in defaults") {
    const fs::path dir = SWARMOPT_CONFIG_DIR;
    const ScenarioConfig s1 = parse_scenario_config(dir / "scenario1_static.json");
    CHECK(s1 == make_default_scenario(ScenarioKind::kStatic));
    CHECK(s1.fixed_positions == default_static_positions());
    CHECK(s1.ga.population_size == 100);

    const ScenarioConfig s2 = parse_scenario_config(dir / "scenario2_fixed_area.json");
    CHECK(s2 == make_default_scenario(ScenarioKind::kFixedArea));

    const ScenarioConfig s3 = parse_scenario_config(dir / "scenario3_moving.json");
    CHECK(s3 == make_default_scenario(ScenarioKind::kMoving));
    CHECK(s3.ga.population_size == 14);
    CHECK(s3.ga.max_generations == 40);
    CHECK(s3.motion->window_s == 7.5);
    CHECK(s3.motion->speed_mps == 2.0);
}

TEST_SUITE_END();
