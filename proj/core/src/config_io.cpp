#include "swarmopt/config_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <nlohmann/json.hpp>

namespace swarmopt {

using nlohmann::json;

namespace {

std::string joined(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

void require_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path.empty() ? "config root must be a JSON object"
                                                       : path + " must be a JSON object");
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) {
                ok = true;
                break;
            }
        if (!ok) throw ConfigError("unknown key '" + joined(path, key) + "'");
    }
}

double as_double(const json& v, const std::string& path) {
    if (!v.is_number()) throw ConfigError(path + " must be a number");
    return v.get<double>();
}

int as_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw ConfigError(path + " must be an integer");
    return v.get<int>();
}

std::uint64_t as_u64(const json& v, const std::string& path) {
    if (!v.is_number_unsigned() && !v.is_number_integer())
        throw ConfigError(path + " must be a non-negative integer");
    const auto i = v.get<std::int64_t>();
    if (i < 0) throw ConfigError(path + " must be a non-negative integer");
    return static_cast<std::uint64_t>(i);
}

std::string as_string(const json& v, const std::string& path) {
    if (!v.is_string()) throw ConfigError(path + " must be a string");
    return v.get<std::string>();
}

Position parse_position(const json& v, const std::string& path) {
    require_object(v, path);
    check_keys(v, path, {"x", "y"});
    Position p;
    if (!v.contains("x") || !v.contains("y")) throw ConfigError(path + " requires both x and y");
    p.x = as_double(v.at("x"), path + ".x");
    p.y = as_double(v.at("y"), path + ".y");
    return p;
}

json position_to_json(const Position& p) { return json{{"x", p.x}, {"y", p.y}}; }

RadiationPattern pattern_from_samples(const json& arr, const std::string& path) {
    std::vector<PatternSample> samples;
    for (std::size_t k = 0; k < arr.size(); ++k) {
        const std::string spath = path + "[" + std::to_string(k) + "]";
        const json& s = arr.at(k);
        require_object(s, spath);
        check_keys(s, spath, {"angle_deg", "gain_dbi"});
        if (!s.contains("angle_deg") || !s.contains("gain_dbi"))
            throw ConfigError(spath + " requires angle_deg and gain_dbi");
        samples.push_back(
            {as_double(s.at("angle_deg"), spath + ".angle_deg"), as_double(s.at("gain_dbi"), spath + ".gain_dbi")});
    }
    try {
        return RadiationPattern(std::move(samples));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

RadiationPattern parse_pattern(const json& v, const std::string& path,
                               const std::filesystem::path& base_dir) {
    if (v.is_string()) {
        const std::string name = v.get<std::string>();
        if (name == "default") return RadiationPattern::default_directional();
        if (name == "omni") return RadiationPattern::omni();
        throw ConfigError(path + ": unknown pattern name '" + name + "' (use \"default\", \"omni\", a sample array, or {\"file\": ...})");
    }
    if (v.is_array()) return pattern_from_samples(v, path);
    if (v.is_object()) {
        check_keys(v, path, {"file"});
        if (!v.contains("file")) throw ConfigError(path + ".file is required");
        std::filesystem::path f = as_string(v.at("file"), path + ".file");
        if (f.is_relative() && !base_dir.empty()) f = base_dir / f;
        return load_pattern_file(f);
    }
    throw ConfigError(path + " must be a string, a sample array, or a {\"file\": ...} object");
}

}  // namespace

RadiationPattern load_pattern_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("pattern file not found: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("pattern file " + path.string() + ": malformed JSON: " + e.what());
    }
    if (!j.is_array()) throw ConfigError("pattern file " + path.string() + ": expected a JSON array");
    return pattern_from_samples(j, "pattern");
}

json pattern_to_json(const RadiationPattern& pattern) {
    json arr = json::array();
    for (const PatternSample& s : pattern.samples())
        arr.push_back(json{{"angle_deg", s.angle_deg}, {"gain_dbi", s.gain_dbi}});
    return arr;
}

std::vector<Position> default_static_positions() {
    return {{5.0, 5.0}, {45.0, 5.0}, {45.0, 35.0}, {5.0, 35.0}};
}

ScenarioConfig make_default_scenario(ScenarioKind kind) {
    ScenarioConfig cfg;
    cfg.kind = kind;
    switch (kind) {
        case ScenarioKind::kStatic:
            cfg.fixed_positions = default_static_positions();
            break;
        case ScenarioKind::kFixedArea:
            break;
        case ScenarioKind::kMoving:
            // per-window refresh forces the small GA parameterization
            cfg.motion = MotionSpec{};
            cfg.ga.population_size = 14;
            cfg.ga.max_generations = 40;
            cfg.jammer.position = {60.0, -50.0};  // ahead of the initial area
            break;
    }
    return cfg;
}

ScenarioConfig parse_scenario_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config file not found: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config file " + path.string() + ": malformed JSON: " + e.what());
    }
    return parse_scenario_json(j, path.parent_path());
}

ScenarioConfig parse_scenario_json(const json& j, const std::filesystem::path& base_dir) {
    require_object(j, "");
    check_keys(j, "",
               {"kind", "n_uav", "grid", "channel", "jammer", "pattern", "objective", "ga",
                "fixed_positions", "motion"});

    ScenarioConfig cfg;

    if (!j.contains("kind")) throw ConfigError("kind is required (static | fixed_area | moving)");
    const std::string kind = as_string(j.at("kind"), "kind");
    if (kind == "static")
        cfg.kind = ScenarioKind::kStatic;
    else if (kind == "fixed_area")
        cfg.kind = ScenarioKind::kFixedArea;
    else if (kind == "moving")
        cfg.kind = ScenarioKind::kMoving;
    else
        throw ConfigError("kind must be one of static | fixed_area | moving, got '" + kind + "'");

    if (j.contains("n_uav")) cfg.n_uav = as_int(j.at("n_uav"), "n_uav");

    if (j.contains("grid")) {
        const json& g = j.at("grid");
        require_object(g, "grid");
        check_keys(g, "grid", {"origin", "width", "height", "spacing"});
        if (g.contains("origin")) cfg.grid.origin = parse_position(g.at("origin"), "grid.origin");
        if (g.contains("width")) cfg.grid.width = as_double(g.at("width"), "grid.width");
        if (g.contains("height")) cfg.grid.height = as_double(g.at("height"), "grid.height");
        if (g.contains("spacing")) cfg.grid.spacing = as_double(g.at("spacing"), "grid.spacing");
    }

    if (j.contains("channel")) {
        const json& c = j.at("channel");
        require_object(c, "channel");
        check_keys(c, "channel",
                   {"bandwidth_hz", "tx_power_dbm", "jammer_power_dbm", "path_loss_exponent",
                    "ref_distance_m", "ref_loss_db", "noise_floor_dbm", "shadowing_sigma_db"});
        auto& ch = cfg.channel;
        if (c.contains("bandwidth_hz")) ch.bandwidth_hz = as_double(c.at("bandwidth_hz"), "channel.bandwidth_hz");
        if (c.contains("tx_power_dbm")) ch.tx_power_dbm = as_double(c.at("tx_power_dbm"), "channel.tx_power_dbm");
        if (c.contains("jammer_power_dbm"))
            ch.jammer_power_dbm = as_double(c.at("jammer_power_dbm"), "channel.jammer_power_dbm");
        if (c.contains("path_loss_exponent"))
            ch.path_loss_exponent = as_double(c.at("path_loss_exponent"), "channel.path_loss_exponent");
        if (c.contains("ref_distance_m"))
            ch.ref_distance_m = as_double(c.at("ref_distance_m"), "channel.ref_distance_m");
        if (c.contains("ref_loss_db")) ch.ref_loss_db = as_double(c.at("ref_loss_db"), "channel.ref_loss_db");
        if (c.contains("noise_floor_dbm"))
            ch.noise_floor_dbm = as_double(c.at("noise_floor_dbm"), "channel.noise_floor_dbm");
        if (c.contains("shadowing_sigma_db"))
            ch.shadowing_sigma_db = as_double(c.at("shadowing_sigma_db"), "channel.shadowing_sigma_db");
    }

    // The jammer transmit power defaults to the channel block value.
    cfg.jammer.power_dbm = cfg.channel.jammer_power_dbm;

    if (j.contains("jammer")) {
        const json& jm = j.at("jammer");
        require_object(jm, "jammer");
        check_keys(jm, "jammer", {"position", "power_dbm", "pattern"});
        if (jm.contains("position")) cfg.jammer.position = parse_position(jm.at("position"), "jammer.position");
        if (jm.contains("power_dbm")) {
            const json& p = jm.at("power_dbm");
            if (p.is_string()) {
                if (p.get<std::string>() != "off")
                    throw ConfigError("jammer.power_dbm must be a number or \"off\"");
                cfg.jammer.power_dbm = Jammer::off_power();
            } else {
                cfg.jammer.power_dbm = as_double(p, "jammer.power_dbm");
            }
        }
        if (jm.contains("pattern"))
            cfg.jammer.pattern = parse_pattern(jm.at("pattern"), "jammer.pattern", base_dir);
    }

    if (j.contains("pattern")) cfg.pattern = parse_pattern(j.at("pattern"), "pattern", base_dir);

    if (j.contains("objective")) {
        const json& o = j.at("objective");
        require_object(o, "objective");
        check_keys(o, "objective", {"alpha", "beta"});
        if (o.contains("alpha")) cfg.weights.alpha = as_double(o.at("alpha"), "objective.alpha");
        if (o.contains("beta")) cfg.weights.beta = as_double(o.at("beta"), "objective.beta");
    }

    if (j.contains("ga")) {
        const json& g = j.at("ga");
        require_object(g, "ga");
        check_keys(g, "ga",
                   {"population_size", "max_generations", "mutation_rate", "crossover_rate",
                    "tournament_size", "inner_population_size", "inner_max_generations",
                    "time_budget_s", "rng_seed", "n_threads"});
        auto& ga = cfg.ga;
        if (g.contains("population_size")) ga.population_size = as_int(g.at("population_size"), "ga.population_size");
        if (g.contains("max_generations")) ga.max_generations = as_int(g.at("max_generations"), "ga.max_generations");
        if (g.contains("mutation_rate")) ga.mutation_rate = as_double(g.at("mutation_rate"), "ga.mutation_rate");
        if (g.contains("crossover_rate")) ga.crossover_rate = as_double(g.at("crossover_rate"), "ga.crossover_rate");
        if (g.contains("tournament_size")) ga.tournament_size = as_int(g.at("tournament_size"), "ga.tournament_size");
        if (g.contains("inner_population_size"))
            ga.inner_population_size = as_int(g.at("inner_population_size"), "ga.inner_population_size");
        if (g.contains("inner_max_generations"))
            ga.inner_max_generations = as_int(g.at("inner_max_generations"), "ga.inner_max_generations");
        if (g.contains("time_budget_s")) {
            const json& t = g.at("time_budget_s");
            if (!t.is_null()) ga.time_budget_s = as_double(t, "ga.time_budget_s");
        }
        if (g.contains("rng_seed")) ga.rng_seed = as_u64(g.at("rng_seed"), "ga.rng_seed");
        if (g.contains("n_threads")) ga.n_threads = as_int(g.at("n_threads"), "ga.n_threads");
    }

    if (j.contains("fixed_positions")) {
        if (cfg.kind != ScenarioKind::kStatic)
            throw ConfigError("fixed_positions is only valid for the static scenario");
        const json& fp = j.at("fixed_positions");
        if (!fp.is_array()) throw ConfigError("fixed_positions must be an array of positions");
        cfg.fixed_positions.clear();
        for (std::size_t k = 0; k < fp.size(); ++k)
            cfg.fixed_positions.push_back(
                parse_position(fp.at(k), "fixed_positions[" + std::to_string(k) + "]"));
    } else if (cfg.kind == ScenarioKind::kStatic) {
        if (cfg.n_uav != 4)
            throw ConfigError("static scenario with n_uav != 4 requires explicit fixed_positions");
        cfg.fixed_positions = default_static_positions();
    }

    if (j.contains("motion")) {
        if (cfg.kind != ScenarioKind::kMoving)
            throw ConfigError("motion is only valid for the moving scenario");
        const json& m = j.at("motion");
        require_object(m, "motion");
        check_keys(m, "motion",
                   {"speed_mps", "heading_deg", "window_s", "n_windows", "budget_guard_fraction"});
        MotionSpec motion;
        if (m.contains("speed_mps")) motion.speed_mps = as_double(m.at("speed_mps"), "motion.speed_mps");
        if (m.contains("heading_deg")) motion.heading_deg = as_double(m.at("heading_deg"), "motion.heading_deg");
        if (m.contains("window_s")) motion.window_s = as_double(m.at("window_s"), "motion.window_s");
        if (m.contains("n_windows")) motion.n_windows = as_int(m.at("n_windows"), "motion.n_windows");
        if (m.contains("budget_guard_fraction"))
            motion.budget_guard_fraction =
                as_double(m.at("budget_guard_fraction"), "motion.budget_guard_fraction");
        cfg.motion = motion;
    }

    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

json scenario_to_json(const ScenarioConfig& cfg) {
    json j;
    switch (cfg.kind) {
        case ScenarioKind::kStatic: j["kind"] = "static"; break;
        case ScenarioKind::kFixedArea: j["kind"] = "fixed_area"; break;
        case ScenarioKind::kMoving: j["kind"] = "moving"; break;
    }
    j["n_uav"] = cfg.n_uav;
    j["grid"] = {{"origin", position_to_json(cfg.grid.origin)},
                 {"width", cfg.grid.width},
                 {"height", cfg.grid.height},
                 {"spacing", cfg.grid.spacing}};
    j["channel"] = {{"bandwidth_hz", cfg.channel.bandwidth_hz},
                    {"tx_power_dbm", cfg.channel.tx_power_dbm},
                    {"jammer_power_dbm", cfg.channel.jammer_power_dbm},
                    {"path_loss_exponent", cfg.channel.path_loss_exponent},
                    {"ref_distance_m", cfg.channel.ref_distance_m},
                    {"ref_loss_db", cfg.channel.ref_loss_db},
                    {"noise_floor_dbm", cfg.channel.noise_floor_dbm},
                    {"shadowing_sigma_db", cfg.channel.shadowing_sigma_db}};
    j["jammer"] = {{"position", position_to_json(cfg.jammer.position)},
                   {"pattern", pattern_to_json(cfg.jammer.pattern)}};
    if (cfg.jammer.is_off())
        j["jammer"]["power_dbm"] = "off";
    else
        j["jammer"]["power_dbm"] = cfg.jammer.power_dbm;
    j["pattern"] = pattern_to_json(cfg.pattern);
    j["objective"] = {{"alpha", cfg.weights.alpha}, {"beta", cfg.weights.beta}};
    j["ga"] = {{"population_size", cfg.ga.population_size},
               {"max_generations", cfg.ga.max_generations},
               {"mutation_rate", cfg.ga.mutation_rate},
               {"crossover_rate", cfg.ga.crossover_rate},
               {"tournament_size", cfg.ga.tournament_size},
               {"inner_population_size", cfg.ga.inner_population_size},
               {"inner_max_generations", cfg.ga.inner_max_generations},
               {"rng_seed", cfg.ga.rng_seed},
               {"n_threads", cfg.ga.n_threads}};
    if (cfg.ga.time_budget_s)
        j["ga"]["time_budget_s"] = *cfg.ga.time_budget_s;
    else
        j["ga"]["time_budget_s"] = nullptr;
    if (cfg.kind == ScenarioKind::kStatic) {
        json fp = json::array();
        for (const Position& p : cfg.fixed_positions) fp.push_back(position_to_json(p));
        j["fixed_positions"] = fp;
    }
    if (cfg.kind == ScenarioKind::kMoving && cfg.motion) {
        j["motion"] = {{"speed_mps", cfg.motion->speed_mps},
                       {"heading_deg", cfg.motion->heading_deg},
                       {"window_s", cfg.motion->window_s},
                       {"n_windows", cfg.motion->n_windows},
                       {"budget_guard_fraction", cfg.motion->budget_guard_fraction}};
    }
    return j;
}

}  // namespace swarmopt
