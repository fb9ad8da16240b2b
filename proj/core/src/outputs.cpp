#include "swarmopt/outputs.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <set>
#include <sstream>

#include "swarmopt/config_io.hpp"
#include "swarmopt/version.hpp"

namespace swarmopt {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    return out;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json matrix_to_json(const CapacityMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m.at(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json e2e_to_json(const RoutingResult& r) {
    json rows = json::array();
    for (std::size_t i = 0; i < r.n; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < r.n; ++j) row.push_back(r.e2e_at(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json paths_to_json(const RoutingResult& r) {
    json rows = json::array();
    for (std::size_t i = 0; i < r.n; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < r.n; ++j) row.push_back(r.path_at(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json topology_json(const ScenarioConfig& cfg, const WindowRecord& rec) {
    json j;
    j["window"] = rec.window_index;
    j["area"] = {{"origin", json{{"x", rec.area_origin.x}, {"y", rec.area_origin.y}}},
                 {"width", cfg.grid.width},
                 {"height", cfg.grid.height},
                 {"spacing", cfg.grid.spacing}};
    j["best_of"] = rec.report.best_of;
    json uavs = json::array();
    for (std::size_t k = 0; k < rec.snapshot.uavs.size(); ++k) {
        const UavState& u = rec.snapshot.uavs[k];
        uavs.push_back(json{{"id", k}, {"x", u.position.x}, {"y", u.position.y}, {"beam_deg", u.beam_deg}});
    }
    j["uavs"] = std::move(uavs);
    j["jammer"] = {{"x", cfg.jammer.position.x}, {"y", cfg.jammer.position.y}};
    if (cfg.jammer.is_off())
        j["jammer"]["power_dbm"] = "off";
    else
        j["jammer"]["power_dbm"] = cfg.jammer.power_dbm;
    j["capacity_bps"] = matrix_to_json(rec.snapshot.capacity);
    j["e2e_bps"] = e2e_to_json(rec.snapshot.routing);
    j["paths"] = paths_to_json(rec.snapshot.routing);
    return j;
}

// Static plot of the deployment area, grid, UAVs with beam arrows, routed
// links and the jammer.
std::string topology_svg(const ScenarioConfig& cfg, const WindowRecord& rec) {
    const double pad = 2.0 * cfg.grid.spacing;
    double x0 = rec.area_origin.x, y0 = rec.area_origin.y;
    double x1 = x0 + cfg.grid.width, y1 = y0 + cfg.grid.height;
    x0 = std::min(x0, cfg.jammer.position.x) - pad;
    y0 = std::min(y0, cfg.jammer.position.y) - pad;
    x1 = std::max(x1, cfg.jammer.position.x) + pad;
    y1 = std::max(y1, cfg.jammer.position.y) + pad;

    const double scale = 8.0;  // px per meter
    const double w = (x1 - x0) * scale;
    const double h = (y1 - y0) * scale;
    const auto X = [&](double x) { return (x - x0) * scale; };
    const auto Y = [&](double y) { return (y1 - y) * scale; };  // y up in world, down in SVG

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // deployment area + grid
    svg << "<rect x=\"" << X(rec.area_origin.x) << "\" y=\"" << Y(rec.area_origin.y + cfg.grid.height)
        << "\" width=\"" << cfg.grid.width * scale << "\" height=\"" << cfg.grid.height * scale
        << "\" fill=\"#eef4ff\" stroke=\"#7799cc\" stroke-width=\"1\"/>\n";
    GridSpec area = cfg.grid;
    area.origin = rec.area_origin;
    for (const GridIndex& gi : area.all_points()) {
        const Position p = area.point(gi);
        svg << "<circle cx=\"" << X(p.x) << "\" cy=\"" << Y(p.y) << "\" r=\"1.5\" fill=\"#b8c4d8\"/>\n";
    }

    // links used by any chosen path
    std::set<std::pair<int, int>> links;
    for (const auto& path : rec.snapshot.routing.paths)
        for (std::size_t k = 0; k + 1 < path.size(); ++k)
            links.insert({std::min(path[k], path[k + 1]), std::max(path[k], path[k + 1])});
    for (const auto& [a, b] : links) {
        const Position pa = rec.snapshot.uavs[a].position;
        const Position pb = rec.snapshot.uavs[b].position;
        svg << "<line x1=\"" << X(pa.x) << "\" y1=\"" << Y(pa.y) << "\" x2=\"" << X(pb.x) << "\" y2=\""
            << Y(pb.y) << "\" stroke=\"#88aa88\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";
    }

    // UAVs and beam arrows
    const double arrow = 0.8 * cfg.grid.spacing;
    for (std::size_t k = 0; k < rec.snapshot.uavs.size(); ++k) {
        const UavState& u = rec.snapshot.uavs[k];
        const double rad = u.beam_deg * M_PI / 180.0;
        const Position tip{u.position.x + arrow * std::cos(rad), u.position.y + arrow * std::sin(rad)};
        svg << "<line x1=\"" << X(u.position.x) << "\" y1=\"" << Y(u.position.y) << "\" x2=\"" << X(tip.x)
            << "\" y2=\"" << Y(tip.y) << "\" stroke=\"#223366\" stroke-width=\"2\"/>\n";
        for (double side : {150.0, -150.0}) {
            const double a = (u.beam_deg + side) * M_PI / 180.0;
            svg << "<line x1=\"" << X(tip.x) << "\" y1=\"" << Y(tip.y) << "\" x2=\""
                << X(tip.x + 0.3 * arrow * std::cos(a)) << "\" y2=\"" << Y(tip.y + 0.3 * arrow * std::sin(a))
                << "\" stroke=\"#223366\" stroke-width=\"2\"/>\n";
        }
        svg << "<circle cx=\"" << X(u.position.x) << "\" cy=\"" << Y(u.position.y)
            << "\" r=\"5\" fill=\"#3366cc\" stroke=\"#10204a\"/>\n";
        svg << "<text x=\"" << X(u.position.x) + 7 << "\" y=\"" << Y(u.position.y) - 7
            << "\" font-size=\"11\" font-family=\"sans-serif\">UAV" << k << "</text>\n";
    }

    // jammer
    const double jx = X(cfg.jammer.position.x), jy = Y(cfg.jammer.position.y);
    svg << "<line x1=\"" << jx - 6 << "\" y1=\"" << jy - 6 << "\" x2=\"" << jx + 6 << "\" y2=\"" << jy + 6
        << "\" stroke=\"#cc2222\" stroke-width=\"3\"/>\n";
    svg << "<line x1=\"" << jx - 6 << "\" y1=\"" << jy + 6 << "\" x2=\"" << jx + 6 << "\" y2=\"" << jy - 6
        << "\" stroke=\"#cc2222\" stroke-width=\"3\"/>\n";
    svg << "<text x=\"" << jx + 8 << "\" y=\"" << jy + 4
        << "\" font-size=\"11\" font-family=\"sans-serif\" fill=\"#cc2222\">jammer</text>\n";

    svg << "<text x=\"6\" y=\"14\" font-size=\"12\" font-family=\"sans-serif\">window " << rec.window_index
        << "  OF=" << format_double(rec.report.best_of) << "</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace

void write_run_outputs(const std::filesystem::path& out_dir, const ScenarioConfig& resolved,
                       const ScenarioResult& result, const std::string& config_path) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec && !std::filesystem::is_directory(out_dir))
        throw std::runtime_error("cannot create output directory " + out_dir.string() + ": " +
                                 ec.message());

    {
        auto csv = open_for_write(out_dir / "convergence.csv");
        csv << "window,generation,best_of,avg_of\n";
        for (const WindowRecord& rec : result.windows) {
            for (std::size_t g = 0; g < rec.report.of_history.size(); ++g) {
                csv << rec.window_index << ',' << g << ',' << format_double(rec.report.of_history[g])
                    << ',' << format_double(rec.report.avg_history[g]) << '\n';
            }
        }
    }

    for (const WindowRecord& rec : result.windows) {
        const std::string stem = "topology_" + std::to_string(rec.window_index);
        {
            auto jf = open_for_write(out_dir / (stem + ".json"));
            jf << topology_json(resolved, rec).dump(2) << '\n';
        }
        {
            auto sf = open_for_write(out_dir / (stem + ".svg"));
            sf << topology_svg(resolved, rec);
        }
    }

    json manifest;
    manifest["tool"] = "swarmopt";
    manifest["version"] = kVersion;
    manifest["config_path"] = config_path;
    manifest["rng_seed"] = resolved.ga.rng_seed;
    manifest["started_at"] = utc_timestamp();
    manifest["scenario"] = scenario_to_json(resolved);
    if (result.omni_baseline_of) manifest["omni_baseline_of"] = *result.omni_baseline_of;
    json windows = json::array();
    double total = 0.0;
    for (const WindowRecord& rec : result.windows) {
        total += rec.report.elapsed_s;
        windows.push_back(json{{"window", rec.window_index},
                               {"elapsed_s", rec.report.elapsed_s},
                               {"generations_run", rec.report.generations_run},
                               {"fitness_evaluations", rec.report.fitness_evaluations},
                               {"generation_elapsed_s", rec.report.gen_elapsed_s}});
    }
    manifest["timing"] = {{"total_s", total}, {"windows", std::move(windows)}};
    auto mf = open_for_write(out_dir / "manifest.json");
    mf << manifest.dump(2) << '\n';
}

std::vector<ConvergenceRow> read_convergence_csv(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot read " + file.string());
    std::vector<ConvergenceRow> rows;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ConvergenceRow row;
        std::istringstream ss(line);
        std::string field;
        std::getline(ss, field, ',');
        row.window = std::stoi(field);
        std::getline(ss, field, ',');
        row.generation = std::stoi(field);
        std::getline(ss, field, ',');
        row.best_of = std::stod(field);
        std::getline(ss, field, ',');
        row.avg_of = std::stod(field);
        rows.push_back(row);
    }
    return rows;
}

RunSummary read_run_summary(const std::filesystem::path& dir) {
    std::ifstream mf(dir / "manifest.json");
    if (!mf) throw std::runtime_error("not a run directory (missing manifest.json): " + dir.string());
    json manifest;
    mf >> manifest;

    RunSummary summary;
    const std::string kind = manifest.at("scenario").at("kind").get<std::string>();
    if (kind == "static")
        summary.kind = ScenarioKind::kStatic;
    else if (kind == "fixed_area")
        summary.kind = ScenarioKind::kFixedArea;
    else
        summary.kind = ScenarioKind::kMoving;

    int last = -1;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("topology_", 0) == 0 && entry.path().extension() == ".json")
            last = std::max(last, std::stoi(name.substr(9)));
    }
    if (last < 0) throw std::runtime_error("no topology_<w>.json in " + dir.string());

    std::ifstream tf(dir / ("topology_" + std::to_string(last) + ".json"));
    json topo;
    tf >> topo;
    summary.best_of = topo.at("best_of").get<double>();
    const auto& e2e = topo.at("e2e_bps");
    const std::size_t n = e2e.size();
    double sum = 0.0, mn = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double c = e2e.at(i).at(j).get<double>();
            sum += c;
            mn = std::min(mn, c);
        }
    }
    summary.avg_e2e_bps = n > 1 ? sum / static_cast<double>(n * (n - 1)) : 0.0;
    summary.min_e2e_bps = n > 1 ? mn : 0.0;
    summary.rows = read_convergence_csv(dir / "convergence.csv");
    return summary;
}

namespace {

std::string ratio_str(double a, double b) {
    if (b == 0.0) return a == 0.0 ? "nan" : "inf";
    return format_double(a / b);
}

}  // namespace

void compare_runs(const std::filesystem::path& dir_a, const std::filesystem::path& dir_b,
                  std::ostream& out) {
    const RunSummary a = read_run_summary(dir_a);
    const RunSummary b = read_run_summary(dir_b);
    if (a.kind != b.kind)
        throw std::runtime_error("compare: scenario kinds differ between " + dir_a.string() + " and " +
                                 dir_b.string());

    const char* kind = a.kind == ScenarioKind::kStatic     ? "static"
                       : a.kind == ScenarioKind::kFixedArea ? "fixed_area"
                                                            : "moving";
    out << "scenario:    " << kind << '\n';
    out << "best OF:     A=" << format_double(a.best_of) << "  B=" << format_double(b.best_of)
        << "  ratio=" << ratio_str(a.best_of, b.best_of) << '\n';
    out << "avg E2E bps: A=" << format_double(a.avg_e2e_bps) << "  B=" << format_double(b.avg_e2e_bps)
        << '\n';
    out << "min E2E bps: A=" << format_double(a.min_e2e_bps) << "  B=" << format_double(b.min_e2e_bps)
        << '\n';
    const std::size_t rows = std::min(a.rows.size(), b.rows.size());
    out << "per-generation best-OF delta (A-B), " << rows << " shared rows:\n";
    for (std::size_t k = 0; k < rows; ++k) {
        out << "  w" << a.rows[k].window << " g" << a.rows[k].generation << ": "
            << format_double(a.rows[k].best_of - b.rows[k].best_of) << '\n';
    }
}

}  // namespace swarmopt
