#include "swarmopt/geometry.hpp"

#include <cmath>
#include <string>

namespace swarmopt {

double distance(const Position& a, const Position& b) {
    return std::hypot(b.x - a.x, b.y - a.y);
}

double normalize_deg(double angle_deg) {
    double a = std::fmod(angle_deg, 360.0);
    if (a < 0.0) a += 360.0;
    if (a >= 360.0) a = 0.0;  // fmod can round up to 360 for tiny negatives
    return a;
}

double bearing_deg(const Position& from, const Position& to) {
    const double dx = to.x - from.x;
    const double dy = to.y - from.y;
    if (dx == 0.0 && dy == 0.0) {
        throw std::domain_error("bearing_deg: coincident points (" + std::to_string(from.x) + ", " +
                                std::to_string(from.y) + ")");
    }
    return normalize_deg(std::atan2(dy, dx) * 180.0 / M_PI);
}

namespace {

bool is_multiple(double value, double step) {
    const double q = value / step;
    return std::abs(q - std::round(q)) <= 1e-9 * std::max(1.0, std::abs(q));
}

}  // namespace

void GridSpec::validate() const {
    if (!(spacing > 0.0)) throw std::invalid_argument("grid.spacing must be > 0");
    if (!(width > 0.0)) throw std::invalid_argument("grid.width must be > 0");
    if (!(height > 0.0)) throw std::invalid_argument("grid.height must be > 0");
    if (!is_multiple(width, spacing))
        throw std::invalid_argument("grid.width must be an integer multiple of grid.spacing");
    if (!is_multiple(height, spacing))
        throw std::invalid_argument("grid.height must be an integer multiple of grid.spacing");
    if (!std::isfinite(origin.x) || !std::isfinite(origin.y))
        throw std::invalid_argument("grid.origin must be finite");
}

int GridSpec::cols() const { return static_cast<int>(std::round(width / spacing)) + 1; }

int GridSpec::rows() const { return static_cast<int>(std::round(height / spacing)) + 1; }

std::size_t GridSpec::point_count() const {
    return static_cast<std::size_t>(cols()) * static_cast<std::size_t>(rows());
}

bool GridSpec::contains(GridIndex idx) const {
    return idx.i >= 0 && idx.i < cols() && idx.j >= 0 && idx.j < rows();
}

Position GridSpec::point(GridIndex idx) const {
    return {origin.x + idx.i * spacing, origin.y + idx.j * spacing};
}

std::vector<GridIndex> GridSpec::all_points() const {
    std::vector<GridIndex> pts;
    pts.reserve(point_count());
    for (int j = 0; j < rows(); ++j)
        for (int i = 0; i < cols(); ++i) pts.push_back({i, j});
    return pts;
}

std::vector<GridIndex> GridSpec::moore_neighbors(GridIndex idx) const {
    std::vector<GridIndex> out;
    out.reserve(8);
    for (int dj = -1; dj <= 1; ++dj) {
        for (int di = -1; di <= 1; ++di) {
            if (di == 0 && dj == 0) continue;
            GridIndex n{idx.i + di, idx.j + dj};
            if (contains(n)) out.push_back(n);
        }
    }
    return out;
}

}  // namespace swarmopt
