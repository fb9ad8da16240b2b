#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace swarmopt {

/// 2D point in meters. All world coordinates are Cartesian, x east, y north.
struct Position {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Position&) const = default;
};

double distance(const Position& a, const Position& b);

/// Wraps an angle into [0, 360).
double normalize_deg(double angle_deg);

/// Angle of the vector (to - from), counterclockwise from +x, in [0, 360).
/// Throws std::domain_error for coincident points.
double bearing_deg(const Position& from, const Position& to);

/// Index of a point in a deployment-area grid.
struct GridIndex {
    int i = 0;
    int j = 0;

    bool operator==(const GridIndex&) const = default;
    auto operator<=>(const GridIndex&) const = default;
};

/// Rectangular deployment area discretized with uniform spacing.
/// Grid point (i, j) sits at origin + (i*spacing, j*spacing); both the
/// width and height must be integer multiples of the spacing, so the
/// boundary rows/columns are included.
struct GridSpec {
    Position origin;
    double width = 50.0;
    double height = 40.0;
    double spacing = 5.0;

    bool operator==(const GridSpec&) const = default;

    void validate() const;

    int cols() const;  // number of grid points along x
    int rows() const;  // number of grid points along y
    std::size_t point_count() const;

    bool contains(GridIndex idx) const;
    Position point(GridIndex idx) const;

    /// All grid indices in row-major order (j outer, i inner).
    std::vector<GridIndex> all_points() const;

    /// In-bounds Moore neighbors (the up-to-8 closest grid points).
    std::vector<GridIndex> moore_neighbors(GridIndex idx) const;
};

}  // namespace swarmopt
