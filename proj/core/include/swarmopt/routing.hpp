#pragma once

#include <span>
#include <vector>

#include "swarmopt/channel.hpp"

namespace swarmopt {

/// Exponents of the objective OF = avg^alpha * min^beta over end-to-end
/// capacities.
struct ObjectiveWeights {
    double alpha = 1.0;
    double beta = 1.0;

    bool operator==(const ObjectiveWeights&) const = default;

    void validate() const;
};

/// Routed end-to-end capacities and the chosen paths, per ordered pair.
/// paths[i*n+j] is the node sequence from i to j (empty when unreachable or
/// i == j); e2e[i*n+j] is the bottleneck capacity of that path in bps.
struct RoutingResult {
    std::size_t n = 0;
    std::vector<double> e2e;
    std::vector<std::vector<int>> paths;

    double e2e_at(std::size_t i, std::size_t j) const { return e2e[i * n + j]; }
    const std::vector<int>& path_at(std::size_t i, std::size_t j) const { return paths[i * n + j]; }
};

/// Dijkstra edge weight: 1/C, or +inf (edge absent) for zero capacity.
double link_weight(double capacity_bps);

/// Minimum-total-inverse-capacity path for every ordered pair, reporting the
/// bottleneck (minimum link capacity) along each chosen path. Equal-weight
/// ties resolve to the lexicographically smallest node sequence. Unreachable
/// pairs get capacity 0 and an empty path.
RoutingResult shortest_paths(const CapacityMatrix& matrix);

/// Reusable buffers for the allocation-free bottleneck computation.
struct RoutingScratch {
    std::vector<double> dist;
    std::vector<double> bottleneck;
    std::vector<int> parent;
    std::vector<char> visited;
};

/// Same routing rule as shortest_paths but fills only the n*n bottleneck
/// capacities (row-major) without materializing paths. e2e_out must have
/// size n*n.
void bottleneck_capacities(const CapacityMatrix& matrix, RoutingScratch& scratch,
                           std::span<double> e2e_out);

/// OF = mean(e2e)^alpha * min(e2e)^beta over all off-diagonal ordered pairs.
double objective(const RoutingResult& routing, const ObjectiveWeights& weights);

/// Same, from a raw row-major e2e matrix.
double objective_from_e2e(std::span<const double> e2e, std::size_t n, const ObjectiveWeights& weights);

}  // namespace swarmopt
