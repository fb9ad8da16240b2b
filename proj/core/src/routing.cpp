#include "swarmopt/routing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace swarmopt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// Walks parents back to the source; returns the node sequence source..node.
std::vector<int> reconstruct(std::span<const int> parent, int src, int node) {
    std::vector<int> path;
    for (int u = node; u != -1; u = parent[u]) path.push_back(u);
    std::reverse(path.begin(), path.end());
    if (path.front() != src) return {};  // unreachable
    return path;
}

// Lexicographic comparison of the full candidate paths src..a..tail vs
// src..b..tail. The shared tail node matters: one prefix can be a proper
// prefix of the other.
bool path_less(std::span<const int> parent, int src, int a, int b, int tail) {
    std::vector<int> pa = reconstruct(parent, src, a);
    std::vector<int> pb = reconstruct(parent, src, b);
    pa.push_back(tail);
    pb.push_back(tail);
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
}

// Dijkstra from src with deterministic tie-breaking: among equal-weight
// paths the lexicographically smallest node sequence wins. All edge weights
// are strictly positive (1/C), so every chosen path is simple.
void dijkstra(const CapacityMatrix& m, std::size_t src, RoutingScratch& s) {
    const std::size_t n = m.size();
    s.dist.assign(n, kInf);
    s.bottleneck.assign(n, 0.0);
    s.parent.assign(n, -1);
    s.visited.assign(n, 0);
    s.dist[src] = 0.0;
    s.bottleneck[src] = kInf;

    for (std::size_t round = 0; round < n; ++round) {
        std::size_t u = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (!s.visited[v] && s.dist[v] < kInf && (u == n || s.dist[v] < s.dist[u])) u = v;
        }
        if (u == n) break;
        s.visited[u] = 1;

        for (std::size_t v = 0; v < n; ++v) {
            if (s.visited[v] || v == u) continue;
            const double c = m.at(u, v);
            const double w = link_weight(c);
            if (w == kInf) continue;
            const double nd = s.dist[u] + w;
            if (nd < s.dist[v]) {
                s.dist[v] = nd;
                s.parent[v] = static_cast<int>(u);
                s.bottleneck[v] = std::min(s.bottleneck[u], c);
            } else if (nd == s.dist[v] && s.parent[v] != -1) {
                // Candidate path via u vs the incumbent via parent[v]; both
                // prefixes are final. Prefer lexicographically smaller.
                if (path_less(s.parent, static_cast<int>(src), static_cast<int>(u), s.parent[v],
                              static_cast<int>(v))) {
                    s.parent[v] = static_cast<int>(u);
                    s.bottleneck[v] = std::min(s.bottleneck[u], c);
                }
            }
        }
    }
}

}  // namespace

void ObjectiveWeights::validate() const {
    if (!(alpha >= 0.0)) throw std::invalid_argument("objective.alpha must be >= 0");
    if (!(beta >= 0.0)) throw std::invalid_argument("objective.beta must be >= 0");
    if (alpha == 0.0 && beta == 0.0)
        throw std::invalid_argument("objective.alpha and objective.beta cannot both be 0");
}

double link_weight(double capacity_bps) {
    return capacity_bps > 0.0 ? 1.0 / capacity_bps : kInf;
}

RoutingResult shortest_paths(const CapacityMatrix& matrix) {
    const std::size_t n = matrix.size();
    if (n < 2) throw std::invalid_argument("shortest_paths: need at least 2 nodes");

    RoutingResult out;
    out.n = n;
    out.e2e.assign(n * n, 0.0);
    out.paths.assign(n * n, {});

    RoutingScratch s;
    for (std::size_t src = 0; src < n; ++src) {
        dijkstra(matrix, src, s);
        for (std::size_t dst = 0; dst < n; ++dst) {
            if (dst == src) continue;
            if (s.dist[dst] == kInf) continue;  // unreachable: capacity 0, empty path
            out.e2e[src * n + dst] = s.bottleneck[dst];
            out.paths[src * n + dst] = reconstruct(s.parent, static_cast<int>(src), static_cast<int>(dst));
        }
    }
    return out;
}

void bottleneck_capacities(const CapacityMatrix& matrix, RoutingScratch& scratch,
                           std::span<double> e2e_out) {
    const std::size_t n = matrix.size();
    for (std::size_t src = 0; src < n; ++src) {
        dijkstra(matrix, src, scratch);
        for (std::size_t dst = 0; dst < n; ++dst) {
            e2e_out[src * n + dst] =
                (dst == src || scratch.dist[dst] == kInf) ? 0.0 : scratch.bottleneck[dst];
        }
    }
}

double objective(const RoutingResult& routing, const ObjectiveWeights& weights) {
    return objective_from_e2e(routing.e2e, routing.n, weights);
}

double objective_from_e2e(std::span<const double> e2e, std::size_t n, const ObjectiveWeights& weights) {
    double sum = 0.0;
    double mn = kInf;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double c = e2e[i * n + j];
            sum += c;
            mn = std::min(mn, c);
        }
    }
    const double avg = sum / static_cast<double>(n * (n - 1));
    if (mn == 0.0 && weights.beta > 0.0) return 0.0;
    return std::pow(avg, weights.alpha) * std::pow(mn, weights.beta);
}

}  // namespace swarmopt
