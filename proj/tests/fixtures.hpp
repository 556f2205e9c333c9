#pragma once

// Host graphs and brute-force helpers shared by the tests. Nothing here calls
// the library's detectors; the helpers are the reference the library is
// checked against.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <queue>
#include <set>
#include <vector>

#include "avoidkit/graph.hpp"
#include "avoidkit/rng.hpp"

namespace fx {

using avoidkit::Edge;
using avoidkit::Graph;
using avoidkit::VertexId;

inline Graph make(std::size_t n, std::vector<Edge> edges) { return Graph(n, edges); }

// Kneser graph K(5,2): 2-subsets of {0..4}, adjacent when disjoint.
inline Graph kneser_petersen() {
    std::vector<std::pair<int, int>> sets;
    for (int i = 0; i < 5; ++i) {
        for (int j = i + 1; j < 5; ++j) sets.emplace_back(i, j);
    }
    std::vector<Edge> edges;
    for (std::size_t x = 0; x < sets.size(); ++x) {
        for (std::size_t y = x + 1; y < sets.size(); ++y) {
            const auto [a, b] = sets[x];
            const auto [c, d] = sets[y];
            if (a != c && a != d && b != c && b != d) edges.emplace_back(x, y);
        }
    }
    return make(sets.size(), edges);
}

// Points 0..6 and lines 7..13 of the Fano plane; line i = {i, i+1, i+3} mod 7.
inline Graph fano_incidence() {
    std::vector<Edge> edges;
    for (VertexId i = 0; i < 7; ++i) {
        for (VertexId s : {0u, 1u, 3u}) edges.emplace_back((i + s) % 7, 7 + i);
    }
    return make(14, edges);
}

// Incidence graph of PG(2,3) with one point deleted. Points have degree 4;
// the four lines through the deleted point drop to degree 3. Square-free.
inline Graph pg23_minus_point() {
    std::vector<std::array<int, 3>> pts;
    for (int x = 0; x < 3; ++x) {
        for (int y = 0; y < 3; ++y) {
            for (int z = 0; z < 3; ++z) {
                if (x == 0 && y == 0 && z == 0) continue;
                // canonical representative: first nonzero coordinate is 1
                const int lead = x != 0 ? x : (y != 0 ? y : z);
                if (lead == 1) pts.push_back({x, y, z});
            }
        }
    }
    // pts[0] = (0,0,1) is deleted; lines reuse the same coordinates.
    const std::size_t np = pts.size() - 1;
    std::vector<Edge> edges;
    for (std::size_t p = 1; p < pts.size(); ++p) {
        for (std::size_t l = 0; l < pts.size(); ++l) {
            const int dot = pts[p][0] * pts[l][0] + pts[p][1] * pts[l][1] + pts[p][2] * pts[l][2];
            if (dot % 3 == 0) edges.emplace_back(p - 1, np + l);
        }
    }
    return make(np + pts.size(), edges);
}

// Cubic, H~_3-free host where (0, 1) is an S3b pair: 0 and 1 share the
// adjacent neighbours 2 and 3, and their outer neighbours 4 ~ 5 are adjacent.
inline Graph s3b_host() {
    return make(10, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {0, 4}, {1, 5}, {4, 5}, {4, 6}, {5, 7},
                     {6, 8}, {6, 9}, {7, 8}, {7, 9}, {8, 9}});
}

// Cubic, H~_3-free host where (0, 5) admits K_{2,2} via {1,2} x {3,4}; two
// copies of the gadget are tied together through 0 ~ 11 and 5 ~ 6.
inline Graph s6_host() {
    std::vector<Edge> edges;
    for (VertexId base : {0u, 6u}) {
        const VertexId a = base, a1 = base + 1, a2 = base + 2, b1 = base + 3, b2 = base + 4, b = base + 5;
        for (auto e : {Edge{a, a1}, Edge{a, a2}, Edge{b, b1}, Edge{b, b2}, Edge{a1, b1}, Edge{a1, b2},
                       Edge{a2, b1}, Edge{a2, b2}}) {
            edges.push_back(e);
        }
    }
    edges.emplace_back(0, 11);
    edges.emplace_back(5, 6);
    return make(12, edges);
}

// BFS distances from s; unreachable = SIZE_MAX.
inline std::vector<std::size_t> bfs(const Graph& g, VertexId s) {
    std::vector<std::size_t> dist(g.order(), SIZE_MAX);
    std::queue<VertexId> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
        const auto u = q.front();
        q.pop();
        for (VertexId w : g.neighbors(u)) {
            if (dist[w] == SIZE_MAX) {
                dist[w] = dist[u] + 1;
                q.push(w);
            }
        }
    }
    return dist;
}

inline std::size_t girth(const Graph& g) {
    std::size_t best = SIZE_MAX;
    for (VertexId s = 0; s < g.order(); ++s) {
        std::vector<std::size_t> dist(g.order(), SIZE_MAX);
        std::vector<VertexId> parent(g.order(), 0);
        std::queue<VertexId> q;
        dist[s] = 0;
        q.push(s);
        while (!q.empty()) {
            const auto u = q.front();
            q.pop();
            for (VertexId w : g.neighbors(u)) {
                if (dist[w] == SIZE_MAX) {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    q.push(w);
                } else if (parent[u] != w) {
                    best = std::min(best, dist[u] + dist[w] + 1);
                }
            }
        }
    }
    return best;
}

inline std::set<VertexId> common(const Graph& g, VertexId u, VertexId v) {
    std::set<VertexId> out;
    for (VertexId x = 0; x < g.order(); ++x) {
        if (g.adjacent(u, x) && g.adjacent(v, x)) out.insert(x);
    }
    return out;
}

// Brute force: two vertices with ≥3 common neighbours, two of which are adjacent.
inline bool has_h3tilde(const Graph& g) {
    for (VertexId a = 0; a < g.order(); ++a) {
        for (VertexId b = a + 1; b < g.order(); ++b) {
            const auto c = common(g, a, b);
            if (c.size() < 3) continue;
            for (auto x : c) {
                for (auto y : c) {
                    if (x < y && g.adjacent(x, y)) return true;
                }
            }
        }
    }
    return false;
}

inline bool has_square(const Graph& g) {
    for (VertexId a = 0; a < g.order(); ++a) {
        for (VertexId b = a + 1; b < g.order(); ++b) {
            if (common(g, a, b).size() >= 2) return true;
        }
    }
    return false;
}

// Simple random walk of `steps` steps from `start`.
inline std::vector<VertexId> srw(const Graph& g, VertexId start, std::size_t steps, avoidkit::Rng& rng) {
    std::vector<VertexId> path{start};
    for (std::size_t i = 0; i < steps; ++i) {
        const auto nb = g.neighbors(path.back());
        path.push_back(nb[rng.below(nb.size())]);
    }
    return path;
}

}  // namespace fx
