#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace avoidkit {

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

// Immutable simple undirected graph on vertices [0, n). Adjacency lists are
// sorted and duplicate-free, so every iteration order is deterministic.
class Graph {
public:
    Graph() = default;

    // Builds from an edge list. Throws UsageError on loops or out-of-range
    // endpoints; duplicate edges are merged and counted.
    Graph(std::size_t n, std::span<const Edge> edges);

    std::size_t order() const noexcept { return adjacency_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }
    std::size_t degree(VertexId v) const { return adjacency_[v].size(); }
    std::span<const VertexId> neighbors(VertexId v) const { return adjacency_[v]; }
    bool adjacent(VertexId u, VertexId v) const;
    bool contains(VertexId v) const noexcept { return v < adjacency_.size(); }

    // Edges with u < v, sorted lexicographically.
    std::vector<Edge> edges() const;

    // Number of duplicate edges dropped during construction.
    std::size_t duplicates_merged() const noexcept { return duplicates_; }

    // 64-bit FNV-1a of the canonical edge-list serialization.
    std::uint64_t digest() const;

private:
    std::vector<std::vector<VertexId>> adjacency_;
    std::size_t edge_count_ = 0;
    std::size_t duplicates_ = 0;
};

// Multigraph with loops, as produced by the configuration model.
// Each stored edge is one matched half-edge pair, endpoints ordered u <= v.
struct Multigraph {
    std::size_t n = 0;
    std::vector<Edge> edges;

    std::size_t loop_count() const;
    // Number of edge slots that repeat an earlier slot's endpoints.
    std::size_t multi_edge_count() const;
    bool is_simple() const { return loop_count() == 0 && multi_edge_count() == 0; }
    // Underlying simple graph: loops dropped, parallel edges merged.
    Graph simple_support() const;
};

struct ParsedGraph {
    Graph graph;
    std::size_t duplicates = 0;
};

ParsedGraph parse_graph(std::string_view text);
ParsedGraph read_graph_file(const std::string& path);

// Canonical edge-list document: "n m\n" then "u v\n" per edge, u < v, sorted.
std::string format_graph(const Graph& g);
void write_graph_file(const Graph& g, const std::string& path);

struct Profile {
    std::size_t n = 0;
    std::size_t edge_count = 0;
    std::size_t min_degree = 0;
    std::size_t max_degree = 0;
    std::optional<std::size_t> regular_degree;
    bool connected = true;
};

Profile basic_profile(const Graph& g);

// BFS distance from u to v if it is below cap, otherwise nullopt ("≥ cap").
std::optional<std::size_t> distance_capped(const Graph& g, VertexId u, VertexId v, std::size_t cap);

// N(u) ∩ N(v), sorted. u == v is a UsageError.
std::vector<VertexId> common_neighbors(const Graph& g, VertexId u, VertexId v);
std::size_t common_neighbor_count(const Graph& g, VertexId u, VertexId v);

std::string to_hex(std::uint64_t value);

}  // namespace avoidkit
