#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "avoidkit/graph.hpp"
#include "avoidkit/structure.hpp"

namespace avoidkit {

// Per-tick positions of `walkers` walkers. Walker 0 is Alice, walker 1 Bob;
// on the cycle engine walker i moves i-th within a tick.
struct Trajectory {
    EngineKind engine = EngineKind::none;
    std::uint64_t seed = 0;
    std::uint64_t graph_digest = 0;
    std::size_t walkers = 2;
    std::vector<VertexId> positions;         // tick-major, walkers entries per tick
    std::vector<std::uint64_t> block_starts;  // ascending ticks

    std::size_t ticks() const noexcept { return walkers == 0 ? 0 : positions.size() / walkers; }
    VertexId at(std::size_t t, std::size_t w) const { return positions[t * walkers + w]; }
    std::span<const VertexId> row(std::size_t t) const { return {positions.data() + t * walkers, walkers}; }
    void push(std::span<const VertexId> row) { positions.insert(positions.end(), row.begin(), row.end()); }

    bool operator==(const Trajectory&) const = default;
};

std::string format_trajectory(const Trajectory& traj);
Trajectory parse_trajectory(std::string_view text);

void write_trajectory_file(const Trajectory& traj, const std::string& path);
Trajectory read_trajectory_file(const std::string& path);

}  // namespace avoidkit
