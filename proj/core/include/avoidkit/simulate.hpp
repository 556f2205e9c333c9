#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "avoidkit/couplers.hpp"
#include "avoidkit/trajectory.hpp"

namespace avoidkit {

struct SimOptions {
    std::optional<VertexId> a0;
    std::optional<VertexId> b0;
    std::size_t walkers = 2;  // more than two only on the cycle engine
    std::size_t cache_capacity = kDefaultCacheCapacity;
};

struct SimSummary {
    EngineKind engine = EngineKind::none;
    std::uint64_t blocks = 0;
    std::array<std::uint64_t, kScenarioCount> scenarios{};  // cubic only
    std::size_t max_block_length = 0;
    std::uint64_t invariant_checks = 0;  // regular only
    double cache_hit_rate = 0.0;
};

struct SimResult {
    Trajectory trajectory;
    SimSummary summary;
};

// Picks the engine for `requested` (EngineKind::none means automatic). Throws
// InadmissibleError when the graph does not meet the engine's hypotheses.
EngineKind resolve_engine(const Graph& g, EngineKind requested);

// Runs at least `ticks` ticks; the last block is always completed, so the
// trajectory may run a few ticks past the target.
SimResult simulate(const Graph& g, EngineKind requested, std::uint64_t ticks, std::uint64_t seed,
                   const SimOptions& options = {});

}  // namespace avoidkit
