#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "avoidkit/graph.hpp"
#include "avoidkit/lru_cache.hpp"
#include "avoidkit/rng.hpp"
#include "avoidkit/structure.hpp"
#include "avoidkit/transport.hpp"

namespace avoidkit {

inline constexpr std::size_t kDefaultCacheCapacity = 4096;

// Full resumable state of a coupling engine.
//
// Cubic and square-free engines sit at a block boundary: Alice at `alice` is
// next to move, Bob at `bob`, distance ≥ 2.
//
// The regular engine alternates rounds. Phase 0 (tick = 3q): Alice is the
// mover, `alice` = A_t, `bob` = B_t, `excluded` = E_{t+1}. Phase 1
// (tick = 3q+1): Bob is the mover, `bob` = B_t, `alice` = A_{t+1},
// `excluded` = E_{t+1}.
struct EngineState {
    EngineKind engine = EngineKind::none;
    VertexId alice = 0;
    VertexId bob = 0;
    std::optional<VertexId> excluded;
    int phase = 0;
    std::uint64_t tick = 0;
};

// T jointly planned steps. alice_steps[s] = A_{t+s+1}, bob_steps[s] = B_{t+s+1}.
struct BlockOutcome {
    std::size_t T = 0;
    std::vector<VertexId> alice_steps;
    std::vector<VertexId> bob_steps;
    std::optional<Scenario> scenario;
};

// --- cubic engine building blocks -------------------------------------------

// Perfect matching σ: N(a) → N(b) with σ(a') ∉ {a'} ∪ N(a'). Pairs are
// listed in N(a) order. Throws InternalError when none exists.
std::vector<std::pair<VertexId, VertexId>> matched_bijection(const Graph& g, VertexId a, VertexId b);

// Alice uniform on N(a), Bob = σ(a'). For scenarios S2, S3a, S4, S5.
std::pair<VertexId, VertexId> one_step_matched_coupling(const Graph& g, VertexId a, VertexId b, Rng& rng);

// One row of the two-step table: (A_{t+1}, A_{t+2} | B_{t+1}, B_{t+2}).
struct TwoStepRow {
    VertexId alice1, alice2, bob1, bob2;
    bool operator==(const TwoStepRow&) const = default;
};

// The nine equally likely rows for an S3b pair. Labels: c1 < c2, and the
// outer second neighbours sorted ascending.
std::array<TwoStepRow, 9> two_step_table(const Graph& g, VertexId a, VertexId b);
BlockOutcome two_step_table_coupling(const Graph& g, VertexId a, VertexId b, Rng& rng);

// Local picture of an S6 pair: a1, a2, b1, b2 span a K_{2,2}; ca, cb are the
// remaining neighbours of a and b.
struct K22Layout {
    VertexId a, b, a1, a2, b1, b2, ca, cb;
    VertexId partner(VertexId v) const;
};

K22Layout k22_layout(const Graph& g, VertexId a, VertexId b);

// Bob's positions for an excursion in which Alice visits `alice_path`
// (A_{t+1} .. A_{t+T}, ending in {a, b}). Bob's interior position at step s is
// the partner of Alice's position at step s+1; at s = T-1 he flips
// `final_coin` between the two vertices on his side.
std::vector<VertexId> mirror_bob_path(const K22Layout& layout, std::span<const VertexId> alice_path,
                                      bool final_coin);

BlockOutcome k22_excursion_coupling(const Graph& g, VertexId a, VertexId b, Rng& rng);

// Everything a cubic block needs for one (a, b) pair, computed once.
struct CubicPlan {
    ScenarioClass scenario;
    std::vector<std::pair<VertexId, VertexId>> matching;  // S2, S3a, S4, S5
    std::array<TwoStepRow, 9> table{};                     // S3b
    std::optional<K22Layout> layout;                       // S6
};

CubicPlan plan_cubic(const Graph& g, VertexId a, VertexId b);
BlockOutcome run_cubic_plan(const Graph& g, const CubicPlan& plan, VertexId a, VertexId b, Rng& rng);

// Dispatches on classify_scenario. Requires distance(a, b) ≥ 2.
BlockOutcome cubic_block(const Graph& g, VertexId a, VertexId b, Rng& rng);

// Cubic engine with the per-pair plan memoised.
class CubicEngine {
public:
    explicit CubicEngine(const Graph& g, std::size_t cache_capacity = kDefaultCacheCapacity);

    BlockOutcome block(VertexId a, VertexId b, Rng& rng);
    double cache_hit_rate() const { return cache_.hit_rate(); }

private:
    const Graph& g_;
    LruCache<std::uint64_t, CubicPlan> cache_;
};

// --- regular engine ----------------------------------------------------------

// E_1 uniform on N(a0). B_0 defaults to the smallest vertex outside
// N(a0) ∪ {a0}; a supplied b0 must be E_1 or outside N(a0) ∪ {a0}.
EngineState regular_init(const Graph& g, VertexId a0, std::optional<VertexId> b0, Rng& rng);

struct RoundOutcome {
    std::array<VertexId, 2> mover_path{};
    VertexId other_step = 0;
    VertexId next_excluded = 0;
    EngineState next;
};

// Checks other ≠ mover and (other ∈ N(mover) ⇒ other = excluded).
bool regular_phase_invariant(const Graph& g, VertexId mover, VertexId other, VertexId excluded);

class RegularEngine {
public:
    explicit RegularEngine(const Graph& g, std::size_t cache_capacity = kDefaultCacheCapacity);

    const RegularTransport& transport(VertexId mover, VertexId other, VertexId excluded);
    RoundOutcome round(const EngineState& state, Rng& rng);

    double cache_hit_rate() const { return cache_.hit_rate(); }
    std::size_t cache_hits() const { return cache_.hits(); }
    std::size_t cache_misses() const { return cache_.misses(); }

private:
    const Graph& g_;
    LruCache<std::uint64_t, RegularTransport> cache_;
};

// Uncached single round.
RoundOutcome regular_round(const Graph& g, const EngineState& state, Rng& rng);

// --- square-free engine ------------------------------------------------------

class SquarefreeEngine {
public:
    explicit SquarefreeEngine(const Graph& g, std::size_t cache_capacity = kDefaultCacheCapacity);

    // Returns (A_{t+1}, B_{t+1}).
    std::pair<VertexId, VertexId> step(VertexId a, VertexId b, Rng& rng);

    double cache_hit_rate() const { return cache_.hit_rate(); }

private:
    const Graph& g_;
    LruCache<std::uint64_t, SquarefreeTransport> cache_;
};

// Samples (a', b') from an already built transport.
std::pair<VertexId, VertexId> sample_squarefree(const SquarefreeTransport& t, Rng& rng);

std::pair<VertexId, VertexId> squarefree_step(const Graph& g, VertexId a, VertexId b, Rng& rng);

// --- cycle engine ------------------------------------------------------------

// Positions 0, 2, ..., 2(k-1). Throws UsageError if k > n/2 or k < 1.
std::vector<std::size_t> cycle_init(std::size_t n, std::size_t k);

// Every walker shifts by the same fair ±1 (mod n).
void cycle_sync_step(std::vector<std::size_t>& positions, std::size_t n, Rng& rng);

// Cyclic vertex order of a connected 2-regular graph starting at 0 and
// continuing through the smaller neighbour.
std::vector<VertexId> cycle_order(const Graph& g);

}  // namespace avoidkit
