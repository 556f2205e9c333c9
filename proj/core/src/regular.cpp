#include <string>

#include "avoidkit/couplers.hpp"
#include "avoidkit/errors.hpp"

namespace avoidkit {

namespace {

std::uint64_t triple_key(VertexId mover, VertexId other, VertexId excluded) {
    return (static_cast<std::uint64_t>(mover) << 42) | (static_cast<std::uint64_t>(other) << 21) | excluded;
}

// Draws a cell with probability m / total by walking the matrix row by row.
std::pair<std::size_t, std::size_t> draw_cell(const IntMatrix& m, std::int64_t total, Rng& rng) {
    auto r = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(total)));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            r -= m(i, j);
            if (r < 0) return {i, j};
        }
    }
    throw InternalError("transport matrix mass is below its declared total");
}

RoundOutcome finish_round(const EngineState& state, const RegularTransport& t, Rng& rng) {
    const auto [row, col] = draw_cell(t.m, t.total(), rng);
    RoundOutcome out;
    out.mover_path = {t.movers[row].first_step, t.movers[row].second_step};
    out.other_step = t.others[col].step;
    out.next_excluded = t.others[col].next_excluded;
    out.next = state;
    out.next.excluded = out.next_excluded;
    if (state.phase == 0) {
        // Alice moved twice, Bob once: Bob moves next from B_{t+1}.
        out.next.alice = out.mover_path[1];
        out.next.bob = out.other_step;
        out.next.phase = 1;
        out.next.tick = state.tick + 1;
    } else {
        out.next.bob = out.mover_path[1];
        out.next.alice = out.other_step;
        out.next.phase = 0;
        out.next.tick = state.tick + 2;
    }
    return out;
}

struct RoundRoles {
    VertexId mover, other, excluded;
};

RoundRoles roles_of(const Graph& g, const EngineState& state) {
    if (state.engine != EngineKind::regular) throw UsageError("regular round needs a regular engine state");
    if (!state.excluded) throw UsageError("regular engine state has no excluded vertex");
    RoundRoles r{};
    r.mover = state.phase == 0 ? state.alice : state.bob;
    r.other = state.phase == 0 ? state.bob : state.alice;
    r.excluded = *state.excluded;
    if (!regular_phase_invariant(g, r.mover, r.other, r.excluded)) {
        throw InternalError("phase invariant broken at tick " + std::to_string(state.tick) + ": mover " +
                            std::to_string(r.mover) + ", other " + std::to_string(r.other) + ", excluded " +
                            std::to_string(r.excluded));
    }
    return r;
}

}  // namespace

EngineState regular_init(const Graph& g, VertexId a0, std::optional<VertexId> b0, Rng& rng) {
    if (!g.contains(a0)) throw UsageError("start vertex out of range");
    auto na = g.neighbors(a0);
    if (na.empty()) throw UsageError("start vertex is isolated");
    const VertexId e1 = na[static_cast<std::size_t>(rng.below(na.size()))];

    VertexId bob = 0;
    if (b0) {
        bob = *b0;
        if (!g.contains(bob)) throw UsageError("Bob's start vertex out of range");
        if (bob != e1 && (bob == a0 || g.adjacent(a0, bob))) {
            throw UsageError("Bob's start must lie outside N[a0] or equal the initial exclusion");
        }
    } else {
        bool found = false;
        for (VertexId v = 0; v < g.order(); ++v) {
            if (v != a0 && !g.adjacent(a0, v)) {
                bob = v;
                found = true;
                break;
            }
        }
        if (!found) throw UsageError("no vertex outside N[a0] to start Bob");
    }

    EngineState s;
    s.engine = EngineKind::regular;
    s.alice = a0;
    s.bob = bob;
    s.excluded = e1;
    s.phase = 0;
    s.tick = 0;
    return s;
}

bool regular_phase_invariant(const Graph& g, VertexId mover, VertexId other, VertexId excluded) {
    if (other == mover) return false;
    if (!g.adjacent(mover, excluded)) return false;
    return !g.adjacent(mover, other) || other == excluded;
}

RegularEngine::RegularEngine(const Graph& g, std::size_t cache_capacity) : g_(g), cache_(cache_capacity) {
    if (g.order() >= (1u << 21)) throw UsageError("regular engine supports at most 2^21 - 1 vertices");
}

const RegularTransport& RegularEngine::transport(VertexId mover, VertexId other, VertexId excluded) {
    return cache_.get_or_insert(triple_key(mover, other, excluded),
                                [&] { return build_regular_transport(g_, mover, other, excluded); });
}

RoundOutcome RegularEngine::round(const EngineState& state, Rng& rng) {
    const auto r = roles_of(g_, state);
    return finish_round(state, transport(r.mover, r.other, r.excluded), rng);
}

RoundOutcome regular_round(const Graph& g, const EngineState& state, Rng& rng) {
    const auto r = roles_of(g, state);
    return finish_round(state, build_regular_transport(g, r.mover, r.other, r.excluded), rng);
}

}  // namespace avoidkit
