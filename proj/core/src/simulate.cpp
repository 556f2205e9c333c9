#include "avoidkit/simulate.hpp"

#include <algorithm>

#include "avoidkit/errors.hpp"

namespace avoidkit {

namespace {

VertexId default_partner(const Graph& g, VertexId a0) {
    for (VertexId v = 0; v < g.order(); ++v) {
        if (v != a0 && !g.adjacent(a0, v)) return v;
    }
    throw UsageError("no vertex at distance >= 2 from " + std::to_string(a0));
}

std::pair<VertexId, VertexId> separated_start(const Graph& g, const SimOptions& opt) {
    const VertexId a0 = opt.a0.value_or(0);
    if (!g.contains(a0)) throw UsageError("a0 out of range");
    const VertexId b0 = opt.b0 ? *opt.b0 : default_partner(g, a0);
    if (!g.contains(b0)) throw UsageError("b0 out of range");
    if (b0 == a0 || g.adjacent(a0, b0)) throw UsageError("a0 and b0 must be at distance >= 2");
    return {a0, b0};
}

void record_block(Trajectory& traj, const BlockOutcome& out) {
    for (std::size_t s = 0; s < out.T; ++s) {
        const VertexId row[2] = {out.alice_steps[s], out.bob_steps[s]};
        traj.push(row);
    }
}

void run_cubic(const Graph& g, std::uint64_t ticks, Rng& rng, const SimOptions& opt, SimResult& res) {
    auto& traj = res.trajectory;
    auto& sum = res.summary;
    auto [a, b] = separated_start(g, opt);
    const VertexId start[2] = {a, b};
    traj.push(start);
    CubicEngine engine(g, opt.cache_capacity);
    while (traj.ticks() - 1 < ticks) {
        traj.block_starts.push_back(traj.ticks() - 1);
        const auto out = engine.block(a, b, rng);
        record_block(traj, out);
        ++sum.blocks;
        ++sum.scenarios[static_cast<std::size_t>(*out.scenario)];
        sum.max_block_length = std::max(sum.max_block_length, out.T);
        a = out.alice_steps.back();
        b = out.bob_steps.back();
    }
    sum.cache_hit_rate = engine.cache_hit_rate();
}

void run_squarefree(const Graph& g, std::uint64_t ticks, Rng& rng, const SimOptions& opt, SimResult& res) {
    auto& traj = res.trajectory;
    auto [a, b] = separated_start(g, opt);
    const VertexId start[2] = {a, b};
    traj.push(start);
    SquarefreeEngine engine(g, opt.cache_capacity);
    for (std::uint64_t t = 0; t < ticks; ++t) {
        traj.block_starts.push_back(t);
        std::tie(a, b) = engine.step(a, b, rng);
        const VertexId row[2] = {a, b};
        traj.push(row);
    }
    res.summary.blocks = ticks;
    res.summary.max_block_length = ticks > 0 ? 1 : 0;
    res.summary.cache_hit_rate = engine.cache_hit_rate();
}

// Two overlapping rounds cover three ticks: from (A_t, B_t, E_{t+1}) Alice's
// round fixes A_{t+1}, A_{t+2}, B_{t+1}; Bob's round then fixes B_{t+2},
// B_{t+3}, A_{t+3}.
void run_regular(const Graph& g, std::uint64_t ticks, Rng& rng, const SimOptions& opt, SimResult& res) {
    auto& traj = res.trajectory;
    auto& sum = res.summary;
    const VertexId a0 = opt.a0.value_or(0);
    auto state = regular_init(g, a0, opt.b0, rng);
    const VertexId start[2] = {state.alice, state.bob};
    traj.push(start);
    RegularEngine engine(g, opt.cache_capacity);
    while (traj.ticks() - 1 < ticks) {
        traj.block_starts.push_back(traj.ticks() - 1);
        const auto first = engine.round(state, rng);
        const auto second = engine.round(first.next, rng);
        sum.invariant_checks += 2;
        const VertexId r1[2] = {first.mover_path[0], first.other_step};
        const VertexId r2[2] = {first.mover_path[1], second.mover_path[0]};
        const VertexId r3[2] = {second.other_step, second.mover_path[1]};
        traj.push(r1);
        traj.push(r2);
        traj.push(r3);
        ++sum.blocks;
        state = second.next;
    }
    sum.max_block_length = sum.blocks > 0 ? 3 : 0;
    sum.cache_hit_rate = engine.cache_hit_rate();
}

void run_cycle(const Graph& g, std::uint64_t ticks, Rng& rng, const SimOptions& opt, SimResult& res) {
    if (opt.a0 || opt.b0) throw UsageError("the cycle engine places walkers itself; drop a0/b0");
    auto& traj = res.trajectory;
    const auto order = cycle_order(g);
    const auto n = order.size();
    auto pos = cycle_init(n, opt.walkers);
    std::vector<VertexId> row(pos.size());
    const auto emit = [&] {
        for (std::size_t i = 0; i < pos.size(); ++i) row[i] = order[pos[i]];
        traj.push(row);
    };
    emit();
    for (std::uint64_t t = 0; t < ticks; ++t) {
        traj.block_starts.push_back(t);
        cycle_sync_step(pos, n, rng);
        emit();
    }
    res.summary.blocks = ticks;
    res.summary.max_block_length = ticks > 0 ? 1 : 0;
}

}  // namespace

EngineKind resolve_engine(const Graph& g, EngineKind requested) {
    const auto verdict = admissibility_verdict(g);
    if (requested == EngineKind::none) {
        if (verdict.engine == EngineKind::none) throw InadmissibleError("no engine applies: " + *verdict.obstruction);
        return verdict.engine;
    }
    if (!verdict.admits(requested)) {
        std::string why = verdict.obstruction ? *verdict.obstruction : "graph admits " + engine_name(verdict.engine);
        throw InadmissibleError("engine " + engine_name(requested) + " does not apply: " + why);
    }
    return requested;
}

SimResult simulate(const Graph& g, EngineKind requested, std::uint64_t ticks, std::uint64_t seed,
                   const SimOptions& options) {
    const auto engine = resolve_engine(g, requested);
    if (engine != EngineKind::cycle && options.walkers != 2) {
        throw UsageError("only the cycle engine runs more than two walkers");
    }
    SimResult res;
    res.trajectory.engine = engine;
    res.trajectory.seed = seed;
    res.trajectory.graph_digest = g.digest();
    res.trajectory.walkers = engine == EngineKind::cycle ? options.walkers : 2;
    res.summary.engine = engine;
    res.trajectory.positions.reserve((ticks + 4) * res.trajectory.walkers);

    Rng rng(seed);
    switch (engine) {
        case EngineKind::cubic:
            run_cubic(g, ticks, rng, options, res);
            break;
        case EngineKind::regular:
            run_regular(g, ticks, rng, options, res);
            break;
        case EngineKind::squarefree:
            run_squarefree(g, ticks, rng, options, res);
            break;
        case EngineKind::cycle:
            run_cycle(g, ticks, rng, options, res);
            break;
        case EngineKind::none:
            throw InternalError("unresolved engine");
    }
    return res;
}

}  // namespace avoidkit
