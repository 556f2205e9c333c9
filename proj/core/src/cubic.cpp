#include <algorithm>

#include "avoidkit/couplers.hpp"
#include "avoidkit/errors.hpp"

namespace avoidkit {

namespace {

std::uint64_t pair_key(VertexId a, VertexId b) { return (static_cast<std::uint64_t>(a) << 32) | b; }

VertexId uniform_neighbor(const Graph& g, VertexId v, Rng& rng) {
    auto nb = g.neighbors(v);
    return nb[static_cast<std::size_t>(rng.below(nb.size()))];
}

// The one element of N(v) outside {x, y}.
VertexId third_neighbor(const Graph& g, VertexId v, VertexId x, VertexId y) {
    for (VertexId w : g.neighbors(v)) {
        if (w != x && w != y) return w;
    }
    throw InternalError("vertex " + std::to_string(v) + " has no third neighbour");
}

// N(v) \ {skip}, ascending.
std::pair<VertexId, VertexId> other_two(const Graph& g, VertexId v, VertexId skip) {
    std::vector<VertexId> rest;
    for (VertexId w : g.neighbors(v)) {
        if (w != skip) rest.push_back(w);
    }
    if (rest.size() != 2) throw UsageError("vertex " + std::to_string(v) + " is not of degree 3 around the pair");
    return {rest[0], rest[1]};
}

BlockOutcome single_step(VertexId a1, VertexId b1, Scenario s) {
    return BlockOutcome{1, {a1}, {b1}, s};
}

}  // namespace

std::vector<std::pair<VertexId, VertexId>> matched_bijection(const Graph& g, VertexId a, VertexId b) {
    if (a == b || g.adjacent(a, b)) throw UsageError("matched coupling needs b ∉ {a} ∪ N(a)");
    auto na = g.neighbors(a);
    auto nb = g.neighbors(b);
    if (na.size() != nb.size()) throw UsageError("matched coupling needs deg(a) = deg(b)");
    Support support{na.size(), nb.size(), std::vector<char>(na.size() * nb.size(), 0)};
    for (std::size_t i = 0; i < na.size(); ++i) {
        for (std::size_t j = 0; j < nb.size(); ++j) {
            support.allowed[i * nb.size() + j] = (nb[j] != na[i] && !g.adjacent(nb[j], na[i])) ? 1 : 0;
        }
    }
    const std::vector<std::int64_t> ones(na.size(), 1);
    IntMatrix m;
    try {
        m = solve_transport(ones, ones, support);
    } catch (const InfeasibleError& err) {
        throw HypothesisViolation("scenario hypothesis violated at (a,b)=(" + std::to_string(a) + "," +
                                      std::to_string(b) + "): " + err.what(),
                                  err.certificate());
    }
    std::vector<std::pair<VertexId, VertexId>> sigma;
    for (std::size_t i = 0; i < na.size(); ++i) {
        for (std::size_t j = 0; j < nb.size(); ++j) {
            if (m(i, j) == 1) sigma.emplace_back(na[i], nb[j]);
        }
    }
    return sigma;
}

std::pair<VertexId, VertexId> one_step_matched_coupling(const Graph& g, VertexId a, VertexId b, Rng& rng) {
    const auto sigma = matched_bijection(g, a, b);
    return sigma[static_cast<std::size_t>(rng.below(sigma.size()))];
}

std::array<TwoStepRow, 9> two_step_table(const Graph& g, VertexId a, VertexId b) {
    const auto cls = classify_scenario(g, a, b);
    if (cls.tag != Scenario::S3b) throw UsageError("two-step table needs an S3b pair");
    const VertexId c1 = cls.witness[0];
    const VertexId c2 = cls.witness[1];
    const VertexId ap = third_neighbor(g, a, c1, c2);
    const VertexId bp = third_neighbor(g, b, c1, c2);
    const auto [app1, app2] = other_two(g, ap, a);
    const auto [bpp1, bpp2] = other_two(g, bp, b);
    return {{
        {c1, a, c2, b},
        {c1, b, c2, a},
        {c1, c2, bp, bpp1},
        {c2, a, c1, b},
        {c2, b, c1, a},
        {c2, c1, bp, bpp2},
        {ap, a, bp, b},
        {ap, app1, c1, c2},
        {ap, app2, c2, c1},
    }};
}

BlockOutcome two_step_table_coupling(const Graph& g, VertexId a, VertexId b, Rng& rng) {
    const auto table = two_step_table(g, a, b);
    const auto& row = table[static_cast<std::size_t>(rng.below(table.size()))];
    return BlockOutcome{2, {row.alice1, row.alice2}, {row.bob1, row.bob2}, Scenario::S3b};
}

VertexId K22Layout::partner(VertexId v) const {
    if (v == a1) return a2;
    if (v == a2) return a1;
    if (v == b1) return b2;
    if (v == b2) return b1;
    throw UsageError("vertex " + std::to_string(v) + " is not inside the K_{2,2}");
}

K22Layout k22_layout(const Graph& g, VertexId a, VertexId b) {
    const auto cls = classify_scenario(g, a, b);
    if (cls.tag != Scenario::S6) throw UsageError("excursion coupling needs an S6 pair");
    K22Layout L{};
    L.a = a;
    L.b = b;
    L.a1 = cls.witness[0];
    L.a2 = cls.witness[1];
    L.b1 = cls.witness[2];
    L.b2 = cls.witness[3];
    L.ca = third_neighbor(g, a, L.a1, L.a2);
    L.cb = third_neighbor(g, b, L.b1, L.b2);
    return L;
}

std::vector<VertexId> mirror_bob_path(const K22Layout& L, std::span<const VertexId> alice_path, bool final_coin) {
    const auto T = alice_path.size();
    if (T < 2) throw UsageError("an excursion has at least two steps");
    std::vector<VertexId> bob(T);
    for (std::size_t s = 1; s < T; ++s) {
        if (s + 1 < T) {
            bob[s - 1] = L.partner(alice_path[s]);
        } else {
            // Bob is on b's side at odd steps and on a's side at even steps.
            const bool b_side = s % 2 == 1;
            bob[s - 1] = b_side ? (final_coin ? L.b2 : L.b1) : (final_coin ? L.a2 : L.a1);
        }
    }
    bob[T - 1] = T % 2 == 0 ? L.b : L.a;
    return bob;
}

namespace {

BlockOutcome run_excursion(const Graph& g, const K22Layout& L, Rng& rng) {
    switch (rng.below(3)) {
        case 0:
            return single_step(L.ca, rng.coin() ? L.b2 : L.b1, Scenario::S6);
        case 1:
            return single_step(rng.coin() ? L.a2 : L.a1, L.cb, Scenario::S6);
        default: {
            std::vector<VertexId> alice;
            alice.push_back(rng.coin() ? L.a2 : L.a1);
            while (alice.back() != L.a && alice.back() != L.b) {
                alice.push_back(uniform_neighbor(g, alice.back(), rng));
            }
            auto bob = mirror_bob_path(L, alice, rng.coin());
            const auto T = alice.size();
            return BlockOutcome{T, std::move(alice), std::move(bob), Scenario::S6};
        }
    }
}

}  // namespace

BlockOutcome k22_excursion_coupling(const Graph& g, VertexId a, VertexId b, Rng& rng) {
    return run_excursion(g, k22_layout(g, a, b), rng);
}

CubicPlan plan_cubic(const Graph& g, VertexId a, VertexId b) {
    CubicPlan plan;
    plan.scenario = classify_scenario(g, a, b);
    switch (plan.scenario.tag) {
        case Scenario::S1:
            break;
        case Scenario::S3b:
            plan.table = two_step_table(g, a, b);
            break;
        case Scenario::S6:
            plan.layout = k22_layout(g, a, b);
            break;
        default:
            plan.matching = matched_bijection(g, a, b);
            break;
    }
    return plan;
}

BlockOutcome run_cubic_plan(const Graph& g, const CubicPlan& plan, VertexId a, VertexId b, Rng& rng) {
    const auto tag = plan.scenario.tag;
    switch (tag) {
        case Scenario::S1: {
            const auto a1 = uniform_neighbor(g, a, rng);
            const auto b1 = uniform_neighbor(g, b, rng);
            return single_step(a1, b1, tag);
        }
        case Scenario::S3b: {
            const auto& row = plan.table[static_cast<std::size_t>(rng.below(plan.table.size()))];
            return BlockOutcome{2, {row.alice1, row.alice2}, {row.bob1, row.bob2}, tag};
        }
        case Scenario::S6:
            return run_excursion(g, *plan.layout, rng);
        default: {
            const auto& [a1, b1] = plan.matching[static_cast<std::size_t>(rng.below(plan.matching.size()))];
            return single_step(a1, b1, tag);
        }
    }
}

BlockOutcome cubic_block(const Graph& g, VertexId a, VertexId b, Rng& rng) {
    return run_cubic_plan(g, plan_cubic(g, a, b), a, b, rng);
}

CubicEngine::CubicEngine(const Graph& g, std::size_t cache_capacity) : g_(g), cache_(cache_capacity) {}

BlockOutcome CubicEngine::block(VertexId a, VertexId b, Rng& rng) {
    const auto& plan = cache_.get_or_insert(pair_key(a, b), [&] { return plan_cubic(g_, a, b); });
    return run_cubic_plan(g_, plan, a, b, rng);
}

}  // namespace avoidkit
