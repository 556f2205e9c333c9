#include "doctest.h"

#include <algorithm>
#include <functional>
#include <map>

#include "avoidkit/couplers.hpp"
#include "avoidkit/errors.hpp"
#include "avoidkit/generators.hpp"
#include "avoidkit/simulate.hpp"
#include "avoidkit/verify.hpp"
#include "fixtures.hpp"

using namespace avoidkit;

namespace {

// Avoidance for a jointly planned block from (a, b): B_s ∉ {A_s, A_{s+1}} for
// s < T, and the end pair is distinct and non-adjacent.
bool block_ok(const Graph& g, VertexId a, VertexId b, const BlockOutcome& out) {
    std::vector<VertexId> A{a}, B{b};
    A.insert(A.end(), out.alice_steps.begin(), out.alice_steps.end());
    B.insert(B.end(), out.bob_steps.begin(), out.bob_steps.end());
    if (A.size() != out.T + 1 || B.size() != out.T + 1) return false;
    for (std::size_t s = 0; s < out.T; ++s) {
        if (!g.adjacent(A[s], A[s + 1]) || !g.adjacent(B[s], B[s + 1])) return false;
        if (B[s] == A[s] || B[s] == A[s + 1]) return false;
    }
    return A[out.T] != B[out.T] && !g.adjacent(A[out.T], B[out.T]);
}

}  // namespace

TEST_CASE("S2 on K_{3,3} is a derangement") {
    const auto g = complete_bipartite_graph(3, 3);
    const auto sigma = matched_bijection(g, 0, 1);
    REQUIRE(sigma.size() == 3);
    std::set<VertexId> images;
    for (const auto& [x, y] : sigma) {
        CHECK(x != y);
        images.insert(y);
    }
    CHECK(images == std::set<VertexId>{3, 4, 5});
    Rng rng(4);
    for (int i = 0; i < 200; ++i) CHECK(block_ok(g, 0, 1, cubic_block(g, 0, 1, rng)));
}

TEST_CASE("one-step coupling on every Petersen pair") {
    const auto g = petersen_graph();
    Rng rng(9);
    for (VertexId a = 0; a < 10; ++a) {
        for (VertexId b = 0; b < 10; ++b) {
            if (a == b || g.adjacent(a, b)) continue;
            for (const auto& [x, y] : matched_bijection(g, a, b)) {
                CHECK(g.adjacent(a, x));
                CHECK(g.adjacent(b, y));
                CHECK(x != y);
                CHECK_FALSE(g.adjacent(x, y));
            }
            for (int i = 0; i < 20; ++i) {
                const auto out = cubic_block(g, a, b, rng);
                CHECK(out.T == 1);
                CHECK(out.scenario == Scenario::S4);
                CHECK(block_ok(g, a, b, out));
            }
        }
    }
}

TEST_CASE("S3b two-step table has exact marginals and avoids") {
    const auto g = fx::s3b_host();
    const auto table = two_step_table(g, 0, 1);
    std::set<std::pair<VertexId, VertexId>> alice, bob;
    for (const auto& row : table) {
        alice.emplace(row.alice1, row.alice2);
        bob.emplace(row.bob1, row.bob2);
        CHECK(row.bob1 != row.alice1);
        CHECK(row.bob1 != row.alice2);
        CHECK(row.bob2 != row.alice2);
        CHECK_FALSE(g.adjacent(row.alice2, row.bob2));
    }
    // Each row has weight 1/9, and there are exactly 9 two-step paths from
    // each start, so distinct rows mean exact SRW marginals.
    std::set<std::pair<VertexId, VertexId>> paths_a, paths_b;
    for (VertexId x : g.neighbors(0)) {
        for (VertexId y : g.neighbors(x)) paths_a.emplace(x, y);
    }
    for (VertexId x : g.neighbors(1)) {
        for (VertexId y : g.neighbors(x)) paths_b.emplace(x, y);
    }
    CHECK(alice == paths_a);
    CHECK(bob == paths_b);

    Rng rng(1);
    for (int i = 0; i < 200; ++i) {
        const auto out = two_step_table_coupling(g, 0, 1, rng);
        CHECK(out.T == 2);
        CHECK(block_ok(g, 0, 1, out));
    }
}

TEST_CASE("S6 excursions up to length 8 avoid and end apart") {
    const auto g = fx::s6_host();
    const auto L = k22_layout(g, 0, 5);
    CHECK(L.ca == 11);
    CHECK(L.cb == 6);

    std::size_t enumerated = 0;
    std::function<void(std::vector<VertexId>&)> grow = [&](std::vector<VertexId>& path) {
        const auto last = path.back();
        if (last == L.a || last == L.b) {
            for (bool coin : {false, true}) {
                const auto bob = mirror_bob_path(L, path, coin);
                BlockOutcome out{path.size(), path, bob, Scenario::S6};
                CHECK(block_ok(g, L.a, L.b, out));
                ++enumerated;
            }
            return;
        }
        if (path.size() == 8) return;
        for (VertexId w : g.neighbors(last)) {
            path.push_back(w);
            grow(path);
            path.pop_back();
        }
    };
    for (VertexId start : {L.a1, L.a2}) {
        std::vector<VertexId> path{start};
        grow(path);
    }
    CHECK(enumerated > 50);

    // The two single-step branches.
    for (VertexId x : {L.b1, L.b2}) CHECK(block_ok(g, L.a, L.b, BlockOutcome{1, {L.ca}, {x}, Scenario::S6}));
    for (VertexId x : {L.a1, L.a2}) CHECK(block_ok(g, L.a, L.b, BlockOutcome{1, {x}, {L.cb}, Scenario::S6}));
}

TEST_CASE("S6 first steps are exactly uniform") {
    const auto g = fx::s6_host();
    const auto law = exact_cubic_marginals(g, 0, 5);
    const Rational third(1, 3);
    for (VertexId x : g.neighbors(0)) CHECK(law.alice.at(x) == third);
    for (VertexId y : g.neighbors(5)) CHECK(law.bob.at(y) == third);
    CHECK(law.residual.numerator() > 0);
    CHECK(law.residual < Rational(1, 100));
}

TEST_CASE("S6 block length reaches 1, 2 and 3") {
    const auto g = fx::s6_host();
    Rng rng(2024);
    std::map<std::size_t, int> lengths;
    for (int i = 0; i < 20000; ++i) {
        const auto out = k22_excursion_coupling(g, 0, 5, rng);
        CHECK(block_ok(g, 0, 5, out));
        ++lengths[out.T];
    }
    CHECK(lengths.count(1));
    CHECK(lengths.count(2));
    CHECK(lengths.count(3));
    // T = 1 has probability 2/3
    CHECK(std::abs(lengths[1] / 20000.0 - 2.0 / 3.0) < 0.02);
}

TEST_CASE("regular_init") {
    const auto g = circulant_graph(9, {1, 2});
    Rng rng(3);
    const auto s = regular_init(g, 0, std::nullopt, rng);
    CHECK(s.alice == 0);
    CHECK(s.bob == 3);
    REQUIRE(s.excluded.has_value());
    const std::set<VertexId> n0{1, 2, 7, 8};
    CHECK(n0.count(*s.excluded));
    CHECK(s.phase == 0);

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng r1(seed), r2(seed);
        const auto probe = regular_init(g, 0, std::nullopt, r1);
        // b0 equal to the excluded vertex is accepted
        const auto with_b = regular_init(g, 0, *probe.excluded, r2);
        CHECK(with_b.bob == *probe.excluded);
        Rng r3(seed);
        VertexId other = 0;
        for (VertexId v : {1u, 2u, 7u, 8u}) {
            if (v != *probe.excluded) {
                other = v;
                break;
            }
        }
        CHECK_THROWS_AS(regular_init(g, 0, other, r3), UsageError);
    }
    Rng r4(1);
    CHECK_THROWS_AS(regular_init(g, 0, 0, r4), UsageError);
}

TEST_CASE("regular engine keeps its phase invariant") {
    const auto g = circulant_graph(9, {1, 2});
    RegularEngine engine(g);
    Rng rng(17);
    auto state = regular_init(g, 0, std::nullopt, rng);
    for (int r = 0; r < 100000; ++r) {
        const auto mover = state.phase == 0 ? state.alice : state.bob;
        const auto other = state.phase == 0 ? state.bob : state.alice;
        REQUIRE(regular_phase_invariant(g, mover, other, *state.excluded));
        const auto out = engine.round(state, rng);
        CHECK(g.adjacent(mover, out.mover_path[0]));
        CHECK(g.adjacent(out.mover_path[0], out.mover_path[1]));
        CHECK(out.mover_path[0] != *state.excluded);
        CHECK(g.adjacent(other, out.other_step));
        CHECK(out.other_step != out.mover_path[0]);
        CHECK(out.other_step != out.mover_path[1]);
        CHECK(out.next.phase == 1 - state.phase);
        state = out.next;
    }
    CHECK(engine.cache_hit_rate() > 0.99);
}

TEST_CASE("regular rounds match the uncached round") {
    const auto g = circulant_graph(9, {1, 2});
    RegularEngine engine(g);
    Rng r1(5), r2(5);
    auto s1 = regular_init(g, 4, std::nullopt, r1);
    auto s2 = regular_init(g, 4, std::nullopt, r2);
    for (int i = 0; i < 1000; ++i) {
        const auto o1 = engine.round(s1, r1);
        const auto o2 = regular_round(g, s2, r2);
        CHECK(o1.mover_path == o2.mover_path);
        CHECK(o1.other_step == o2.other_step);
        s1 = o1.next;
        s2 = o2.next;
    }
}

TEST_CASE("square-free step") {
    const auto g = heawood_graph();
    SquarefreeEngine engine(g);
    Rng rng(8);
    VertexId a = 0, b = 2;
    REQUIRE_FALSE(g.adjacent(a, b));
    for (int i = 0; i < 10000; ++i) {
        const auto [a1, b1] = engine.step(a, b, rng);
        CHECK(g.adjacent(a, a1));
        CHECK(g.adjacent(b, b1));
        CHECK(a1 != b1);
        CHECK_FALSE(g.adjacent(a1, b1));
        a = a1;
        b = b1;
    }
}

TEST_CASE("square-free exact marginals") {
    const auto mixed = fx::pg23_minus_point();
    for (VertexId a = 0; a < mixed.order(); ++a) {
        for (VertexId b = a + 1; b < mixed.order(); ++b) {
            if (mixed.adjacent(a, b)) continue;
            const auto law = exact_squarefree_marginals(build_squarefree_transport(mixed, a, b));
            CHECK(is_uniform_over(law.alice, mixed.neighbors(a)));
            CHECK(is_uniform_over(law.bob, mixed.neighbors(b)));
        }
    }
}

TEST_CASE("cycle engine") {
    CHECK(cycle_init(6, 3) == std::vector<std::size_t>{0, 2, 4});
    CHECK_THROWS_AS(cycle_init(5, 3), UsageError);
    CHECK_THROWS_AS(cycle_init(6, 0), UsageError);
    CHECK_THROWS_AS(cycle_init(2, 1), UsageError);

    auto pos = cycle_init(6, 3);
    Rng rng(6);
    for (int i = 0; i < 1000; ++i) {
        const auto before = pos;
        cycle_sync_step(pos, 6, rng);
        const auto shift = (pos[0] + 6 - before[0]) % 6;
        CHECK((shift == 1 || shift == 5));
        for (std::size_t w = 0; w < 3; ++w) CHECK((pos[w] + 6 - before[w]) % 6 == shift);
    }

    const auto order = cycle_order(cycle_graph(7));
    CHECK(order.front() == 0);
    CHECK(order.size() == 7);
    CHECK_THROWS_AS(cycle_order(petersen_graph()), UsageError);
}

TEST_CASE("simulate") {
    const auto pet = petersen_graph();
    const auto r1 = simulate(pet, EngineKind::none, 5000, 11);
    const auto r2 = simulate(pet, EngineKind::none, 5000, 11);
    CHECK(r1.trajectory == r2.trajectory);
    CHECK(r1.trajectory.ticks() >= 5001);
    CHECK(r1.summary.engine == EngineKind::cubic);
    CHECK(check_avoidance(pet, r1.trajectory).empty());
    CHECK(simulate(pet, EngineKind::none, 5000, 12).trajectory != r1.trajectory);

    const auto circ = circulant_graph(9, {1, 2});
    CHECK_THROWS_AS(simulate(circ, EngineKind::cubic, 100, 1), InadmissibleError);
    CHECK_THROWS_AS(simulate(complete_graph(5), EngineKind::none, 100, 1), InadmissibleError);
    SimOptions three;
    three.walkers = 3;
    CHECK_THROWS_AS(simulate(pet, EngineKind::none, 100, 1, three), UsageError);

    const auto cyc = simulate(cycle_graph(10), EngineKind::none, 1000, 3, SimOptions{{}, {}, 5});
    CHECK(cyc.trajectory.walkers == 5);
    CHECK(check_avoidance(cycle_graph(10), cyc.trajectory).empty());

    const auto reg = simulate(circ, EngineKind::none, 3000, 2);
    CHECK(reg.summary.engine == EngineKind::regular);
    CHECK(reg.summary.invariant_checks > 0);
    CHECK(check_avoidance(circ, reg.trajectory).empty());

    const auto sf = simulate(heawood_graph(), EngineKind::squarefree, 3000, 2);
    CHECK(check_avoidance(heawood_graph(), sf.trajectory).empty());
}
