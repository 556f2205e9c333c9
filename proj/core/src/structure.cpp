#include "avoidkit/structure.hpp"

#include <algorithm>

#include "avoidkit/errors.hpp"

namespace avoidkit {

namespace {

// For a fixed u, counts |N(u) ∩ N(v)| for every v > u reachable in two hops.
// Returns the touched v's in ascending order.
std::vector<VertexId> two_hop_partners(const Graph& g, VertexId u, std::vector<std::size_t>& counts) {
    std::vector<VertexId> touched;
    for (VertexId c : g.neighbors(u)) {
        for (VertexId v : g.neighbors(c)) {
            if (v <= u) continue;
            if (counts[v]++ == 0) touched.push_back(v);
        }
    }
    std::sort(touched.begin(), touched.end());
    return touched;
}

bool same_closed_neighborhood(const Graph& g, VertexId a, VertexId b) {
    if (!g.adjacent(a, b) || g.degree(a) != g.degree(b)) return false;
    std::vector<VertexId> ca(g.neighbors(a).begin(), g.neighbors(a).end());
    std::vector<VertexId> cb(g.neighbors(b).begin(), g.neighbors(b).end());
    ca.insert(std::lower_bound(ca.begin(), ca.end(), a), a);
    cb.insert(std::lower_bound(cb.begin(), cb.end(), b), b);
    return ca == cb;
}

}  // namespace

std::optional<HdWitness> contains_Hd(const Graph& g, std::size_t d) {
    if (d < 2) throw UsageError("contains_Hd needs d >= 2");
    for (const auto& [a, b] : g.edges()) {
        if (common_neighbor_count(g, a, b) >= d - 1) return HdWitness{a, b};
    }
    return std::nullopt;
}

std::vector<Edge> closed_neighborhood_duplicates(const Graph& g) {
    std::vector<Edge> out;
    const auto n = static_cast<VertexId>(g.order());
    for (VertexId a = 0; a < n; ++a) {
        for (VertexId b = a + 1; b < n; ++b) {
            if (same_closed_neighborhood(g, a, b)) out.emplace_back(a, b);
        }
    }
    return out;
}

std::optional<H3TildeWitness> contains_H3tilde(const Graph& g) {
    std::vector<std::size_t> counts(g.order(), 0);
    for (VertexId a = 0; a < g.order(); ++a) {
        auto partners = two_hop_partners(g, a, counts);
        std::optional<H3TildeWitness> found;
        for (VertexId b : partners) {
            if (!found && counts[b] >= 3) {
                auto common = common_neighbors(g, a, b);
                for (std::size_t i = 0; i < common.size() && !found; ++i) {
                    for (std::size_t j = i + 1; j < common.size(); ++j) {
                        if (g.adjacent(common[i], common[j])) {
                            found = H3TildeWitness{a, b, common[i], common[j]};
                            break;
                        }
                    }
                }
            }
            counts[b] = 0;
        }
        if (found) return found;
    }
    return std::nullopt;
}

std::optional<SquareWitness> find_square(const Graph& g) {
    std::vector<std::size_t> counts(g.order(), 0);
    for (VertexId u = 0; u < g.order(); ++u) {
        auto partners = two_hop_partners(g, u, counts);
        std::optional<SquareWitness> found;
        for (VertexId v : partners) {
            if (!found && counts[v] >= 2) {
                auto common = common_neighbors(g, u, v);
                found = SquareWitness{u, common[0], v, common[1]};
            }
            counts[v] = 0;
        }
        if (found) return found;
    }
    return std::nullopt;
}

std::optional<K22Witness> admits_K22(const Graph& g, VertexId a, VertexId b) {
    if (a == b || g.adjacent(a, b)) throw UsageError("admits_K22 needs distinct non-adjacent a, b");
    auto na = g.neighbors(a);
    auto nb = g.neighbors(b);
    for (std::size_t i1 = 0; i1 < na.size(); ++i1) {
        for (std::size_t i2 = i1 + 1; i2 < na.size(); ++i2) {
            const auto a1 = na[i1];
            const auto a2 = na[i2];
            for (std::size_t j1 = 0; j1 < nb.size(); ++j1) {
                const auto b1 = nb[j1];
                if (b1 == a1 || b1 == a2) continue;
                if (!g.adjacent(a1, b1) || !g.adjacent(a2, b1)) continue;
                for (std::size_t j2 = j1 + 1; j2 < nb.size(); ++j2) {
                    const auto b2 = nb[j2];
                    if (b2 == a1 || b2 == a2) continue;
                    if (g.adjacent(a1, b2) && g.adjacent(a2, b2)) return K22Witness{a1, a2, b1, b2};
                }
            }
        }
    }
    return std::nullopt;
}

std::string scenario_name(Scenario s) {
    switch (s) {
        case Scenario::S1: return "S1";
        case Scenario::S2: return "S2";
        case Scenario::S3a: return "S3a";
        case Scenario::S3b: return "S3b";
        case Scenario::S4: return "S4";
        case Scenario::S5: return "S5";
        case Scenario::S6: return "S6";
    }
    return "?";
}

ScenarioClass classify_scenario(const Graph& g, VertexId a, VertexId b) {
    if (!g.contains(a) || !g.contains(b)) throw UsageError("classify_scenario: vertex out of range");
    if (a == b || g.adjacent(a, b)) throw UsageError("classify_scenario needs b ∉ {a} ∪ N(a)");
    if (g.degree(a) != 3 || g.degree(b) != 3) throw UsageError("classify_scenario needs a 3-regular graph");

    auto common = common_neighbors(g, a, b);
    if (common.size() == 3) return {Scenario::S2, common};
    if (common.size() == 2) {
        const auto tag = g.adjacent(common[0], common[1]) ? Scenario::S3b : Scenario::S3a;
        return {tag, common};
    }
    if (auto k22 = admits_K22(g, a, b)) return {Scenario::S6, {k22->a1, k22->a2, k22->b1, k22->b2}};
    if (common.size() == 1) return {Scenario::S4, common};
    if (distance_capped(g, a, b, 4).has_value()) return {Scenario::S5, {}};
    return {Scenario::S1, {}};
}

std::string engine_name(EngineKind e) {
    switch (e) {
        case EngineKind::cycle: return "cycle";
        case EngineKind::cubic: return "cubic";
        case EngineKind::regular: return "regular";
        case EngineKind::squarefree: return "squarefree";
        case EngineKind::none: return "none";
    }
    return "none";
}

EngineKind parse_engine(const std::string& name) {
    for (auto e : {EngineKind::cycle, EngineKind::cubic, EngineKind::regular, EngineKind::squarefree,
                   EngineKind::none}) {
        if (engine_name(e) == name) return e;
    }
    throw UsageError("unknown engine '" + name + "'");
}

bool Verdict::admits(EngineKind e) const {
    return std::find(applicable.begin(), applicable.end(), e) != applicable.end();
}

Verdict admissibility_verdict(const Graph& g) {
    const auto profile = basic_profile(g);
    if (profile.n < 2) throw UsageError("admissibility_verdict needs n >= 2");
    if (!profile.connected) throw UsageError("graph is disconnected; avoidance couplings assume a connected graph");

    Verdict v;
    std::vector<std::string> obstructions;
    const auto pair_text = [](VertexId x, VertexId y) {
        return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
    };

    if (profile.regular_degree) {
        const auto d = *profile.regular_degree;
        if (d == 2) {
            v.applicable.push_back(EngineKind::cycle);
        } else if (d >= 3 && profile.n < 5) {
            obstructions.push_back("n = " + std::to_string(profile.n) + " < 5");
        } else if (d == 3) {
            if (auto w = contains_H3tilde(g)) {
                obstructions.push_back("contains H~_3 at (" + std::to_string(w->a) + "," + std::to_string(w->b) +
                                       "," + std::to_string(w->c1) + "," + std::to_string(w->c2) + ")");
            } else {
                v.applicable.push_back(EngineKind::cubic);
            }
        } else if (d >= 4) {
            if (auto w = contains_Hd(g, d)) {
                obstructions.push_back("contains H_" + std::to_string(d) + " at pair " + pair_text(w->a, w->b));
            } else {
                v.applicable.push_back(EngineKind::regular);
            }
        } else {
            obstructions.push_back("degree " + std::to_string(d) + " is too small");
        }
    }

    if (profile.min_degree >= 3) {
        if (auto sq = find_square(g)) {
            obstructions.push_back("contains a 4-cycle (" + std::to_string(sq->u) + "," + std::to_string(sq->c1) +
                                   "," + std::to_string(sq->v) + "," + std::to_string(sq->c2) + ")");
        } else {
            v.applicable.push_back(EngineKind::squarefree);
        }
    } else if (!profile.regular_degree || *profile.regular_degree != 2) {
        obstructions.push_back("minimum degree " + std::to_string(profile.min_degree) + " < 3");
    }

    if (!v.applicable.empty()) {
        v.engine = v.applicable.front();
        for (std::size_t i = 1; i < v.applicable.size(); ++i) {
            v.note += (v.note.empty() ? "also admits " : ", ") + engine_name(v.applicable[i]);
        }
    } else {
        std::string joined;
        for (const auto& o : obstructions) joined += (joined.empty() ? "" : "; ") + o;
        v.obstruction = joined.empty() ? std::string("no engine hypothesis holds") : joined;
    }
    return v;
}

}  // namespace avoidkit
