#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "avoidkit/graph.hpp"

namespace avoidkit {

// Edge {a, b} whose endpoints share at least d-1 neighbors.
struct HdWitness {
    VertexId a = 0;
    VertexId b = 0;
};

// K_{2,3} with parts {a, b} and N(a)∩N(b), plus the edge {c1, c2} inside the
// larger part.
struct H3TildeWitness {
    VertexId a = 0;
    VertexId b = 0;
    VertexId c1 = 0;
    VertexId c2 = 0;
};

// 4-cycle u - c1 - v - c2 - u.
struct SquareWitness {
    VertexId u = 0;
    VertexId c1 = 0;
    VertexId v = 0;
    VertexId c2 = 0;
};

// a1, a2 ∈ N(a), b1, b2 ∈ N(b), all four cross edges present.
struct K22Witness {
    VertexId a1 = 0;
    VertexId a2 = 0;
    VertexId b1 = 0;
    VertexId b2 = 0;
    bool operator==(const K22Witness&) const = default;
};

std::optional<HdWitness> contains_Hd(const Graph& g, std::size_t d);
std::vector<Edge> closed_neighborhood_duplicates(const Graph& g);
std::optional<H3TildeWitness> contains_H3tilde(const Graph& g);
std::optional<SquareWitness> find_square(const Graph& g);
inline bool is_square_free(const Graph& g) { return !find_square(g).has_value(); }
std::optional<K22Witness> admits_K22(const Graph& g, VertexId a, VertexId b);

enum class Scenario { S1, S2, S3a, S3b, S4, S5, S6 };
inline constexpr std::size_t kScenarioCount = 7;
std::string scenario_name(Scenario s);

struct ScenarioClass {
    Scenario tag = Scenario::S1;
    // S2/S3a/S3b/S4: common neighbors (sorted). S6: a1, a2, b1, b2.
    std::vector<VertexId> witness;
};

// Requires a 3-regular graph and b ∉ {a} ∪ N(a).
ScenarioClass classify_scenario(const Graph& g, VertexId a, VertexId b);

enum class EngineKind { cycle, cubic, regular, squarefree, none };
std::string engine_name(EngineKind e);
EngineKind parse_engine(const std::string& name);

struct Verdict {
    EngineKind engine = EngineKind::none;
    // Every engine whose hypotheses hold, in preference order.
    std::vector<EngineKind> applicable;
    // Present iff engine == none.
    std::optional<std::string> obstruction;
    // Other applicable engines when more than one hypothesis holds.
    std::string note;
    bool admits(EngineKind e) const;
};

// Requires a connected graph with n >= 2; disconnected input is a UsageError.
Verdict admissibility_verdict(const Graph& g);

}  // namespace avoidkit
