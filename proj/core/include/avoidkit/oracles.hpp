#pragma once

#include <cstdint>
#include <vector>

#include "avoidkit/graph.hpp"
#include "avoidkit/transport.hpp"

namespace avoidkit {

inline constexpr std::size_t kMaxOracleSubsetBits = 20;

// Exhaustive check of d·|A0| ≤ (d−1)·|cmp(A0)| over every A0 ⊆ 𝒜 for the
// triple (a, b, e). The worst subset minimises (d−1)|cmp| − d|A0|.
struct Lemma34Result {
    bool holds = true;
    std::uint64_t subsets = 0;
    std::vector<MoverPair> worst_subset;
    std::int64_t worst_slack = 0;  // (d−1)|cmp| − d|A0| at the worst subset
    std::size_t worst_cmp = 0;
};

Lemma34Result lemma34_oracle(const Graph& g, VertexId a, VertexId b, VertexId e);

// Exhaustive check of ℓ·|N0| ≤ k·|cmp(N0)| over every N0 ⊆ N(a), where
// k = deg(a) and ℓ = deg(b).
struct Lemma42Result {
    bool holds = true;
    std::uint64_t subsets = 0;
    std::vector<VertexId> worst_subset;
    std::int64_t worst_slack = 0;  // k|cmp| − ℓ|N0| at the worst subset
    std::size_t worst_cmp = 0;
};

Lemma42Result lemma42_oracle(const Graph& g, VertexId a, VertexId b);

// The three equivalent forms of H_d-freeness for a d-regular graph, each
// evaluated on its own.
struct Lemma31Result {
    bool hd_free = true;              // no edge whose ends share d−1 neighbours
    bool closed_neighborhoods_distinct = true;
    bool differences_nonempty = true;  // N(a) \ (N(b) ∪ {b}) ≠ ∅ whenever N(a) ≠ N(b)
    bool agree() const {
        return hd_free == closed_neighborhoods_distinct && hd_free == differences_nonempty;
    }
};

Lemma31Result lemma31_equivalence(const Graph& g, std::size_t d);

// Every (b, e) making (a, b, e) a valid regular triple: b ∉ N[a] with any
// e ∈ N(a), and b ∈ N(a) with e = b.
std::vector<std::pair<VertexId, VertexId>> valid_regular_partners(const Graph& g, VertexId a);

}  // namespace avoidkit
