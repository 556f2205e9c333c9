#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "avoidkit/graph.hpp"

namespace avoidkit {

enum class Family {
    cycle,
    complete,
    complete_bipartite,
    petersen,
    heawood,
    circulant,
    configuration_model,
    random_regular,
};

Family parse_family(const std::string& name);
std::string family_name(Family f);

struct GenSpec {
    Family family = Family::cycle;
    std::size_t n = 0;                   // order; for complete_bipartite the first part
    std::size_t q = 0;                   // complete_bipartite second part
    std::size_t d = 0;                   // degree for the random families
    std::vector<std::size_t> offsets;    // circulant connection set
    std::uint64_t seed = 0;
    bool connected = false;              // random_regular only
    std::size_t rejection_budget = 100000;
};

Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);
Graph complete_bipartite_graph(std::size_t p, std::size_t q);
// Outer 5-cycle 0..4, inner pentagram 5..9, spokes i ~ i+5.
Graph petersen_graph();
// Incidence graph of the Fano plane: 14-cycle with chords i ~ i+5 for even i.
Graph heawood_graph();
// C_n(S): i ~ i ± s (mod n) for every s in S.
Graph circulant_graph(std::size_t n, const std::vector<std::size_t>& offsets);

// Deterministic families only; random families throw UsageError.
Graph generate_deterministic(const GenSpec& spec);

// Uniform perfect matching of the n·d half-edges (Fisher-Yates, then pair
// consecutive slots). Exactly n·d/2 edge slots, loops and repeats kept.
Multigraph configuration_model(std::size_t n, std::size_t d, std::uint64_t seed);

struct RegularSample {
    Graph graph;
    std::size_t rejections = 0;
};

// Rejection-samples the configuration model until simple (and connected when
// requested). Throws ResourceError once `budget` attempts are spent.
RegularSample random_regular_simple(std::size_t n, std::size_t d, std::uint64_t seed,
                                    bool connected_required, std::size_t budget = 100000);

// Any family; random families use spec.seed.
Graph generate(const GenSpec& spec);

}  // namespace avoidkit
