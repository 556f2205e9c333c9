#include "avoidkit/generators.hpp"

#include <numeric>

#include "avoidkit/errors.hpp"
#include "avoidkit/rng.hpp"

namespace avoidkit {

namespace {

struct FamilyName {
    Family family;
    const char* name;
};

constexpr FamilyName kFamilies[] = {
    {Family::cycle, "cycle"},
    {Family::complete, "complete"},
    {Family::complete_bipartite, "complete_bipartite"},
    {Family::petersen, "petersen"},
    {Family::heawood, "heawood"},
    {Family::circulant, "circulant"},
    {Family::configuration_model, "configuration_model"},
    {Family::random_regular, "random_regular"},
};

Multigraph configuration_model(std::size_t n, std::size_t d, Rng& rng) {
    std::vector<VertexId> slots(n * d);
    for (std::size_t i = 0; i < slots.size(); ++i) slots[i] = static_cast<VertexId>(i / d);
    for (std::size_t i = slots.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.below(i));
        std::swap(slots[i - 1], slots[j]);
    }
    Multigraph mg;
    mg.n = n;
    mg.edges.reserve(slots.size() / 2);
    for (std::size_t i = 0; i + 1 < slots.size(); i += 2) {
        auto u = slots[i];
        auto v = slots[i + 1];
        if (v < u) std::swap(u, v);
        mg.edges.emplace_back(u, v);
    }
    return mg;
}

void check_regular_params(std::size_t n, std::size_t d) {
    if (d < 1) throw UsageError("configuration model needs d >= 1");
    if ((n * d) % 2 != 0) {
        throw UsageError("n*d must be even (n=" + std::to_string(n) + ", d=" + std::to_string(d) + ")");
    }
}

}  // namespace

Family parse_family(const std::string& name) {
    for (const auto& f : kFamilies) {
        if (name == f.name) return f.family;
    }
    throw UsageError("unknown graph family '" + name + "'");
}

std::string family_name(Family family) {
    for (const auto& f : kFamilies) {
        if (family == f.family) return f.name;
    }
    return "unknown";
}

Graph cycle_graph(std::size_t n) {
    if (n < 3) throw UsageError("cycle needs n >= 3");
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        edges.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>((i + 1) % n));
    }
    return Graph(n, edges);
}

Graph complete_graph(std::size_t n) {
    if (n < 2) throw UsageError("complete graph needs n >= 2");
    std::vector<Edge> edges;
    for (VertexId u = 0; u < n; ++u) {
        for (VertexId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    }
    return Graph(n, edges);
}

Graph complete_bipartite_graph(std::size_t p, std::size_t q) {
    if (p < 1 || q < 1) throw UsageError("complete_bipartite needs p, q >= 1");
    std::vector<Edge> edges;
    for (VertexId u = 0; u < p; ++u) {
        for (std::size_t j = 0; j < q; ++j) edges.emplace_back(u, static_cast<VertexId>(p + j));
    }
    return Graph(p + q, edges);
}

Graph petersen_graph() {
    std::vector<Edge> edges;
    for (VertexId i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);
        edges.emplace_back(5 + i, 5 + (i + 2) % 5);
        edges.emplace_back(i, 5 + i);
    }
    return Graph(10, edges);
}

Graph heawood_graph() {
    std::vector<Edge> edges;
    for (VertexId i = 0; i < 14; ++i) {
        edges.emplace_back(i, (i + 1) % 14);
        if (i % 2 == 0) edges.emplace_back(i, (i + 5) % 14);
    }
    return Graph(14, edges);
}

Graph circulant_graph(std::size_t n, const std::vector<std::size_t>& offsets) {
    if (n < 3) throw UsageError("circulant needs n >= 3");
    if (offsets.empty()) throw UsageError("circulant needs a non-empty offset set");
    std::vector<Edge> edges;
    for (auto s : offsets) {
        if (s == 0 || s % n == 0) throw UsageError("circulant offsets must be nonzero mod n");
        for (std::size_t i = 0; i < n; ++i) {
            edges.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>((i + s) % n));
        }
    }
    return Graph(n, edges);
}

Graph generate_deterministic(const GenSpec& spec) {
    switch (spec.family) {
        case Family::cycle: return cycle_graph(spec.n);
        case Family::complete: return complete_graph(spec.n);
        case Family::complete_bipartite: return complete_bipartite_graph(spec.n, spec.q);
        case Family::petersen: return petersen_graph();
        case Family::heawood: return heawood_graph();
        case Family::circulant: return circulant_graph(spec.n, spec.offsets);
        default:
            throw UsageError("family '" + family_name(spec.family) + "' is random; use generate()");
    }
}

Multigraph configuration_model(std::size_t n, std::size_t d, std::uint64_t seed) {
    check_regular_params(n, d);
    Rng rng(seed);
    return configuration_model(n, d, rng);
}

RegularSample random_regular_simple(std::size_t n, std::size_t d, std::uint64_t seed,
                                    bool connected_required, std::size_t budget) {
    check_regular_params(n, d);
    if (d >= n) throw UsageError("random regular graph needs d < n");
    Rng rng(seed);
    RegularSample out;
    for (std::size_t attempt = 0; attempt < budget; ++attempt) {
        auto mg = configuration_model(n, d, rng);
        if (!mg.is_simple()) {
            ++out.rejections;
            continue;
        }
        Graph g = mg.simple_support();
        if (connected_required && !basic_profile(g).connected) {
            ++out.rejections;
            continue;
        }
        out.graph = std::move(g);
        return out;
    }
    throw ResourceError("rejection budget of " + std::to_string(budget) +
                        " attempts exceeded for random regular graph (n=" + std::to_string(n) +
                        ", d=" + std::to_string(d) + ")");
}

Graph generate(const GenSpec& spec) {
    switch (spec.family) {
        case Family::configuration_model:
            return configuration_model(spec.n, spec.d, spec.seed).simple_support();
        case Family::random_regular:
            return random_regular_simple(spec.n, spec.d, spec.seed, spec.connected, spec.rejection_budget).graph;
        default:
            return generate_deterministic(spec);
    }
}

}  // namespace avoidkit
