#include "avoidkit/couplers.hpp"
#include "avoidkit/errors.hpp"

namespace avoidkit {

std::pair<VertexId, VertexId> sample_squarefree(const SquarefreeTransport& t, Rng& rng) {
    const auto k = t.rows.size();
    const auto l = t.cols.size();
    const auto i = static_cast<std::size_t>(rng.below(k));
    // Row i carries mass l; the column given the row has law m(i, .) / l.
    auto r = static_cast<std::int64_t>(rng.below(l));
    std::size_t j = 0;
    for (; j < l; ++j) {
        r -= t.m(i, j);
        if (r < 0) break;
    }
    if (j == l) throw InternalError("square-free transport row " + std::to_string(i) + " has too little mass");
    if (t.swapped) return {t.cols[j], t.rows[i]};
    return {t.rows[i], t.cols[j]};
}

std::pair<VertexId, VertexId> squarefree_step(const Graph& g, VertexId a, VertexId b, Rng& rng) {
    return sample_squarefree(build_squarefree_transport(g, a, b), rng);
}

SquarefreeEngine::SquarefreeEngine(const Graph& g, std::size_t cache_capacity) : g_(g), cache_(cache_capacity) {}

std::pair<VertexId, VertexId> SquarefreeEngine::step(VertexId a, VertexId b, Rng& rng) {
    const auto key = (static_cast<std::uint64_t>(a) << 32) | b;
    const auto& t = cache_.get_or_insert(key, [&] { return build_squarefree_transport(g_, a, b); });
    return sample_squarefree(t, rng);
}

}  // namespace avoidkit
