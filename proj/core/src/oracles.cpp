#include "avoidkit/oracles.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "avoidkit/errors.hpp"
#include "avoidkit/structure.hpp"

namespace avoidkit {

namespace {

// Sweeps all subsets of `rows`, where row r reaches the column set
// reach[r] (bit mask). cmp of a subset is the union of its rows' masks.
struct SweepOutcome {
    std::uint64_t worst_mask = 0;
    std::int64_t worst_slack = std::numeric_limits<std::int64_t>::max();
    std::size_t worst_cmp = 0;
};

SweepOutcome sweep(const std::vector<std::uint64_t>& reach, std::int64_t row_weight, std::int64_t col_weight) {
    const std::size_t R = reach.size();
    const std::uint64_t count = std::uint64_t{1} << R;
    std::vector<std::uint64_t> cmp(count, 0);
    SweepOutcome out;
    for (std::uint64_t s = 0; s < count; ++s) {
        if (s != 0) {
            const auto low = static_cast<std::size_t>(std::countr_zero(s));
            cmp[s] = cmp[s & (s - 1)] | reach[low];
        }
        const auto c = static_cast<std::int64_t>(std::popcount(cmp[s]));
        const auto size = static_cast<std::int64_t>(std::popcount(s));
        const auto slack = col_weight * c - row_weight * size;
        if (slack < out.worst_slack) {
            out.worst_slack = slack;
            out.worst_mask = s;
            out.worst_cmp = static_cast<std::size_t>(c);
        }
    }
    return out;
}

}  // namespace

Lemma34Result lemma34_oracle(const Graph& g, VertexId a, VertexId b, VertexId e) {
    check_regular_triple(g, a, b, e);
    const auto d = g.degree(a);
    const auto movers = mover_pairs(g, a, e);
    const auto others = other_pairs(g, b);
    if (movers.size() > kMaxOracleSubsetBits) {
        throw UsageError("lemma34 oracle: 2^" + std::to_string(movers.size()) + " subsets exceeds the cap 2^" +
                         std::to_string(kMaxOracleSubsetBits) + "; sample subsets instead");
    }
    if (others.size() > 64) throw UsageError("lemma34 oracle: too many other-walker plans");
    std::vector<std::uint64_t> reach(movers.size(), 0);
    for (std::size_t r = 0; r < movers.size(); ++r) {
        for (std::size_t c = 0; c < others.size(); ++c) {
            if (compatible(g, movers[r], others[c])) reach[r] |= std::uint64_t{1} << c;
        }
    }
    const auto sw = sweep(reach, static_cast<std::int64_t>(d), static_cast<std::int64_t>(d) - 1);
    Lemma34Result res;
    res.subsets = std::uint64_t{1} << movers.size();
    res.worst_slack = sw.worst_slack;
    res.worst_cmp = sw.worst_cmp;
    res.holds = sw.worst_slack >= 0;
    for (std::size_t r = 0; r < movers.size(); ++r) {
        if (sw.worst_mask >> r & 1) res.worst_subset.push_back(movers[r]);
    }
    return res;
}

Lemma42Result lemma42_oracle(const Graph& g, VertexId a, VertexId b) {
    if (!g.contains(a) || !g.contains(b)) throw UsageError("lemma42 oracle: vertex out of range");
    if (a == b || g.adjacent(a, b)) throw UsageError("lemma42 oracle needs b ∉ {a} ∪ N(a)");
    const auto na = g.neighbors(a);
    const auto nb = g.neighbors(b);
    if (na.size() > kMaxOracleSubsetBits) {
        throw UsageError("lemma42 oracle: deg(a) = " + std::to_string(na.size()) + " exceeds the cap " +
                         std::to_string(kMaxOracleSubsetBits));
    }
    if (nb.size() > 64) throw UsageError("lemma42 oracle: deg(b) too large");
    std::vector<std::uint64_t> reach(na.size(), 0);
    for (std::size_t i = 0; i < na.size(); ++i) {
        for (std::size_t j = 0; j < nb.size(); ++j) {
            if (nb[j] != na[i] && !g.adjacent(nb[j], na[i])) reach[i] |= std::uint64_t{1} << j;
        }
    }
    const auto k = static_cast<std::int64_t>(na.size());
    const auto l = static_cast<std::int64_t>(nb.size());
    const auto sw = sweep(reach, l, k);
    Lemma42Result res;
    res.subsets = std::uint64_t{1} << na.size();
    res.worst_slack = sw.worst_slack;
    res.worst_cmp = sw.worst_cmp;
    res.holds = sw.worst_slack >= 0;
    for (std::size_t i = 0; i < na.size(); ++i) {
        if (sw.worst_mask >> i & 1) res.worst_subset.push_back(na[i]);
    }
    return res;
}

Lemma31Result lemma31_equivalence(const Graph& g, std::size_t d) {
    const auto prof = basic_profile(g);
    if (prof.regular_degree != d) throw UsageError("lemma31 needs a " + std::to_string(d) + "-regular graph");
    Lemma31Result res;
    res.hd_free = !contains_Hd(g, d).has_value();
    res.closed_neighborhoods_distinct = closed_neighborhood_duplicates(g).empty();
    const auto n = g.order();
    for (VertexId a = 0; a < n && res.differences_nonempty; ++a) {
        const auto na = g.neighbors(a);
        for (VertexId b = 0; b < n; ++b) {
            if (a == b) continue;
            const auto nb = g.neighbors(b);
            if (std::equal(na.begin(), na.end(), nb.begin(), nb.end())) continue;
            bool found = false;
            for (VertexId x : na) {
                if (x != b && !g.adjacent(b, x)) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                res.differences_nonempty = false;
                break;
            }
        }
    }
    return res;
}

std::vector<std::pair<VertexId, VertexId>> valid_regular_partners(const Graph& g, VertexId a) {
    std::vector<std::pair<VertexId, VertexId>> out;
    for (VertexId b = 0; b < g.order(); ++b) {
        if (b == a) continue;
        if (g.adjacent(a, b)) {
            out.emplace_back(b, b);
        } else {
            for (VertexId e : g.neighbors(a)) out.emplace_back(b, e);
        }
    }
    return out;
}

}  // namespace avoidkit
