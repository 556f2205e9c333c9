#include <string>

#include "avoidkit/couplers.hpp"
#include "avoidkit/errors.hpp"

namespace avoidkit {

std::vector<std::size_t> cycle_init(std::size_t n, std::size_t k) {
    if (n < 3) throw UsageError("cycle needs n >= 3");
    if (k < 1 || 2 * k > n) {
        throw UsageError("cannot place " + std::to_string(k) + " walkers on C_" + std::to_string(n) +
                         " (need 1 <= k <= n/2)");
    }
    std::vector<std::size_t> pos(k);
    for (std::size_t i = 0; i < k; ++i) pos[i] = 2 * i;
    return pos;
}

void cycle_sync_step(std::vector<std::size_t>& positions, std::size_t n, Rng& rng) {
    const std::size_t shift = rng.coin() ? 1 : n - 1;
    for (auto& p : positions) p = (p + shift) % n;
}

std::vector<VertexId> cycle_order(const Graph& g) {
    const auto prof = basic_profile(g);
    if (prof.regular_degree != 2 || !prof.connected) throw UsageError("cycle_order needs a connected 2-regular graph");
    std::vector<VertexId> order{0};
    VertexId prev = 0;
    VertexId cur = g.neighbors(0)[0];
    while (cur != 0) {
        order.push_back(cur);
        auto nb = g.neighbors(cur);
        const VertexId next = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = next;
    }
    return order;
}

}  // namespace avoidkit
