#include "avoidkit/transport.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

namespace avoidkit {

bool compatible(const Graph& g, MoverPair mover, OtherPair other) {
    if (other.step == mover.first_step || other.step == mover.second_step) return false;
    if (g.adjacent(other.step, mover.second_step) && other.next_excluded != mover.second_step) return false;
    return true;
}

void check_regular_triple(const Graph& g, VertexId a, VertexId b, VertexId e) {
    if (!g.contains(a) || !g.contains(b) || !g.contains(e)) throw UsageError("regular triple: vertex out of range");
    if (a == b) throw UsageError("regular triple needs b != a");
    if (!g.adjacent(a, e)) throw UsageError("regular triple needs e ∈ N(a)");
    if (g.adjacent(a, b) && e != b) throw UsageError("regular triple: b ∈ N(a) requires e = b");
}

std::vector<MoverPair> mover_pairs(const Graph& g, VertexId a, VertexId e) {
    std::vector<MoverPair> out;
    for (VertexId first : g.neighbors(a)) {
        if (first == e) continue;
        for (VertexId second : g.neighbors(first)) out.push_back({first, second});
    }
    return out;
}

std::vector<OtherPair> other_pairs(const Graph& g, VertexId b) {
    std::vector<OtherPair> out;
    for (VertexId step : g.neighbors(b)) {
        for (VertexId excl : g.neighbors(step)) out.push_back({step, excl});
    }
    return out;
}

std::vector<OtherPair> cmp_regular(const Graph& g, VertexId a, VertexId b, VertexId e,
                                   std::span<const MoverPair> subset) {
    check_regular_triple(g, a, b, e);
    std::vector<OtherPair> out;
    for (const auto& other : other_pairs(g, b)) {
        for (const auto& mover : subset) {
            if (compatible(g, mover, other)) {
                out.push_back(other);
                break;
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<VertexId> cmp_squarefree(const Graph& g, VertexId a, VertexId b, std::span<const VertexId> subset) {
    if (a == b || g.adjacent(a, b)) throw UsageError("cmp_squarefree needs b ∉ {a} ∪ N(a)");
    for (VertexId x : subset) {
        if (!g.adjacent(a, x)) throw UsageError("cmp_squarefree: subset must lie in N(a)");
    }
    std::vector<VertexId> out;
    for (VertexId step : g.neighbors(b)) {
        for (VertexId first : subset) {
            if (step != first && !g.adjacent(step, first)) {
                out.push_back(step);
                break;
            }
        }
    }
    return out;
}

std::int64_t IntMatrix::row_sum(std::size_t r) const {
    std::int64_t s = 0;
    for (std::size_t c = 0; c < cols_; ++c) s += (*this)(r, c);
    return s;
}

std::int64_t IntMatrix::col_sum(std::size_t c) const {
    std::int64_t s = 0;
    for (std::size_t r = 0; r < rows_; ++r) s += (*this)(r, c);
    return s;
}

std::int64_t IntMatrix::total() const { return std::accumulate(cells_.begin(), cells_.end(), std::int64_t{0}); }

namespace {

class Dinic {
public:
    explicit Dinic(std::size_t nodes) : head_(nodes), level_(nodes), cursor_(nodes) {}

    std::size_t add_edge(std::size_t from, std::size_t to, std::int64_t cap) {
        const auto id = edges_.size();
        edges_.push_back({to, cap});
        head_[from].push_back(id);
        edges_.push_back({from, 0});
        head_[to].push_back(id + 1);
        return id;
    }

    std::int64_t max_flow(std::size_t s, std::size_t t) {
        std::int64_t flow = 0;
        while (bfs(s, t)) {
            std::fill(cursor_.begin(), cursor_.end(), 0);
            while (auto pushed = dfs(s, t, std::numeric_limits<std::int64_t>::max())) flow += pushed;
        }
        return flow;
    }

    std::int64_t flow_on(std::size_t edge_id) const { return edges_[edge_id ^ 1].cap; }

    // Nodes reachable from s in the residual graph.
    std::vector<char> reachable(std::size_t s) const {
        std::vector<char> seen(head_.size(), 0);
        std::queue<std::size_t> q;
        q.push(s);
        seen[s] = 1;
        while (!q.empty()) {
            auto u = q.front();
            q.pop();
            for (auto id : head_[u]) {
                const auto& edge = edges_[id];
                if (edge.cap > 0 && !seen[edge.to]) {
                    seen[edge.to] = 1;
                    q.push(edge.to);
                }
            }
        }
        return seen;
    }

private:
    struct Arc {
        std::size_t to;
        std::int64_t cap;
    };

    bool bfs(std::size_t s, std::size_t t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<std::size_t> q;
        level_[s] = 0;
        q.push(s);
        while (!q.empty()) {
            auto u = q.front();
            q.pop();
            for (auto id : head_[u]) {
                const auto& edge = edges_[id];
                if (edge.cap > 0 && level_[edge.to] < 0) {
                    level_[edge.to] = level_[u] + 1;
                    q.push(edge.to);
                }
            }
        }
        return level_[t] >= 0;
    }

    std::int64_t dfs(std::size_t u, std::size_t t, std::int64_t limit) {
        if (u == t) return limit;
        for (auto& i = cursor_[u]; i < head_[u].size(); ++i) {
            const auto id = head_[u][i];
            auto& edge = edges_[id];
            if (edge.cap <= 0 || level_[edge.to] != level_[u] + 1) continue;
            if (auto pushed = dfs(edge.to, t, std::min(limit, edge.cap))) {
                edge.cap -= pushed;
                edges_[id ^ 1].cap += pushed;
                return pushed;
            }
        }
        return 0;
    }

    std::vector<Arc> edges_;
    std::vector<std::vector<std::size_t>> head_;
    std::vector<int> level_;
    std::vector<std::size_t> cursor_;
};

}  // namespace

IntMatrix solve_transport(std::span<const std::int64_t> supplies, std::span<const std::int64_t> demands,
                          const Support& allowed) {
    const auto rows = supplies.size();
    const auto cols = demands.size();
    if (allowed.rows != rows || allowed.cols != cols || allowed.allowed.size() != rows * cols) {
        throw UsageError("solve_transport: support shape does not match supplies x demands");
    }
    const auto total_supply = std::accumulate(supplies.begin(), supplies.end(), std::int64_t{0});
    const auto total_demand = std::accumulate(demands.begin(), demands.end(), std::int64_t{0});
    if (total_supply != total_demand) {
        throw UsageError("solve_transport: total supply " + std::to_string(total_supply) +
                         " differs from total demand " + std::to_string(total_demand));
    }
    if (std::any_of(supplies.begin(), supplies.end(), [](auto x) { return x < 0; }) ||
        std::any_of(demands.begin(), demands.end(), [](auto x) { return x < 0; })) {
        throw UsageError("solve_transport: negative supply or demand");
    }

    const std::size_t source = 0;
    const std::size_t sink = rows + cols + 1;
    Dinic net(rows + cols + 2);
    for (std::size_t r = 0; r < rows; ++r) net.add_edge(source, 1 + r, supplies[r]);
    std::vector<std::size_t> cell_edge(rows * cols, SIZE_MAX);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (allowed(r, c)) cell_edge[r * cols + c] = net.add_edge(1 + r, 1 + rows + c, total_supply);
        }
    }
    for (std::size_t c = 0; c < cols; ++c) net.add_edge(1 + rows + c, sink, demands[c]);

    const auto flow = net.max_flow(source, sink);
    if (flow < total_supply) {
        const auto seen = net.reachable(source);
        HallCertificate cert;
        for (std::size_t r = 0; r < rows; ++r) {
            if (!seen[1 + r]) continue;
            cert.rows.push_back(r);
            cert.supply += supplies[r];
        }
        std::vector<char> touched(cols, 0);
        for (auto r : cert.rows) {
            for (std::size_t c = 0; c < cols; ++c) {
                if (allowed(r, c)) touched[c] = 1;
            }
        }
        for (std::size_t c = 0; c < cols; ++c) {
            if (!touched[c]) continue;
            cert.neighbor_cols.push_back(c);
            cert.demand += demands[c];
        }
        throw InfeasibleError("transport infeasible: max flow " + std::to_string(flow) + " < " +
                                  std::to_string(total_supply) + "; " + std::to_string(cert.rows.size()) +
                                  " rows with supply " + std::to_string(cert.supply) +
                                  " reach columns with demand " + std::to_string(cert.demand),
                              std::move(cert));
    }

    IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const auto id = cell_edge[r * cols + c];
            if (id != SIZE_MAX) m(r, c) = net.flow_on(id);
        }
    }
    return m;
}

RegularTransport build_regular_transport(const Graph& g, VertexId a, VertexId b, VertexId e) {
    check_regular_triple(g, a, b, e);
    const auto d = g.degree(a);
    if (d < 2) throw UsageError("build_regular_transport needs degree >= 2");
    const auto regular_at = [&](VertexId v) { return g.degree(v) == d; };
    if (!regular_at(b)) throw UsageError("build_regular_transport: graph is not regular around (a, b)");
    for (VertexId x : g.neighbors(a)) {
        if (!regular_at(x)) throw UsageError("build_regular_transport: graph is not regular around a");
    }
    for (VertexId x : g.neighbors(b)) {
        if (!regular_at(x)) throw UsageError("build_regular_transport: graph is not regular around b");
    }

    RegularTransport t;
    t.a = a;
    t.b = b;
    t.e = e;
    t.d = d;
    t.movers = mover_pairs(g, a, e);
    t.others = other_pairs(g, b);

    Support support{t.movers.size(), t.others.size(), std::vector<char>(t.movers.size() * t.others.size(), 0)};
    for (std::size_t r = 0; r < t.movers.size(); ++r) {
        for (std::size_t c = 0; c < t.others.size(); ++c) {
            support.allowed[r * support.cols + c] = compatible(g, t.movers[r], t.others[c]) ? 1 : 0;
        }
    }
    const std::vector<std::int64_t> supplies(t.movers.size(), static_cast<std::int64_t>(d));
    const std::vector<std::int64_t> demands(t.others.size(), static_cast<std::int64_t>(d - 1));
    try {
        t.m = solve_transport(supplies, demands, support);
    } catch (const InfeasibleError& err) {
        throw HypothesisViolation("hypothesis violated (H_" + std::to_string(d) + " present?) at (a,b,e)=(" +
                                      std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(e) +
                                      "): " + err.what(),
                                  err.certificate());
    }
    return t;
}

SquarefreeTransport build_squarefree_transport(const Graph& g, VertexId a, VertexId b) {
    if (!g.contains(a) || !g.contains(b)) throw UsageError("squarefree transport: vertex out of range");
    if (a == b || g.adjacent(a, b)) throw UsageError("squarefree transport needs b ∉ {a} ∪ N(a)");
    if (g.degree(a) < 3 || g.degree(b) < 3) throw UsageError("squarefree transport needs minimum degree >= 3");

    SquarefreeTransport t;
    t.a = a;
    t.b = b;
    t.swapped = g.degree(b) > g.degree(a);
    const auto mover = t.swapped ? b : a;
    const auto other = t.swapped ? a : b;
    t.rows.assign(g.neighbors(mover).begin(), g.neighbors(mover).end());
    t.cols.assign(g.neighbors(other).begin(), g.neighbors(other).end());
    const auto k = t.rows.size();
    const auto l = t.cols.size();

    Support support{k, l, std::vector<char>(k * l, 0)};
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < l; ++j) {
            const bool ok = t.cols[j] != t.rows[i] && !g.adjacent(t.cols[j], t.rows[i]);
            support.allowed[i * l + j] = ok ? 1 : 0;
        }
    }
    const std::vector<std::int64_t> supplies(k, static_cast<std::int64_t>(l));
    const std::vector<std::int64_t> demands(l, static_cast<std::int64_t>(k));
    try {
        t.m = solve_transport(supplies, demands, support);
    } catch (const InfeasibleError& err) {
        throw HypothesisViolation("hypothesis violated (square present?) at (a,b)=(" + std::to_string(a) + "," +
                                      std::to_string(b) + "): " + err.what(),
                                  err.certificate());
    }
    return t;
}

void certify(const RegularTransport& t, const Graph& g) {
    const auto d = t.d;
    if (t.m.rows() != d * (d - 1) || t.m.cols() != d * d) {
        throw CertificationError("regular transport has wrong shape");
    }
    for (std::size_t i = 0; i + 1 < d; ++i) {
        for (std::size_t k = 0; k < d; ++k) {
            const auto s = t.m.row_sum(i * d + k);
            if (s != static_cast<std::int64_t>(d)) {
                throw CertificationError("row identity fails at (i,k)=(" + std::to_string(i) + "," +
                                         std::to_string(k) + "): sum " + std::to_string(s) + " != d");
            }
        }
    }
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t l = 0; l < d; ++l) {
            const auto s = t.m.col_sum(j * d + l);
            if (s != static_cast<std::int64_t>(d - 1)) {
                throw CertificationError("column identity fails at (j,l)=(" + std::to_string(j) + "," +
                                         std::to_string(l) + "): sum " + std::to_string(s) + " != d-1");
            }
        }
    }
    if (t.m.total() != t.total()) throw CertificationError("regular transport total != d^2(d-1)");
    for (std::size_t r = 0; r < t.m.rows(); ++r) {
        for (std::size_t c = 0; c < t.m.cols(); ++c) {
            if (t.m(r, c) < 0) throw CertificationError("negative cell in regular transport");
            if (t.m(r, c) > 0 && !compatible(g, t.movers[r], t.others[c])) {
                throw CertificationError("support on incompatible cell (" + std::to_string(r) + "," +
                                         std::to_string(c) + ")");
            }
        }
    }
}

void certify(const SquarefreeTransport& t, const Graph& g) {
    const auto k = t.rows.size();
    const auto l = t.cols.size();
    if (k < l) throw CertificationError("squarefree transport rows must be the larger side");
    if (t.m.rows() != k || t.m.cols() != l) throw CertificationError("squarefree transport has wrong shape");
    for (std::size_t i = 0; i < k; ++i) {
        if (t.m.row_sum(i) != static_cast<std::int64_t>(l)) {
            throw CertificationError("row identity fails at i=" + std::to_string(i));
        }
    }
    for (std::size_t j = 0; j < l; ++j) {
        if (t.m.col_sum(j) != static_cast<std::int64_t>(k)) {
            throw CertificationError("column identity fails at j=" + std::to_string(j));
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < l; ++j) {
            if (t.m(i, j) < 0) throw CertificationError("negative cell in squarefree transport");
            if (t.m(i, j) > 0 && (t.cols[j] == t.rows[i] || g.adjacent(t.cols[j], t.rows[i]))) {
                throw CertificationError("support on a colliding cell (" + std::to_string(i) + "," +
                                         std::to_string(j) + ")");
            }
        }
    }
}

std::string format_matrix(const IntMatrix& m) {
    std::ostringstream out;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? " " : "") << m(r, c);
        out << " | " << m.row_sum(r) << '\n';
    }
    out << std::string(m.cols() * 2, '-') << '\n';
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? " " : "") << m.col_sum(c);
    out << '\n';
    return out.str();
}

}  // namespace avoidkit
