#include "avoidkit/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <queue>
#include <sstream>

#include "avoidkit/errors.hpp"

namespace avoidkit {

Graph::Graph(std::size_t n, std::span<const Edge> edges) : adjacency_(n) {
    for (const auto& [u, v] : edges) {
        if (u >= n || v >= n) {
            throw UsageError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                             ") has an endpoint outside [0," + std::to_string(n) + ")");
        }
        if (u == v) throw UsageError("loop at vertex " + std::to_string(u));
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
    }
    std::size_t total = 0;
    for (auto& list : adjacency_) {
        std::sort(list.begin(), list.end());
        const auto before = list.size();
        list.erase(std::unique(list.begin(), list.end()), list.end());
        duplicates_ += before - list.size();
        total += list.size();
    }
    // each dropped duplicate was counted once from each endpoint
    duplicates_ /= 2;
    edge_count_ = total / 2;
}

bool Graph::adjacent(VertexId u, VertexId v) const {
    const auto& list = adjacency_[u];
    return std::binary_search(list.begin(), list.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (VertexId u = 0; u < adjacency_.size(); ++u) {
        for (VertexId v : adjacency_[u]) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

std::uint64_t Graph::digest() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : format_graph(*this)) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::size_t Multigraph::loop_count() const {
    return static_cast<std::size_t>(
        std::count_if(edges.begin(), edges.end(), [](const Edge& e) { return e.first == e.second; }));
}

std::size_t Multigraph::multi_edge_count() const {
    auto sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    std::size_t repeats = 0;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i] == sorted[i - 1]) ++repeats;
    }
    return repeats;
}

Graph Multigraph::simple_support() const {
    std::vector<Edge> kept;
    kept.reserve(edges.size());
    for (const auto& e : edges) {
        if (e.first != e.second) kept.push_back(e);
    }
    return Graph(n, kept);
}

namespace {

bool parse_uint(std::string_view token, std::uint64_t& out) {
    if (token.empty()) return false;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    return ec == std::errc{} && ptr == token.data() + token.size();
}

// Splits on runs of spaces/tabs; a trailing '\r' is tolerated.
std::vector<std::string_view> split_fields(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) fields.push_back(line.substr(i, j - i));
        i = j;
    }
    return fields;
}

}  // namespace

ParsedGraph parse_graph(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    // drop trailing blank lines
    while (!lines.empty() && split_fields(lines.back()).empty()) lines.pop_back();
    if (lines.empty()) throw ParseError("empty document: expected header \"n m\" at line 1");

    auto header = split_fields(lines[0]);
    std::uint64_t n = 0, m = 0;
    if (header.size() != 2 || !parse_uint(header[0], n) || !parse_uint(header[1], m)) {
        throw ParseError("malformed header at line 1: expected \"n m\"");
    }
    if (n > 0xFFFFFFFFULL) throw ParseError("vertex count too large at line 1");
    if (lines.size() - 1 != m) {
        throw ParseError("header declares " + std::to_string(m) + " edges but document has " +
                         std::to_string(lines.size() - 1) + " edge lines");
    }

    std::vector<Edge> edges;
    edges.reserve(m);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto line_no = std::to_string(i + 1);
        auto fields = split_fields(lines[i]);
        std::uint64_t u = 0, v = 0;
        if (fields.size() != 2 || !parse_uint(fields[0], u) || !parse_uint(fields[1], v)) {
            throw ParseError("malformed edge at line " + line_no + ": expected \"u v\"");
        }
        if (u >= n || v >= n) throw ParseError("vertex out of range at line " + line_no);
        if (u == v) throw ParseError("loop at line " + line_no);
        edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
    }
    ParsedGraph out{Graph(static_cast<std::size_t>(n), edges), 0};
    out.duplicates = out.graph.duplicates_merged();
    return out;
}

ParsedGraph read_graph_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open graph file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str());
}

std::string format_graph(const Graph& g) {
    std::string out = std::to_string(g.order()) + " " + std::to_string(g.edge_count()) + "\n";
    for (const auto& [u, v] : g.edges()) {
        out += std::to_string(u);
        out += ' ';
        out += std::to_string(v);
        out += '\n';
    }
    return out;
}

void write_graph_file(const Graph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write graph file '" + path + "'");
    out << format_graph(g);
}

Profile basic_profile(const Graph& g) {
    Profile p;
    p.n = g.order();
    p.edge_count = g.edge_count();
    if (p.n == 0) return p;
    p.min_degree = g.degree(0);
    p.max_degree = g.degree(0);
    for (VertexId v = 1; v < p.n; ++v) {
        p.min_degree = std::min(p.min_degree, g.degree(v));
        p.max_degree = std::max(p.max_degree, g.degree(v));
    }
    if (p.min_degree == p.max_degree) p.regular_degree = p.min_degree;

    std::vector<char> seen(p.n, 0);
    std::queue<VertexId> frontier;
    frontier.push(0);
    seen[0] = 1;
    std::size_t reached = 1;
    while (!frontier.empty()) {
        auto u = frontier.front();
        frontier.pop();
        for (VertexId w : g.neighbors(u)) {
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                frontier.push(w);
            }
        }
    }
    p.connected = reached == p.n;
    return p;
}

std::optional<std::size_t> distance_capped(const Graph& g, VertexId u, VertexId v, std::size_t cap) {
    if (!g.contains(u) || !g.contains(v)) throw UsageError("distance_capped: vertex out of range");
    if (u == v) return cap > 0 ? std::optional<std::size_t>(0) : std::nullopt;
    std::vector<std::size_t> dist(g.order(), SIZE_MAX);
    std::queue<VertexId> frontier;
    dist[u] = 0;
    frontier.push(u);
    while (!frontier.empty()) {
        auto x = frontier.front();
        frontier.pop();
        if (dist[x] + 1 >= cap) continue;
        for (VertexId w : g.neighbors(x)) {
            if (dist[w] != SIZE_MAX) continue;
            dist[w] = dist[x] + 1;
            if (w == v) return dist[w];
            frontier.push(w);
        }
    }
    return std::nullopt;
}

std::vector<VertexId> common_neighbors(const Graph& g, VertexId u, VertexId v) {
    if (u == v) throw UsageError("common_neighbors: u and v must differ");
    auto nu = g.neighbors(u);
    auto nv = g.neighbors(v);
    std::vector<VertexId> out;
    std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(), std::back_inserter(out));
    return out;
}

std::size_t common_neighbor_count(const Graph& g, VertexId u, VertexId v) {
    auto nu = g.neighbors(u);
    auto nv = g.neighbors(v);
    std::size_t count = 0;
    auto i = nu.begin();
    auto j = nv.begin();
    while (i != nu.end() && j != nv.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

std::string to_hex(std::uint64_t value) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[value & 0xF];
        value >>= 4;
    }
    return out;
}

}  // namespace avoidkit
