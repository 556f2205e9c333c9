#include "avoidkit/experiment.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "avoidkit/errors.hpp"
#include "avoidkit/generators.hpp"
#include "avoidkit/rng.hpp"
#include "avoidkit/structure.hpp"
#include "avoidkit/verify.hpp"

namespace avoidkit {

namespace {

struct CellResult {
    bool hit = false;
    bool loop = false;
    bool multi = false;
};

bool contains_forbidden(const Graph& g, std::size_t d) {
    return d == 3 ? contains_H3tilde(g).has_value() : contains_Hd(g, d).has_value();
}

std::string format_double(double x) {
    if (std::isinf(x)) return "inf";
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

}  // namespace

std::pair<double, double> wilson_interval(std::uint64_t hits, std::uint64_t samples) {
    if (samples == 0) throw UsageError("wilson interval needs at least one sample");
    constexpr double z = 1.959963984540054;
    const double n = static_cast<double>(samples);
    const double p = static_cast<double>(hits) / n;
    const double denom = 1.0 + z * z / n;
    const double centre = (p + z * z / (2 * n)) / denom;
    const double half = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom;
    const double lo = hits == 0 ? 0.0 : std::max(0.0, centre - half);
    const double hi = hits == samples ? 1.0 : std::min(1.0, centre + half);
    return {lo, hi};
}

std::pair<double, double> forbidden_shape(std::size_t d) {
    if (d < 3) throw UsageError("prevalence needs d >= 3");
    if (d == 3) return {5.0, 7.0};
    return {static_cast<double>(d + 1), static_cast<double>(2 * d - 1)};
}

std::size_t worker_count(std::size_t requested) {
    std::size_t n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("AVOIDKIT_THREADS")) {
        char* end = nullptr;
        const auto cap = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && cap > 0) n = std::min<std::size_t>(n, cap);
    }
    return n;
}

PrevalenceResult run_prevalence(const PrevalenceSpec& spec) {
    if (spec.samples == 0) throw UsageError("samples must be at least 1");
    if (spec.n_list.empty()) throw UsageError("n list is empty");
    const auto [n0, m_edges] = forbidden_shape(spec.d);
    for (auto n : spec.n_list) {
        if ((n * spec.d) % 2 != 0) {
            throw UsageError("n·d must be even (n = " + std::to_string(n) + ", d = " + std::to_string(spec.d) + ")");
        }
        if (spec.simple_connected && spec.d >= n) throw UsageError("simple graphs need d < n");
    }

    const auto per_n = spec.samples;
    const auto total = spec.n_list.size() * per_n;
    std::vector<CellResult> cells(total);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    const auto work = [&] {
        for (;;) {
            const auto idx = next.fetch_add(1);
            if (idx >= total || failed.load()) return;
            const auto i = idx / per_n;
            const auto r = idx % per_n;
            const auto n = spec.n_list[i];
            const auto seed = derive_seed(derive_seed(spec.seed, n), r);
            try {
                CellResult& c = cells[idx];
                if (spec.simple_connected) {
                    const auto sample = random_regular_simple(n, spec.d, seed, true, spec.rejection_budget);
                    c.hit = contains_forbidden(sample.graph, spec.d);
                } else {
                    const auto mg = configuration_model(n, spec.d, seed);
                    c.loop = mg.loop_count() > 0;
                    c.multi = mg.multi_edge_count() > 0;
                    c.hit = contains_forbidden(mg.simple_support(), spec.d);
                }
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
                return;
            }
        }
    };

    const auto workers = std::min(worker_count(spec.threads), total);
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    PrevalenceResult res;
    for (std::size_t i = 0; i < spec.n_list.size(); ++i) {
        PrevalenceRow row;
        row.n = spec.n_list[i];
        row.d = spec.d;
        row.samples = per_n;
        std::uint64_t loops = 0, multi = 0;
        for (std::size_t r = 0; r < per_n; ++r) {
            const auto& c = cells[i * per_n + r];
            row.hits += c.hit;
            loops += c.loop;
            multi += c.multi;
        }
        row.freq = static_cast<double>(row.hits) / static_cast<double>(row.samples);
        std::tie(row.ci_lo, row.ci_hi) = wilson_interval(row.hits, row.samples);
        if (static_cast<double>(row.n) > 2 * m_edges) {
            const double b =
                hd_probability_upper_bound(static_cast<double>(row.n), static_cast<double>(spec.d), n0, m_edges);
            if (std::isfinite(b)) row.bound = b;
        }
        res.rows.push_back(row);
        res.with_loops.push_back(loops);
        res.with_multi_edges.push_back(multi);
    }
    return res;
}

std::string format_prevalence_csv(const std::vector<PrevalenceRow>& rows) {
    std::string out = "n,d,samples,hits,freq,ci_lo,ci_hi,bound\n";
    for (const auto& r : rows) {
        out += std::to_string(r.n) + "," + std::to_string(r.d) + "," + std::to_string(r.samples) + "," +
               std::to_string(r.hits) + "," + format_double(r.freq) + "," + format_double(r.ci_lo) + "," +
               format_double(r.ci_hi) + "," + (r.bound ? format_double(*r.bound) : std::string("inf")) + "\n";
    }
    return out;
}

std::vector<PrevalenceRow> parse_prevalence_csv(std::string_view text) {
    std::vector<PrevalenceRow> rows;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        const auto line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (line.empty()) continue;
        if (line_no == 1) {
            if (line != "n,d,samples,hits,freq,ci_lo,ci_hi,bound") throw ParseError("unexpected CSV header");
            continue;
        }
        std::vector<std::string_view> f;
        std::size_t s = 0;
        for (;;) {
            const auto comma = line.find(',', s);
            f.push_back(line.substr(s, comma == std::string_view::npos ? std::string_view::npos : comma - s));
            if (comma == std::string_view::npos) break;
            s = comma + 1;
        }
        if (f.size() != 8) throw ParseError("expected 8 fields at line " + std::to_string(line_no));
        const auto bad = [&] { return ParseError("malformed field at line " + std::to_string(line_no)); };
        const auto uint_field = [&](std::string_view v) {
            std::uint64_t x = 0;
            auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
            if (ec != std::errc{} || p != v.data() + v.size()) throw bad();
            return x;
        };
        const auto double_field = [&](std::string_view v) {
            double x = 0;
            auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
            if (ec != std::errc{} || p != v.data() + v.size()) throw bad();
            return x;
        };
        PrevalenceRow r;
        r.n = uint_field(f[0]);
        r.d = uint_field(f[1]);
        r.samples = uint_field(f[2]);
        r.hits = uint_field(f[3]);
        r.freq = double_field(f[4]);
        r.ci_lo = double_field(f[5]);
        r.ci_hi = double_field(f[6]);
        if (f[7] != "inf") r.bound = double_field(f[7]);
        if (r.hits > r.samples) throw ParseError("hits exceed samples at line " + std::to_string(line_no));
        rows.push_back(r);
    }
    return rows;
}

}  // namespace avoidkit
