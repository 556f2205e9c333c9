#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace avoidkit {

// One CSV line: n,d,samples,hits,freq,ci_lo,ci_hi,bound. A missing bound
// (n too small for it to be defined) is written as "inf".
struct PrevalenceRow {
    std::size_t n = 0;
    std::size_t d = 0;
    std::uint64_t samples = 0;
    std::uint64_t hits = 0;
    double freq = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    std::optional<double> bound;
    bool operator==(const PrevalenceRow&) const = default;
};

struct PrevalenceSpec {
    std::size_t d = 3;
    std::vector<std::size_t> n_list;
    std::uint64_t samples = 500;
    std::uint64_t seed = 1;
    // Sample simple connected graphs by rejection instead of raw multigraphs.
    bool simple_connected = false;
    std::size_t rejection_budget = 100000;
    std::size_t threads = 0;  // 0: hardware concurrency, capped by AVOIDKIT_THREADS
};

struct PrevalenceResult {
    std::vector<PrevalenceRow> rows;
    // Per n: samples whose multigraph had a loop / a repeated edge.
    std::vector<std::uint64_t> with_loops;
    std::vector<std::uint64_t> with_multi_edges;
};

// Wilson score interval at 95%.
std::pair<double, double> wilson_interval(std::uint64_t hits, std::uint64_t samples);

// Forbidden subgraph for degree d: H~_3 when d = 3, H_d when d >= 4.
// Returns (n0, m): vertex and edge counts used by the analytic bound.
std::pair<double, double> forbidden_shape(std::size_t d);

// Worker count: `requested` (0 = hardware), capped by AVOIDKIT_THREADS.
std::size_t worker_count(std::size_t requested);

// Cell (i, r) for n_list[i] and replica r uses seed
// derive_seed(derive_seed(seed, n), r); results merge in (i, r) order.
PrevalenceResult run_prevalence(const PrevalenceSpec& spec);

std::string format_prevalence_csv(const std::vector<PrevalenceRow>& rows);
std::vector<PrevalenceRow> parse_prevalence_csv(std::string_view text);

}  // namespace avoidkit
