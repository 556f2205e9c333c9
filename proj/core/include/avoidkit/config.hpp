#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "avoidkit/structure.hpp"

namespace avoidkit {

// Flat `key = value` settings shared by the commands. Lines starting with
// '#' are comments. Unknown keys are rejected.
//
//   rng.seed  sim.ticks  sim.engine  sim.walkers  verify.alpha
//   verify.min_departures  cache.capacity  gen.rejection_budget
//   out.trajectory  out.report
struct RunConfig {
    std::uint64_t seed = 1;
    std::uint64_t ticks = 100000;
    EngineKind engine = EngineKind::none;  // none = automatic
    std::size_t walkers = 2;
    double alpha = 0.001;
    std::uint64_t min_departures = 30;
    std::size_t cache_capacity = 4096;
    std::size_t rejection_budget = 100000;
    std::string trajectory_path;
    std::string report_path;

    bool operator==(const RunConfig&) const = default;
};

// Applies the document on top of `base`, then validates.
RunConfig parse_config(std::string_view text, RunConfig base = {});
RunConfig read_config_file(const std::string& path, RunConfig base = {});
std::string format_config(const RunConfig& cfg);
// Throws UsageError naming the first out-of-range field.
void validate(const RunConfig& cfg);

}  // namespace avoidkit
