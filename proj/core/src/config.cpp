#include "avoidkit/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "avoidkit/errors.hpp"

namespace avoidkit {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

template <typename T>
T parse_number(std::string_view value, std::string_view key, std::size_t line_no) {
    T out{};
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ParseError("bad value for " + std::string(key) + " at line " + std::to_string(line_no));
    }
    return out;
}

std::string format_double(double x) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

}  // namespace

void validate(const RunConfig& cfg) {
    if (cfg.ticks == 0 || cfg.ticks > 1'000'000'000ULL) throw UsageError("sim.ticks must lie in [1, 1e9]");
    if (cfg.walkers < 2 || cfg.walkers > 1'000'000) throw UsageError("sim.walkers must lie in [2, 1e6]");
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw UsageError("verify.alpha must lie in (0, 1)");
    if (cfg.min_departures == 0) throw UsageError("verify.min_departures must be positive");
    if (cfg.cache_capacity == 0 || cfg.cache_capacity > (1u << 24)) {
        throw UsageError("cache.capacity must lie in [1, 2^24]");
    }
    if (cfg.rejection_budget == 0) throw UsageError("gen.rejection_budget must be positive");
}

RunConfig parse_config(std::string_view text, RunConfig cfg) {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        auto line = trim(text.substr(start, end - start));
        start = end + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected key = value at line " + std::to_string(line_no));
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key == "rng.seed") {
            cfg.seed = parse_number<std::uint64_t>(value, key, line_no);
        } else if (key == "sim.ticks") {
            cfg.ticks = parse_number<std::uint64_t>(value, key, line_no);
        } else if (key == "sim.engine") {
            try {
                cfg.engine = value == "auto" ? EngineKind::none : parse_engine(std::string(value));
            } catch (const UsageError&) {
                throw ParseError("unknown engine '" + std::string(value) + "' at line " + std::to_string(line_no));
            }
        } else if (key == "sim.walkers") {
            cfg.walkers = parse_number<std::size_t>(value, key, line_no);
        } else if (key == "verify.alpha") {
            cfg.alpha = parse_number<double>(value, key, line_no);
        } else if (key == "verify.min_departures") {
            cfg.min_departures = parse_number<std::uint64_t>(value, key, line_no);
        } else if (key == "cache.capacity") {
            cfg.cache_capacity = parse_number<std::size_t>(value, key, line_no);
        } else if (key == "gen.rejection_budget") {
            cfg.rejection_budget = parse_number<std::size_t>(value, key, line_no);
        } else if (key == "out.trajectory") {
            cfg.trajectory_path = std::string(value);
        } else if (key == "out.report") {
            cfg.report_path = std::string(value);
        } else {
            throw ParseError("unknown key '" + std::string(key) + "' at line " + std::to_string(line_no));
        }
    }
    validate(cfg);
    return cfg;
}

RunConfig read_config_file(const std::string& path, RunConfig base) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), std::move(base));
}

std::string format_config(const RunConfig& cfg) {
    std::string out;
    out += "cache.capacity = " + std::to_string(cfg.cache_capacity) + "\n";
    out += "gen.rejection_budget = " + std::to_string(cfg.rejection_budget) + "\n";
    if (!cfg.report_path.empty()) out += "out.report = " + cfg.report_path + "\n";
    if (!cfg.trajectory_path.empty()) out += "out.trajectory = " + cfg.trajectory_path + "\n";
    out += "rng.seed = " + std::to_string(cfg.seed) + "\n";
    out += "sim.engine = " + (cfg.engine == EngineKind::none ? std::string("auto") : engine_name(cfg.engine)) + "\n";
    out += "sim.ticks = " + std::to_string(cfg.ticks) + "\n";
    out += "sim.walkers = " + std::to_string(cfg.walkers) + "\n";
    out += "verify.alpha = " + format_double(cfg.alpha) + "\n";
    out += "verify.min_departures = " + std::to_string(cfg.min_departures) + "\n";
    return out;
}

}  // namespace avoidkit
