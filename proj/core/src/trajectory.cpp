#include "avoidkit/trajectory.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "avoidkit/errors.hpp"

namespace avoidkit {

namespace {

void append_uint(std::string& out, std::uint64_t v) {
    char buf[24];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, end);
}

bool parse_u64(std::string_view s, std::uint64_t& out, int base = 10) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out, base);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

std::vector<std::string_view> fields_of(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && line[i] == ' ') ++i;
        const auto start = i;
        while (i < line.size() && line[i] != ' ') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
    throw ParseError(what + " at line " + std::to_string(line_no));
}

}  // namespace

std::string format_trajectory(const Trajectory& traj) {
    std::string out;
    out.reserve(traj.positions.size() * 6 + traj.block_starts.size() * 12 + 96);
    out += "# graph-digest " + to_hex(traj.graph_digest) + "\n";
    out += "# seed " + std::to_string(traj.seed) + "\n";
    out += "# engine " + engine_name(traj.engine) + "\n";
    std::size_t next_block = 0;
    for (std::size_t t = 0; t < traj.ticks(); ++t) {
        while (next_block < traj.block_starts.size() && traj.block_starts[next_block] == t) {
            out += "# block ";
            append_uint(out, t);
            out += '\n';
            ++next_block;
        }
        append_uint(out, t);
        for (VertexId v : traj.row(t)) {
            out += ' ';
            append_uint(out, v);
        }
        out += '\n';
    }
    return out;
}

Trajectory parse_trajectory(std::string_view text) {
    Trajectory traj;
    traj.walkers = 0;
    bool have_digest = false, have_seed = false, have_engine = false;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        const auto line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        const auto f = fields_of(line);
        if (f.empty()) continue;

        if (f[0] == "#") {
            if (f.size() != 3) fail(line_no, "malformed header");
            std::uint64_t value = 0;
            if (f[1] == "graph-digest") {
                if (!parse_u64(f[2], value, 16)) fail(line_no, "malformed graph digest");
                traj.graph_digest = value;
                have_digest = true;
            } else if (f[1] == "seed") {
                if (!parse_u64(f[2], value)) fail(line_no, "malformed seed");
                traj.seed = value;
                have_seed = true;
            } else if (f[1] == "engine") {
                try {
                    traj.engine = parse_engine(std::string(f[2]));
                } catch (const UsageError&) {
                    fail(line_no, "unknown engine '" + std::string(f[2]) + "'");
                }
                have_engine = true;
            } else if (f[1] == "block") {
                if (!parse_u64(f[2], value)) fail(line_no, "malformed block marker");
                if (value != traj.ticks()) fail(line_no, "block marker out of place");
                traj.block_starts.push_back(value);
            } else {
                fail(line_no, "unknown header '" + std::string(f[1]) + "'");
            }
            continue;
        }

        if (f.size() < 3) fail(line_no, "tick line needs a tick and at least two positions");
        if (traj.walkers == 0) traj.walkers = f.size() - 1;
        if (f.size() - 1 != traj.walkers) fail(line_no, "inconsistent walker count");
        std::uint64_t t = 0;
        if (!parse_u64(f[0], t) || t != traj.ticks()) fail(line_no, "tick out of sequence");
        for (std::size_t i = 1; i < f.size(); ++i) {
            std::uint64_t v = 0;
            if (!parse_u64(f[i], v) || v > 0xFFFFFFFFULL) fail(line_no, "malformed position");
            traj.positions.push_back(static_cast<VertexId>(v));
        }
    }
    if (!have_digest || !have_seed || !have_engine) {
        throw ParseError("trajectory is missing a graph-digest, seed, or engine header");
    }
    if (traj.walkers == 0) throw ParseError("trajectory has no ticks");
    return traj;
}

void write_trajectory_file(const Trajectory& traj, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write trajectory file '" + path + "'");
    out << format_trajectory(traj);
}

Trajectory read_trajectory_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open trajectory file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_trajectory(buf.str());
}

}  // namespace avoidkit
