// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number
// of failed criteria (capped at 125).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "avoidkit/couplers.hpp"
#include "avoidkit/errors.hpp"
#include "avoidkit/experiment.hpp"
#include "avoidkit/generators.hpp"
#include "avoidkit/oracles.hpp"
#include "avoidkit/simulate.hpp"
#include "avoidkit/structure.hpp"
#include "avoidkit/transport.hpp"
#include "avoidkit/verify.hpp"

using namespace avoidkit;

namespace {

// Pinned tolerances and budgets.
constexpr std::uint64_t kCubicTicks = 1'000'000;
constexpr double kCubicSecondsPerRun = 30.0;
constexpr std::uint64_t kRegularTicks = 300'000;
constexpr std::uint64_t kSquarefreeTicks = 1'000'000;
constexpr double kFamilyAlpha = 0.001;
constexpr std::size_t kEmpiricalRuns = 9;  // 3 cubic + 4 regular + 2 square-free
constexpr double kLemma34Seconds = 300.0;
constexpr double kLemma42Seconds = 10.0;
constexpr std::size_t kLemma31Graphs = 100;
constexpr std::size_t kExcursionMaxLength = 8;
constexpr std::size_t kExcursionSamples = 100'000;
constexpr std::size_t kPrevalenceSamples = 500;
constexpr std::uint64_t kPrevalenceSeed = 20240601;
constexpr double kPrevalenceMaxAt128 = 0.05;
constexpr double kPrevalenceSeconds = 120.0;
constexpr std::uint64_t kCycleTicks = 1'000'000;
constexpr double kCycleSigmas = 3.0;

int failed = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] %2d %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failed;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

bool apart(const Graph& g, VertexId u, VertexId v) { return u != v && !g.adjacent(u, v); }

// Runs of criteria 1-3, kept for the chi-square suite.
struct Run {
    std::string label;
    const Graph* graph;
    Trajectory traj;
};

std::deque<Graph> keep;  // owns graphs referenced by runs; deque keeps addresses stable
std::vector<Run> runs;

void criterion1() {
    keep.push_back(petersen_graph());
    const Graph& g = keep.back();
    bool ok = true;
    double worst = 0;
    std::ostringstream d;
    for (std::uint64_t seed : {1, 2, 3}) {
        const auto t0 = std::chrono::steady_clock::now();
        auto res = simulate(g, EngineKind::cubic, kCubicTicks, seed);
        const double secs = seconds_since(t0);
        worst = std::max(worst, secs);
        const auto v = check_avoidance(g, res.trajectory);
        std::size_t bad_blocks = 0;
        for (auto t : res.trajectory.block_starts) {
            if (!apart(g, res.trajectory.at(t, 0), res.trajectory.at(t, 1))) ++bad_blocks;
        }
        ok &= v.empty() && bad_blocks == 0 && secs < kCubicSecondsPerRun;
        d << "seed " << seed << ": " << v.size() << " violations, " << res.trajectory.block_starts.size()
          << " blocks, " << bad_blocks << " close block starts; ";
        runs.push_back({"cubic/petersen/" + std::to_string(seed), &g, std::move(res.trajectory)});
    }
    d << "slowest run " << fmt(worst) << " s";
    report(1, "avoidance-cubic", ok, d.str());
}

void criterion2() {
    std::vector<std::pair<std::string, Graph>> hosts;
    hosts.emplace_back("circulant(9,{1,2})", circulant_graph(9, {1, 2}));
    for (std::size_t n : {12, 16, 20}) {
        for (std::uint64_t seed = 1;; ++seed) {
            auto g = random_regular_simple(n, 4, derive_seed(seed, n), true).graph;
            if (!contains_Hd(g, 4)) {
                hosts.emplace_back("rr(" + std::to_string(n) + ",4)#" + std::to_string(seed), std::move(g));
                break;
            }
        }
    }
    bool ok = true;
    std::ostringstream d;
    for (auto& [label, graph] : hosts) {
        keep.push_back(std::move(graph));
        const Graph& g = keep.back();
        std::size_t violations = 0;
        std::uint64_t checks = 0;
        try {
            auto res = simulate(g, EngineKind::regular, kRegularTicks, 7);
            violations = check_avoidance(g, res.trajectory).size();
            checks = res.summary.invariant_checks;
            runs.push_back({"regular/" + label, &g, std::move(res.trajectory)});
        } catch (const Error& e) {
            d << label << ": " << e.what() << "; ";
            ok = false;
            continue;
        }
        // two round starts per three ticks
        ok &= violations == 0 && checks >= 2 * kRegularTicks / 3;
        d << label << ": " << violations << " violations, " << checks << " phase checks; ";
    }
    report(2, "avoidance-regular", ok, d.str());
}

void criterion3() {
    bool ok = true;
    std::ostringstream d;
    for (auto [label, graph] : {std::pair{"petersen", petersen_graph()}, std::pair{"heawood", heawood_graph()}}) {
        keep.push_back(std::move(graph));
        const Graph& g = keep.back();
        auto res = simulate(g, EngineKind::squarefree, kSquarefreeTicks, 11);
        const auto v = check_avoidance(g, res.trajectory);
        std::size_t close = 0;
        for (std::size_t t = 0; t < res.trajectory.ticks(); ++t) {
            if (!apart(g, res.trajectory.at(t, 0), res.trajectory.at(t, 1))) ++close;
        }
        ok &= v.empty() && close == 0;
        d << label << ": " << v.size() << " violations, " << close << " close ticks; ";
        runs.push_back({std::string("squarefree/") + label, &g, std::move(res.trajectory)});
    }
    report(3, "avoidance-squarefree", ok, d.str());
}

void criterion4() {
    std::size_t pairs = 0, bad_pairs = 0;
    for (const auto& g : {petersen_graph(), complete_bipartite_graph(3, 3)}) {
        for (VertexId a = 0; a < g.order(); ++a) {
            for (VertexId b = 0; b < g.order(); ++b) {
                if (a == b || g.adjacent(a, b)) continue;
                const auto law = exact_cubic_marginals(g, a, b);
                ++pairs;
                if (!is_uniform_over(law.alice, g.neighbors(a)) || !is_uniform_over(law.bob, g.neighbors(b)) ||
                    law.residual.numerator() != 0) {
                    ++bad_pairs;
                }
            }
        }
    }
    const auto circ = circulant_graph(9, {1, 2});
    std::size_t triples = 0, bad_triples = 0, certified = 0, cert_failures = 0;
    for (VertexId a = 0; a < 9; ++a) {
        for (const auto& [b, e] : valid_regular_partners(circ, a)) {
            const auto t = build_regular_transport(circ, a, b, e);
            ++triples;
            try {
                certify(t, circ);
                ++certified;
                if (!regular_laws_uniform(exact_regular_index_laws(t, circ), 4)) ++bad_triples;
            } catch (const CertificationError&) {
                ++cert_failures;
            }
        }
    }
    for (const auto& g : {petersen_graph(), heawood_graph()}) {
        for (VertexId a = 0; a < g.order(); ++a) {
            for (VertexId b = 0; b < g.order(); ++b) {
                if (a == b || g.adjacent(a, b)) continue;
                try {
                    certify(build_squarefree_transport(g, a, b), g);
                    ++certified;
                } catch (const CertificationError&) {
                    ++cert_failures;
                }
            }
        }
    }
    const bool ok = bad_pairs == 0 && bad_triples == 0 && cert_failures == 0 && triples == 180;
    report(4, "exact-faithfulness", ok,
           std::to_string(pairs) + " cubic pairs (" + std::to_string(bad_pairs) + " non-uniform), " +
               std::to_string(triples) + " regular triples (" + std::to_string(bad_triples) + " non-uniform), " +
               std::to_string(certified) + " transports certified, " + std::to_string(cert_failures) +
               " identity failures");
}

Trajectory planted_bias(const Graph& g, std::uint64_t ticks) {
    Trajectory t;
    t.engine = EngineKind::cubic;
    t.graph_digest = g.digest();
    Rng rng(99);
    VertexId a = 0, b = 7;
    for (std::uint64_t i = 0; i <= ticks; ++i) {
        const VertexId row[] = {a, b};
        t.push(row);
        const auto na = g.neighbors(a);
        a = rng.coin() ? na[0] : na[rng.below(na.size())];
        const auto nb = g.neighbors(b);
        b = nb[rng.below(nb.size())];
    }
    t.block_starts.push_back(0);
    return t;
}

void criterion5() {
    const double per_run = kFamilyAlpha / static_cast<double>(kEmpiricalRuns);
    bool ok = runs.size() == kEmpiricalRuns;
    double min_p = 1.0;
    std::size_t tested = 0;
    std::ostringstream d;
    for (const auto& r : runs) {
        const auto rep = chi_square_faithfulness(*r.graph, r.traj, per_run);
        tested += rep.tested;
        min_p = std::min(min_p, rep.min_p);
        if (!rep.pass) {
            ok = false;
            d << r.label << " failed (min p " << fmt(rep.min_p) << "); ";
        }
    }
    const auto pet = petersen_graph();
    const auto bias = chi_square_faithfulness(pet, planted_bias(pet, 100000), kFamilyAlpha);
    ok &= !bias.pass;
    d << runs.size() << " runs, " << tested << " rows tested at alpha " << fmt(per_run) << " per run, min p "
      << fmt(min_p) << "; planted bias " << (bias.pass ? "passed (power failure)" : "rejected") << " with "
      << bias.failures << " failing rows";
    report(5, "empirical-faithfulness", ok, d.str());
}

void criterion6() {
    const auto g = circulant_graph(9, {1, 2});
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t triples = 0, failures = 0;
    std::uint64_t subsets = 0;
    std::int64_t min_slack = INT64_MAX;
    for (VertexId a = 0; a < 9; ++a) {
        for (const auto& [b, e] : valid_regular_partners(g, a)) {
            const auto r = lemma34_oracle(g, a, b, e);
            ++triples;
            subsets += r.subsets;
            failures += !r.holds;
            min_slack = std::min(min_slack, r.worst_slack);
        }
    }
    const double secs = seconds_since(t0);
    const bool ok = failures == 0 && triples == 180 && subsets == 180 * 4096 && secs < kLemma34Seconds;
    report(6, "hall-inequality-regular", ok,
           std::to_string(triples) + " triples, " + std::to_string(subsets) + " subsets, " +
               std::to_string(failures) + " failures, min slack " + std::to_string(min_slack) + ", " + fmt(secs) +
               " s");
}

void criterion7() {
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t pairs = 0, failures = 0;
    for (const auto& g : {petersen_graph(), heawood_graph()}) {
        for (VertexId a = 0; a < g.order(); ++a) {
            for (VertexId b = 0; b < g.order(); ++b) {
                if (a == b || g.adjacent(a, b)) continue;
                const auto r = lemma42_oracle(g, a, b);
                ++pairs;
                failures += !r.holds || r.subsets != 8;
            }
        }
    }
    const double secs = seconds_since(t0);
    report(7, "hall-inequality-squarefree", failures == 0 && pairs == 60 + 140 && secs < kLemma42Seconds,
           std::to_string(pairs) + " pairs, " + std::to_string(failures) + " failures, " + fmt(secs) + " s");
}

void criterion8() {
    std::size_t agree = 0, with_hd = 0;
    for (std::size_t i = 0; i < kLemma31Graphs; ++i) {
        const std::size_t d = 3 + i % 3;
        // n ≤ 20, n·d even, n > d
        std::size_t n = 6 + (i * 7) % 15;
        if ((n * d) % 2) ++n;
        const auto g = random_regular_simple(n, d, derive_seed(31, i), false).graph;
        const auto r = lemma31_equivalence(g, d);
        agree += r.agree();
        with_hd += !r.hd_free;
    }
    report(8, "hd-free-equivalence", agree == kLemma31Graphs,
           std::to_string(agree) + "/" + std::to_string(kLemma31Graphs) + " graphs agree (" +
               std::to_string(with_hd) + " contain H_d)");
}

Graph s3b_host() {
    return Graph(10, std::vector<Edge>{{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {0, 4}, {1, 5}, {4, 5}, {4, 6}, {5, 7}, {6, 8}, {6, 9},
                      {7, 8}, {7, 9}, {8, 9}});
}

void criterion9() {
    const auto g = s3b_host();
    const auto cls = classify_scenario(g, 0, 1);
    const auto table = two_step_table(g, 0, 1);
    const Rational w(1, 9);
    std::map<std::pair<VertexId, VertexId>, Rational> alice, bob, srw_a, srw_b;
    std::size_t bad_rows = 0;
    for (const auto& row : table) {
        alice[{row.alice1, row.alice2}] += w;
        bob[{row.bob1, row.bob2}] += w;
        const bool ii = row.bob1 != row.alice1 && row.bob1 != row.alice2 && row.bob2 != row.alice2 &&
                        g.adjacent(0, row.alice1) && g.adjacent(row.alice1, row.alice2) &&
                        g.adjacent(1, row.bob1) && g.adjacent(row.bob1, row.bob2);
        const bool iii = apart(g, row.alice2, row.bob2);
        bad_rows += !(ii && iii);
    }
    for (VertexId x : g.neighbors(0)) {
        for (VertexId y : g.neighbors(x)) srw_a[{x, y}] += Rational(1, 3) * Rational(1, 3);
    }
    for (VertexId x : g.neighbors(1)) {
        for (VertexId y : g.neighbors(x)) srw_b[{x, y}] += Rational(1, 3) * Rational(1, 3);
    }
    const bool ok = cls.tag == Scenario::S3b && alice == srw_a && bob == srw_b && bad_rows == 0;
    report(9, "two-step-table", ok,
           "scenario " + scenario_name(cls.tag) + ", Alice law " + (alice == srw_a ? "exact" : "wrong") +
               ", Bob law " + (bob == srw_b ? "exact" : "wrong") + ", " + std::to_string(bad_rows) +
               " rows that collide or end adjacent");
}

Graph s6_host() {
    std::vector<Edge> edges;
    for (VertexId base : {0u, 6u}) {
        const VertexId a = base, a1 = base + 1, a2 = base + 2, b1 = base + 3, b2 = base + 4, b = base + 5;
        for (auto e : {Edge{a, a1}, Edge{a, a2}, Edge{b, b1}, Edge{b, b2}, Edge{a1, b1}, Edge{a1, b2},
                       Edge{a2, b1}, Edge{a2, b2}}) {
            edges.push_back(e);
        }
    }
    edges.emplace_back(0, 11);
    edges.emplace_back(5, 6);
    return Graph(12, edges);
}

bool excursion_ok(const Graph& g, VertexId a, VertexId b, std::span<const VertexId> A1,
                  std::span<const VertexId> B1) {
    std::vector<VertexId> A{a}, B{b};
    A.insert(A.end(), A1.begin(), A1.end());
    B.insert(B.end(), B1.begin(), B1.end());
    const auto T = A1.size();
    for (std::size_t s = 0; s < T; ++s) {
        if (!g.adjacent(A[s], A[s + 1]) || !g.adjacent(B[s], B[s + 1])) return false;
        if (B[s] == A[s] || B[s] == A[s + 1]) return false;
    }
    return apart(g, A[T], B[T]);
}

void criterion10() {
    const auto g = s6_host();
    const auto L = k22_layout(g, 0, 5);
    std::size_t paths = 0, bad = 0;
    std::function<void(std::vector<VertexId>&)> grow = [&](std::vector<VertexId>& p) {
        if (p.back() == L.a || p.back() == L.b) {
            for (bool coin : {false, true}) {
                ++paths;
                bad += !excursion_ok(g, L.a, L.b, p, mirror_bob_path(L, p, coin));
            }
            return;
        }
        if (p.size() == kExcursionMaxLength) return;
        for (VertexId w : g.neighbors(p.back())) {
            p.push_back(w);
            grow(p);
            p.pop_back();
        }
    };
    for (VertexId s : {L.a1, L.a2}) {
        std::vector<VertexId> p{s};
        grow(p);
    }
    for (VertexId x : {L.b1, L.b2}) {
        const VertexId A[] = {L.ca}, B[] = {x};
        ++paths;
        bad += !excursion_ok(g, L.a, L.b, A, B);
    }
    for (VertexId x : {L.a1, L.a2}) {
        const VertexId A[] = {x}, B[] = {L.cb};
        ++paths;
        bad += !excursion_ok(g, L.a, L.b, A, B);
    }
    const auto law = exact_cubic_marginals(g, 0, 5);
    const bool uniform = is_uniform_over(law.alice, g.neighbors(0)) && is_uniform_over(law.bob, g.neighbors(5));
    Rng rng(10);
    std::map<std::size_t, std::size_t> lengths;
    for (std::size_t i = 0; i < kExcursionSamples; ++i) ++lengths[k22_excursion_coupling(g, 0, 5, rng).T];
    const bool support = lengths.count(1) && lengths.count(2) && lengths.count(3);
    std::ostringstream d;
    d << paths << " excursions of length <= " << kExcursionMaxLength << ", " << bad << " bad; first steps "
      << (uniform ? "exactly uniform" : "NOT uniform") << "; T support {";
    for (auto [t, c] : lengths) d << t << (t == lengths.rbegin()->first ? "" : ",");
    d << "}";
    report(10, "k22-excursion", bad == 0 && uniform && support, d.str());
}

void criterion11() {
    PrevalenceSpec spec;
    spec.d = 3;
    spec.n_list = {16, 32, 64, 128};
    spec.samples = kPrevalenceSamples;
    spec.seed = kPrevalenceSeed;
    const auto t0 = std::chrono::steady_clock::now();
    const auto res = run_prevalence(spec);
    const double secs = seconds_since(t0);
    bool trend = true;
    for (std::size_t i = 0; i + 1 < res.rows.size(); ++i) {
        for (std::size_t j = i + 1; j < res.rows.size(); ++j) {
            const auto& x = res.rows[i];
            const auto& y = res.rows[j];
            if (y.freq > x.freq && y.ci_lo > x.ci_hi) trend = false;
        }
    }
    const double last = res.rows.back().freq;
    std::ostringstream d;
    for (const auto& r : res.rows) d << "n=" << r.n << ": " << r.hits << "/" << r.samples << "; ";
    d << fmt(secs) << " s";
    report(11, "forbidden-subgraph-trend", trend && last <= kPrevalenceMaxAt128 && secs < kPrevalenceSeconds,
           d.str());
}

void criterion12() {
    const auto g = cycle_graph(10);
    SimOptions opt;
    opt.walkers = 5;
    const auto res = simulate(g, EngineKind::cycle, kCycleTicks, 12, opt);
    const auto& t = res.trajectory;
    const auto collisions = check_avoidance(g, t).size();
    const auto order = cycle_order(g);
    std::vector<std::size_t> index(10);
    for (std::size_t i = 0; i < order.size(); ++i) index[order[i]] = i;
    auto gap = [&](std::size_t tick, std::size_t u, std::size_t v) {
        return (index[t.at(tick, v)] + 10 - index[t.at(tick, u)]) % 10;
    };
    std::size_t gap_changes = 0;
    for (std::size_t tick = 1; tick < t.ticks(); ++tick) {
        for (std::size_t u = 0; u < 5; ++u) {
            for (std::size_t v = u + 1; v < 5; ++v) gap_changes += gap(tick, u, v) != gap(0, u, v);
        }
    }
    const double steps = static_cast<double>(t.ticks() - 1);
    const double sigma = std::sqrt(0.25 / steps);
    double worst = 0;
    for (std::size_t w = 0; w < 5; ++w) {
        std::size_t plus = 0;
        for (std::size_t tick = 0; tick + 1 < t.ticks(); ++tick) {
            plus += (index[t.at(tick + 1, w)] + 10 - index[t.at(tick, w)]) % 10 == 1;
        }
        worst = std::max(worst, std::abs(static_cast<double>(plus) / steps - 0.5) / sigma);
    }
    report(12, "cycle-lockstep", collisions == 0 && gap_changes == 0 && worst <= kCycleSigmas,
           std::to_string(collisions) + " collisions, " + std::to_string(gap_changes) +
               " gap changes, worst +1 frequency " + fmt(worst) + " sigma from 1/2");
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void criterion13() {
#ifndef AVOIDKIT_CLI
    report(13, "determinism", false, "command-line tool was not built");
#else
    namespace fs = std::filesystem;
    const std::string cli = AVOIDKIT_CLI;
    const auto root = fs::temp_directory_path() / "avoidkit_acceptance_13";
    fs::remove_all(root);
    const std::vector<std::string> steps{
        "gen --family random_regular --n 20 --d 3 --seed 5 --connected -o rr.txt",
        "gen --family petersen -o pet.txt",
        "analyze rr.txt > analyze.out",
        "transport pet.txt --a 0 --b 2 > transport.out",
        "simulate pet.txt --config run.cfg -o pet.traj > simulate.out",
        "simulate rr.txt --ticks 20000 --seed 9 -o rr.traj > simulate_rr.out",
        "verify pet.txt pet.traj --config run.cfg --json verify.json > verify.out",
        "oracle lemma42 pet.txt > oracle.out",
        "experiment prevalence --n 16,32 --samples 50 --seed 4 --threads 2 -o prev.csv",
    };
    bool ok = true;
    std::string detail;
    for (const char* rep : {"a", "b"}) {
        const auto dir = root / rep;
        fs::create_directories(dir);
        std::ofstream(dir / "run.cfg") << "rng.seed = 21\nsim.ticks = 50000\nverify.alpha = 0.001\n";
        for (const auto& s : steps) {
            const std::string cmd = "cd '" + dir.string() + "' && '" + cli + "' " + s + " 2> /dev/null";
            if (std::system(cmd.c_str()) != 0) {
                ok = false;
                detail += "failed: " + s + "; ";
            }
        }
    }
    const std::vector<std::string> outputs{"rr.txt",  "pet.txt",         "analyze.out", "transport.out",
                                           "pet.traj", "simulate.out",   "rr.traj",     "simulate_rr.out",
                                           "verify.json", "verify.out",  "oracle.out",  "prev.csv"};
    std::size_t files = 0, differ = 0;
    for (const auto& name : outputs) {
        if (!fs::exists(root / "a" / name) || !fs::exists(root / "b" / name)) {
            detail += name + " missing; ";
            ok = false;
            continue;
        }
        ++files;
        if (slurp(root / "a" / name) != slurp(root / "b" / name)) {
            ++differ;
            detail += name + " differs; ";
        }
    }
    ok &= differ == 0;
    report(13, "determinism", ok,
           detail + std::to_string(files) + " files compared, " + std::to_string(differ) + " differ");
    fs::remove_all(root);
#endif
}

}  // namespace

int main() {
    const std::vector<std::function<void()>> criteria{criterion1, criterion2, criterion3,  criterion4, criterion5,
                                                      criterion6, criterion7, criterion8,  criterion9, criterion10,
                                                      criterion11, criterion12, criterion13};
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        try {
            criteria[i]();
        } catch (const std::exception& e) {
            report(static_cast<int>(i + 1), "criterion", false, std::string("exception: ") + e.what());
        }
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return std::min(failed, 125);
}
