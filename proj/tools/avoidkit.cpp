// avoidkit command-line tool. Exit codes: 0 ok, 1 domain failure, 2 bad input.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "avoidkit/config.hpp"
#include "avoidkit/couplers.hpp"
#include "avoidkit/errors.hpp"
#include "avoidkit/experiment.hpp"
#include "avoidkit/generators.hpp"
#include "avoidkit/oracles.hpp"
#include "avoidkit/simulate.hpp"
#include "avoidkit/structure.hpp"
#include "avoidkit/verify.hpp"

namespace ak = avoidkit;

namespace {

constexpr int kOk = 0;
constexpr int kDomain = 1;
constexpr int kInput = 2;

ak::Graph load_graph(const std::string& path) {
    auto parsed = ak::read_graph_file(path);
    if (parsed.duplicates > 0) {
        std::cerr << "warning: merged " << parsed.duplicates << " duplicate edge(s) in " << path << "\n";
    }
    return std::move(parsed.graph);
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ak::UsageError("cannot write '" + path + "'");
    out << text;
}

std::vector<std::size_t> parse_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(item, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != item.size()) throw ak::UsageError("bad list entry '" + item + "'");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

std::string pair_list(const std::vector<ak::MoverPair>& xs) {
    std::string s;
    for (const auto& x : xs) s += "(" + std::to_string(x.first_step) + "," + std::to_string(x.second_step) + ") ";
    return s;
}

void print_certificate(const ak::HallCertificate& c) {
    std::cout << "hall violator: rows {";
    for (std::size_t i = 0; i < c.rows.size(); ++i) std::cout << (i ? "," : "") << c.rows[i];
    std::cout << "} reach columns {";
    for (std::size_t i = 0; i < c.neighbor_cols.size(); ++i) std::cout << (i ? "," : "") << c.neighbor_cols[i];
    std::cout << "}, supply " << c.supply << " > demand " << c.demand << "\n";
}

// --- commands -----------------------------------------------------------------

struct GenArgs {
    std::string family;
    std::size_t n = 0, q = 0, d = 0;
    std::string offsets;
    std::uint64_t seed = 1;
    bool connected = false;
    std::size_t budget = 100000;
    std::string out;
};

int cmd_gen(const GenArgs& a) {
    ak::GenSpec spec;
    spec.family = ak::parse_family(a.family);
    spec.n = a.n;
    spec.q = a.q;
    spec.d = a.d;
    spec.offsets = parse_list(a.offsets);
    spec.seed = a.seed;
    spec.connected = a.connected;
    spec.rejection_budget = a.budget;
    if (spec.family == ak::Family::configuration_model) {
        const auto mg = ak::configuration_model(spec.n, spec.d, spec.seed);
        std::cerr << "configuration model: " << mg.edges.size() << " edge slots, " << mg.loop_count()
                  << " loop(s), " << mg.multi_edge_count() << " repeated slot(s); writing the simple support\n";
        write_text(a.out, ak::format_graph(mg.simple_support()));
        return kOk;
    }
    if (spec.family == ak::Family::random_regular) {
        const auto sample = ak::random_regular_simple(spec.n, spec.d, spec.seed, spec.connected, spec.rejection_budget);
        std::cerr << "random regular: " << sample.rejections << " rejection(s)\n";
        write_text(a.out, ak::format_graph(sample.graph));
        return kOk;
    }
    write_text(a.out, ak::format_graph(ak::generate(spec)));
    return kOk;
}

int cmd_analyze(const std::string& path) {
    const auto g = load_graph(path);
    const auto p = ak::basic_profile(g);
    std::cout << "profile:\n"
              << "  n: " << p.n << "\n  edges: " << p.edge_count << "\n  min_degree: " << p.min_degree
              << "\n  max_degree: " << p.max_degree << "\n  regular_degree: "
              << (p.regular_degree ? std::to_string(*p.regular_degree) : std::string("none"))
              << "\n  connected: " << (p.connected ? "true" : "false") << "\n  digest: " << ak::to_hex(g.digest())
              << "\n";
    std::cout << "findings:\n";
    if (p.regular_degree && *p.regular_degree >= 2) {
        const auto d = *p.regular_degree;
        const auto hd = ak::contains_Hd(g, d);
        std::cout << "  H_" << d << ": "
                  << (hd ? "present at (" + std::to_string(hd->a) + "," + std::to_string(hd->b) + ")" : "absent")
                  << "\n";
    } else {
        std::cout << "  H_d: not applicable (graph is not regular)\n";
    }
    const auto h3 = ak::contains_H3tilde(g);
    std::cout << "  H~_3: "
              << (h3 ? "present at (" + std::to_string(h3->a) + "," + std::to_string(h3->b) + "," +
                           std::to_string(h3->c1) + "," + std::to_string(h3->c2) + ")"
                     : "absent")
              << "\n";
    const auto sq = ak::find_square(g);
    std::cout << "  4-cycle: "
              << (sq ? "present (" + std::to_string(sq->u) + "," + std::to_string(sq->c1) + "," +
                           std::to_string(sq->v) + "," + std::to_string(sq->c2) + ")"
                     : "absent")
              << "\n";
    std::size_t k22 = 0;
    std::optional<std::pair<ak::VertexId, ak::VertexId>> first_k22;
    for (ak::VertexId a = 0; a < g.order(); ++a) {
        for (ak::VertexId b = a + 1; b < g.order(); ++b) {
            if (g.adjacent(a, b) || !ak::admits_K22(g, a, b)) continue;
            ++k22;
            if (!first_k22) first_k22 = std::make_pair(a, b);
        }
    }
    std::cout << "  K_{2,2}-admitting pairs: " << k22;
    if (first_k22) std::cout << " (first (" << first_k22->first << "," << first_k22->second << "))";
    std::cout << "\n";

    if (!p.connected) {
        std::cout << "verdict:\n  engine: none\n  obstruction: graph is disconnected\n";
        return kDomain;
    }
    const auto v = ak::admissibility_verdict(g);
    std::cout << "verdict:\n  engine: " << ak::engine_name(v.engine) << "\n";
    if (!v.note.empty()) std::cout << "  note: " << v.note << "\n";
    if (v.obstruction) std::cout << "  obstruction: " << *v.obstruction << "\n";
    return v.engine == ak::EngineKind::none ? kDomain : kOk;
}

struct TransportArgs {
    std::string graph;
    ak::VertexId a = 0, b = 0;
    std::optional<ak::VertexId> e;
};

int cmd_transport(const TransportArgs& t) {
    const auto g = load_graph(t.graph);
    try {
        if (t.e) {
            const auto tr = ak::build_regular_transport(g, t.a, t.b, *t.e);
            ak::certify(tr, g);
            std::cout << "regular transport (a,b,e)=(" << t.a << "," << t.b << "," << *t.e << "), d=" << tr.d
                      << ", total " << tr.m.total() << "\n";
            std::cout << "rows (a',a''): " << pair_list(tr.movers) << "\ncols (b',e'): ";
            for (const auto& o : tr.others) std::cout << "(" << o.step << "," << o.next_excluded << ") ";
            std::cout << "\n" << ak::format_matrix(tr.m);
        } else {
            const auto tr = ak::build_squarefree_transport(g, t.a, t.b);
            ak::certify(tr, g);
            std::cout << "square-free transport (a,b)=(" << t.a << "," << t.b << ")"
                      << (tr.swapped ? ", rows are N(b)" : ", rows are N(a)") << ", total " << tr.m.total()
                      << "\nrows: ";
            for (auto r : tr.rows) std::cout << r << " ";
            std::cout << "\ncols: ";
            for (auto c : tr.cols) std::cout << c << " ";
            std::cout << "\n" << ak::format_matrix(tr.m);
        }
    } catch (const ak::HypothesisViolation& err) {
        std::cout << "infeasible: " << err.what() << "\n";
        print_certificate(err.certificate());
        return kDomain;
    }
    return kOk;
}

struct SimulateArgs {
    std::string graph;
    std::string config;
    std::optional<std::uint64_t> ticks, seed;
    std::string engine;
    std::optional<std::size_t> walkers, cache;
    std::optional<ak::VertexId> a0, b0;
    std::string out;
};

int cmd_simulate(const SimulateArgs& s) {
    auto cfg = s.config.empty() ? ak::RunConfig{} : ak::read_config_file(s.config);
    if (s.ticks) cfg.ticks = *s.ticks;
    if (s.seed) cfg.seed = *s.seed;
    if (!s.engine.empty()) cfg.engine = s.engine == "auto" ? ak::EngineKind::none : ak::parse_engine(s.engine);
    if (s.walkers) cfg.walkers = *s.walkers;
    if (s.cache) cfg.cache_capacity = *s.cache;
    if (!s.out.empty()) cfg.trajectory_path = s.out;
    ak::validate(cfg);
    if (cfg.trajectory_path.empty()) throw ak::UsageError("no output path (-o or out.trajectory)");

    const auto g = load_graph(s.graph);
    ak::SimOptions opt;
    opt.a0 = s.a0;
    opt.b0 = s.b0;
    opt.walkers = cfg.walkers;
    opt.cache_capacity = cfg.cache_capacity;
    const auto res = ak::simulate(g, cfg.engine, cfg.ticks, cfg.seed, opt);
    ak::write_trajectory_file(res.trajectory, cfg.trajectory_path);

    const auto& sum = res.summary;
    std::cout << "engine: " << ak::engine_name(sum.engine) << "\nticks: " << res.trajectory.ticks() - 1
              << "\nblocks: " << sum.blocks << "\nmax_block_length: " << sum.max_block_length << "\n";
    if (sum.engine == ak::EngineKind::cubic) {
        std::cout << "scenarios:";
        for (std::size_t i = 0; i < ak::kScenarioCount; ++i) {
            std::cout << " " << ak::scenario_name(static_cast<ak::Scenario>(i)) << "=" << sum.scenarios[i];
        }
        std::cout << "\n";
    }
    if (sum.engine == ak::EngineKind::regular) std::cout << "invariant_checks: " << sum.invariant_checks << "\n";
    if (sum.engine != ak::EngineKind::cycle) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", sum.cache_hit_rate);
        std::cout << "cache_hit_rate: " << buf << "\n";
    }
    const auto violations = ak::check_avoidance(g, res.trajectory);
    std::cout << "violations: " << violations.size() << "\n";
    return violations.empty() ? kOk : kDomain;
}

struct VerifyArgs {
    std::string graph, traj, config, json;
    std::optional<double> alpha;
    std::optional<std::uint64_t> min_departures;
};

int cmd_verify(const VerifyArgs& v) {
    auto cfg = v.config.empty() ? ak::RunConfig{} : ak::read_config_file(v.config);
    if (v.alpha) cfg.alpha = *v.alpha;
    if (v.min_departures) cfg.min_departures = *v.min_departures;
    ak::validate(cfg);
    const auto g = load_graph(v.graph);
    const auto traj = ak::read_trajectory_file(v.traj);
    const auto report = ak::verify_trajectory(g, traj, cfg.alpha, cfg.min_departures);
    std::cout << ak::format_report_text(report);
    const auto json_path = v.json.empty() ? cfg.report_path : v.json;
    if (!json_path.empty()) write_text(json_path, ak::format_report_json(report));
    return report.clean() ? kOk : kDomain;
}

struct OracleArgs {
    std::string which, graph;
    std::optional<ak::VertexId> a, b, e;
    std::optional<std::size_t> d;
};

int cmd_oracle(const OracleArgs& o) {
    const auto g = load_graph(o.graph);
    if (o.which == "lemma31") {
        const auto prof = ak::basic_profile(g);
        const auto d = o.d ? *o.d : prof.regular_degree.value_or(0);
        const auto r = ak::lemma31_equivalence(g, d);
        std::cout << "d: " << d << "\nH_d-free: " << r.hd_free
                  << "\nclosed neighbourhoods distinct: " << r.closed_neighborhoods_distinct
                  << "\ndifference sets nonempty: " << r.differences_nonempty << "\nagree: " << r.agree() << "\n";
        return r.agree() ? kOk : kDomain;
    }
    if (o.which == "lemma34") {
        std::vector<std::array<ak::VertexId, 3>> triples;
        if (o.a && o.b && o.e) {
            triples.push_back({*o.a, *o.b, *o.e});
        } else if (o.a || o.b || o.e) {
            throw ak::UsageError("give all of --a --b --e or none");
        } else {
            for (ak::VertexId a = 0; a < g.order(); ++a) {
                for (const auto& [b, e] : ak::valid_regular_partners(g, a)) triples.push_back({a, b, e});
            }
        }
        std::size_t failures = 0;
        std::uint64_t subsets = 0;
        for (const auto& [a, b, e] : triples) {
            const auto r = ak::lemma34_oracle(g, a, b, e);
            subsets += r.subsets;
            if (!r.holds) {
                ++failures;
                std::cout << "fails at (a,b,e)=(" << a << "," << b << "," << e << "): |A0|=" << r.worst_subset.size()
                          << " |cmp|=" << r.worst_cmp << " subset " << pair_list(r.worst_subset) << "\n";
            }
        }
        std::cout << "triples: " << triples.size() << "\nsubsets: " << subsets << "\nfailures: " << failures << "\n";
        return failures == 0 ? kOk : kDomain;
    }
    if (o.which == "lemma42") {
        std::vector<std::pair<ak::VertexId, ak::VertexId>> pairs;
        if (o.a && o.b) {
            pairs.emplace_back(*o.a, *o.b);
        } else if (o.a || o.b) {
            throw ak::UsageError("give both --a and --b or neither");
        } else {
            for (ak::VertexId a = 0; a < g.order(); ++a) {
                for (ak::VertexId b = 0; b < g.order(); ++b) {
                    if (a != b && !g.adjacent(a, b)) pairs.emplace_back(a, b);
                }
            }
        }
        std::size_t failures = 0;
        std::uint64_t subsets = 0;
        for (const auto& [a, b] : pairs) {
            const auto r = ak::lemma42_oracle(g, a, b);
            subsets += r.subsets;
            if (!r.holds) {
                ++failures;
                std::cout << "fails at (a,b)=(" << a << "," << b << "): |N0|=" << r.worst_subset.size()
                          << " |cmp|=" << r.worst_cmp << "\n";
            }
        }
        std::cout << "pairs: " << pairs.size() << "\nsubsets: " << subsets << "\nfailures: " << failures << "\n";
        return failures == 0 ? kOk : kDomain;
    }
    throw ak::UsageError("unknown oracle '" + o.which + "' (lemma31, lemma34, lemma42)");
}

struct ExperimentArgs {
    std::string kind = "prevalence";
    std::size_t d = 3;
    std::string n_list = "16,32,64,128";
    std::uint64_t samples = 500;
    std::uint64_t seed = 1;
    bool simple = false;
    std::size_t threads = 0;
    std::size_t budget = 100000;
    std::string out;
};

int cmd_experiment(const ExperimentArgs& x) {
    if (x.kind != "prevalence") throw ak::UsageError("unknown experiment '" + x.kind + "'");
    ak::PrevalenceSpec spec;
    spec.d = x.d;
    spec.n_list = parse_list(x.n_list);
    spec.samples = x.samples;
    spec.seed = x.seed;
    spec.simple_connected = x.simple;
    spec.threads = x.threads;
    spec.rejection_budget = x.budget;
    const auto res = ak::run_prevalence(spec);
    write_text(x.out, ak::format_prevalence_csv(res.rows));
    if (!x.simple) {
        for (std::size_t i = 0; i < res.rows.size(); ++i) {
            std::cerr << "n=" << res.rows[i].n << ": " << res.with_loops[i] << " sample(s) with loops, "
                      << res.with_multi_edges[i] << " with repeated edges\n";
        }
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Avoidance couplings of two random walkers on graphs"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* g = app.add_subcommand("gen", "Generate a graph in edge-list format");
    g->add_option("--family", gen.family, "cycle, complete, complete_bipartite, petersen, heawood, circulant, "
                                          "configuration_model, random_regular")
        ->required();
    g->add_option("--n", gen.n, "Order (first part for complete_bipartite)");
    g->add_option("--q", gen.q, "Second part for complete_bipartite");
    g->add_option("--d", gen.d, "Degree for the random families");
    g->add_option("--offsets", gen.offsets, "Circulant offsets, comma separated");
    g->add_option("--seed", gen.seed, "Seed for the random families");
    g->add_flag("--connected", gen.connected, "Reject disconnected samples (random_regular)");
    g->add_option("--budget", gen.budget, "Rejection budget");
    g->add_option("-o,--output", gen.out, "Output path (default stdout)");

    std::string analyze_path;
    auto* an = app.add_subcommand("analyze", "Profile a graph and pick a coupling engine");
    an->add_option("graph", analyze_path)->required();

    TransportArgs tr;
    auto* tp = app.add_subcommand("transport", "Print the transport matrix for a position triple");
    tp->add_option("graph", tr.graph)->required();
    tp->add_option("--a", tr.a)->required();
    tp->add_option("--b", tr.b)->required();
    tp->add_option("--e", tr.e, "Excluded vertex (regular engine); omit for the square-free engine");

    SimulateArgs sim;
    auto* sm = app.add_subcommand("simulate", "Run a coupling and write its trajectory");
    sm->add_option("graph", sim.graph)->required();
    sm->add_option("--config", sim.config, "Key-value config file; flags override it");
    sm->add_option("--ticks", sim.ticks);
    sm->add_option("--seed", sim.seed);
    sm->add_option("--engine", sim.engine, "auto, cubic, regular, squarefree, cycle");
    sm->add_option("--walkers", sim.walkers, "Walker count (cycle engine)");
    sm->add_option("--cache", sim.cache, "Matching cache capacity");
    sm->add_option("--a0", sim.a0);
    sm->add_option("--b0", sim.b0);
    sm->add_option("-o,--output", sim.out);

    VerifyArgs ver;
    auto* vf = app.add_subcommand("verify", "Check a trajectory for avoidance and faithfulness");
    vf->add_option("graph", ver.graph)->required();
    vf->add_option("trajectory", ver.traj)->required();
    vf->add_option("--config", ver.config);
    vf->add_option("--alpha", ver.alpha, "Family-wise significance level");
    vf->add_option("--min-departures", ver.min_departures, "Departures needed before a row is tested");
    vf->add_option("--json", ver.json, "Also write a JSON report here");

    OracleArgs orc;
    auto* oc = app.add_subcommand("oracle", "Brute-force lemma checks");
    oc->add_option("lemma", orc.which, "lemma31, lemma34, lemma42")->required();
    oc->add_option("graph", orc.graph)->required();
    oc->add_option("--a", orc.a);
    oc->add_option("--b", orc.b);
    oc->add_option("--e", orc.e);
    oc->add_option("--d", orc.d);

    ExperimentArgs exp;
    auto* ex = app.add_subcommand("experiment", "Monte-Carlo experiments");
    ex->add_option("kind", exp.kind, "prevalence");
    ex->add_option("--d", exp.d);
    ex->add_option("--n", exp.n_list, "Comma-separated orders");
    ex->add_option("--samples", exp.samples);
    ex->add_option("--seed", exp.seed);
    ex->add_flag("--simple", exp.simple, "Sample simple connected graphs by rejection");
    ex->add_option("--threads", exp.threads, "Worker count (0 = all cores, capped by AVOIDKIT_THREADS)");
    ex->add_option("--budget", exp.budget, "Rejection budget for --simple");
    ex->add_option("-o,--output", exp.out, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInput;
    }

    try {
        if (*g) return cmd_gen(gen);
        if (*an) return cmd_analyze(analyze_path);
        if (*tp) return cmd_transport(tr);
        if (*sm) return cmd_simulate(sim);
        if (*vf) return cmd_verify(ver);
        if (*oc) return cmd_oracle(orc);
        if (*ex) return cmd_experiment(exp);
    } catch (const ak::ParseError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kInput;
    } catch (const ak::UsageError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kInput;
    } catch (const ak::Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kDomain;
    }
    return kInput;
}
