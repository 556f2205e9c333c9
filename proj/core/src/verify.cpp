#include "avoidkit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/distributions/chi_squared.hpp>
#include "json.hpp"

#include "avoidkit/couplers.hpp"
#include "avoidkit/errors.hpp"
#include "avoidkit/structure.hpp"

namespace avoidkit {

std::string violation_name(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::collision_same_tick:
            return "collision_same_tick";
        case ViolationKind::collision_swap:
            return "collision_swap";
        case ViolationKind::adjacency_at_block_end:
            return "adjacency_at_block_end";
        case ViolationKind::non_edge_step:
            return "non_edge_step";
    }
    return "?";
}

std::vector<Violation> check_avoidance(const Graph& g, const Trajectory& traj) {
    if (traj.graph_digest != g.digest()) {
        throw UsageError("trajectory digest " + to_hex(traj.graph_digest) + " does not match graph digest " +
                         to_hex(g.digest()));
    }
    const auto k = traj.walkers;
    const auto ticks = traj.ticks();
    std::vector<Violation> out;
    for (VertexId v : traj.positions) {
        if (!g.contains(v)) throw UsageError("trajectory position " + std::to_string(v) + " is not a vertex");
    }
    for (std::size_t t = 0; t < ticks; ++t) {
        for (std::size_t i = 0; i < k; ++i) {
            const VertexId pi = traj.at(t, i);
            for (std::size_t h = 0; h < i; ++h) {
                if (traj.at(t, h) == pi) out.push_back({t, ViolationKind::collision_same_tick, {traj.at(t, h), pi}});
            }
            if (t + 1 < ticks) {
                if (!g.adjacent(pi, traj.at(t + 1, i))) {
                    out.push_back({t, ViolationKind::non_edge_step, {pi, traj.at(t + 1, i)}});
                }
                for (std::size_t h = 0; h < i; ++h) {
                    if (traj.at(t + 1, h) == pi) {
                        out.push_back({t, ViolationKind::collision_swap, {traj.at(t + 1, h), pi}});
                    }
                }
            }
        }
    }
    if ((traj.engine == EngineKind::cubic || traj.engine == EngineKind::squarefree) && k == 2) {
        for (auto t : traj.block_starts) {
            if (t >= ticks) continue;
            if (g.adjacent(traj.at(t, 0), traj.at(t, 1))) {
                out.push_back({t, ViolationKind::adjacency_at_block_end, {traj.at(t, 0), traj.at(t, 1)}});
            }
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const Violation& x, const Violation& y) { return x.tick < y.tick; });
    return out;
}

namespace {

void add(std::map<VertexId, Rational>& law, VertexId v, const Rational& p) {
    auto [it, inserted] = law.emplace(v, p);
    if (!inserted) it->second += p;
}

// Strategy 3 of the excursion coupling, entered with Alice at path.back().
void enumerate_excursion(const Graph& g, const K22Layout& L, std::vector<VertexId>& path, Rational p,
                         std::size_t depth, FirstStepLaw& law) {
    const auto v = path.back();
    if (v == L.a || v == L.b) {
        // path.size() >= 2 here since Alice starts inside the K_{2,2}.
        if (path.size() == 2) {
            add(law.bob, L.b1, p / 2);
            add(law.bob, L.b2, p / 2);
        } else {
            add(law.bob, L.partner(path[1]), p);
        }
        return;
    }
    if (path.size() >= depth && path.size() >= 2) {
        // Cut here; Bob's first step is already fixed by path[1].
        law.residual += p;
        add(law.bob, L.partner(path[1]), p);
        return;
    }
    const auto nb = g.neighbors(v);
    const Rational q = p / static_cast<std::int64_t>(nb.size());
    for (VertexId w : nb) {
        path.push_back(w);
        enumerate_excursion(g, L, path, q, depth, law);
        path.pop_back();
    }
}

}  // namespace

FirstStepLaw exact_cubic_marginals(const Graph& g, VertexId a, VertexId b, std::size_t depth) {
    if (depth < 2) throw UsageError("excursion depth must be at least 2");
    const auto plan = plan_cubic(g, a, b);
    FirstStepLaw law;
    switch (plan.scenario.tag) {
        case Scenario::S1: {
            for (VertexId x : g.neighbors(a)) add(law.alice, x, Rational(1, static_cast<std::int64_t>(g.degree(a))));
            for (VertexId y : g.neighbors(b)) add(law.bob, y, Rational(1, static_cast<std::int64_t>(g.degree(b))));
            break;
        }
        case Scenario::S3b:
            for (const auto& row : plan.table) {
                add(law.alice, row.alice1, Rational(1, 9));
                add(law.bob, row.bob1, Rational(1, 9));
            }
            break;
        case Scenario::S6: {
            const auto& L = *plan.layout;
            const Rational third(1, 3);
            add(law.alice, L.ca, third);
            add(law.bob, L.b1, third / 2);
            add(law.bob, L.b2, third / 2);
            add(law.alice, L.a1, third / 2);
            add(law.alice, L.a2, third / 2);
            add(law.bob, L.cb, third);
            for (VertexId start : {L.a1, L.a2}) {
                add(law.alice, start, third / 2);
                std::vector<VertexId> path{start};
                enumerate_excursion(g, L, path, third / 2, depth, law);
            }
            break;
        }
        default: {
            const Rational share(1, static_cast<std::int64_t>(plan.matching.size()));
            for (const auto& [x, y] : plan.matching) {
                add(law.alice, x, share);
                add(law.bob, y, share);
            }
            break;
        }
    }
    return law;
}

FirstStepLaw exact_squarefree_marginals(const SquarefreeTransport& t) {
    FirstStepLaw law;
    const auto k = static_cast<std::int64_t>(t.rows.size());
    const auto l = static_cast<std::int64_t>(t.cols.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        for (std::size_t j = 0; j < t.cols.size(); ++j) {
            if (t.m(i, j) == 0) continue;
            const Rational p(t.m(i, j), k * l);
            const VertexId alice = t.swapped ? t.cols[j] : t.rows[i];
            const VertexId bob = t.swapped ? t.rows[i] : t.cols[j];
            add(law.alice, alice, p);
            add(law.bob, bob, p);
        }
    }
    return law;
}

bool is_uniform_over(const std::map<VertexId, Rational>& law, std::span<const VertexId> support) {
    if (law.size() != support.size() || support.empty()) return false;
    const Rational each(1, static_cast<std::int64_t>(support.size()));
    for (VertexId v : support) {
        auto it = law.find(v);
        if (it == law.end() || it->second != each) return false;
    }
    return true;
}

RegularIndexLaws exact_regular_index_laws(const RegularTransport& t, const Graph& g) {
    certify(t, g);
    const auto d = t.d;
    const auto total = t.total();
    RegularIndexLaws laws;
    laws.I.assign(d - 1, Rational(0));
    laws.K_given_I.assign(d - 1, std::vector<Rational>(d, Rational(0)));
    laws.J.assign(d, Rational(0));
    laws.L_given_J.assign(d, std::vector<Rational>(d, Rational(0)));
    for (std::size_t i = 0; i + 1 < d; ++i) {
        for (std::size_t k = 0; k < d; ++k) {
            for (std::size_t j = 0; j < d; ++j) {
                for (std::size_t l = 0; l < d; ++l) {
                    const Rational p(t.at(i, j, k, l), total);
                    laws.I[i] += p;
                    laws.K_given_I[i][k] += p;
                    laws.J[j] += p;
                    laws.L_given_J[j][l] += p;
                }
            }
        }
    }
    for (std::size_t i = 0; i + 1 < d; ++i) {
        if (laws.I[i].numerator() == 0) throw CertificationError("index I = " + std::to_string(i) + " has zero mass");
        for (auto& p : laws.K_given_I[i]) p /= laws.I[i];
    }
    for (std::size_t j = 0; j < d; ++j) {
        if (laws.J[j].numerator() == 0) throw CertificationError("index J = " + std::to_string(j) + " has zero mass");
        for (auto& p : laws.L_given_J[j]) p /= laws.J[j];
    }
    return laws;
}

bool regular_laws_uniform(const RegularIndexLaws& laws, std::size_t d) {
    const auto D = static_cast<std::int64_t>(d);
    const auto all = [](const std::vector<Rational>& v, Rational x) {
        return std::all_of(v.begin(), v.end(), [&](const Rational& p) { return p == x; });
    };
    if (!all(laws.I, Rational(1, D - 1))) return false;
    for (const auto& row : laws.K_given_I) {
        if (!all(row, Rational(1, D))) return false;
    }
    if (!all(laws.J, Rational(1, D))) return false;
    for (const auto& row : laws.L_given_J) {
        if (!all(row, Rational(1, D))) return false;
    }
    return true;
}

FaithfulnessReport chi_square_faithfulness(const Graph& g, const Trajectory& traj, double alpha,
                                           std::uint64_t min_departures) {
    if (traj.graph_digest != g.digest()) throw UsageError("trajectory digest does not match graph digest");
    if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError("alpha must lie in (0, 1)");
    const auto n = g.order();
    const auto k = traj.walkers;
    // Slot of each (v, w) edge within N(v).
    std::vector<std::size_t> offset(n + 1, 0);
    for (VertexId v = 0; v < n; ++v) offset[v + 1] = offset[v] + g.degree(v);
    std::vector<std::uint64_t> counts(k * offset[n], 0);
    for (std::size_t t = 0; t + 1 < traj.ticks(); ++t) {
        for (std::size_t w = 0; w < k; ++w) {
            const VertexId from = traj.at(t, w);
            const VertexId to = traj.at(t + 1, w);
            const auto nb = g.neighbors(from);
            const auto it = std::lower_bound(nb.begin(), nb.end(), to);
            if (it == nb.end() || *it != to) continue;  // reported by check_avoidance
            ++counts[w * offset[n] + offset[from] + static_cast<std::size_t>(it - nb.begin())];
        }
    }

    FaithfulnessReport rep;
    rep.alpha = alpha;
    for (std::size_t w = 0; w < k; ++w) {
        for (VertexId v = 0; v < n; ++v) {
            FaithfulnessCell cell;
            cell.walker = w;
            cell.vertex = v;
            const auto deg = g.degree(v);
            const auto* row = &counts[w * offset[n] + offset[v]];
            cell.counts.assign(row, row + deg);
            for (auto c : cell.counts) cell.departures += c;
            if (deg >= 2 && cell.departures >= min_departures) {
                cell.tested = true;
                cell.dof = deg - 1;
                const double expected = static_cast<double>(cell.departures) / static_cast<double>(deg);
                for (auto c : cell.counts) {
                    const double diff = static_cast<double>(c) - expected;
                    cell.statistic += diff * diff / expected;
                }
                boost::math::chi_squared dist(static_cast<double>(cell.dof));
                cell.p_value = boost::math::cdf(boost::math::complement(dist, cell.statistic));
                ++rep.tested;
            }
            rep.cells.push_back(std::move(cell));
        }
    }
    rep.threshold = rep.tested > 0 ? alpha / static_cast<double>(rep.tested) : alpha;
    for (const auto& cell : rep.cells) {
        if (!cell.tested) continue;
        rep.min_p = std::min(rep.min_p, cell.p_value);
        if (cell.p_value < rep.threshold) ++rep.failures;
    }
    rep.pass = rep.failures == 0;
    return rep;
}

double hd_log_probability_upper_bound(double n, double d, double n0, double m_edges) {
    if (!(m_edges > n0)) throw UsageError("bound needs m > n0");
    if (!(n > 2 * m_edges)) throw UsageError("bound needs n > 2m");
    if (!(d > 0)) throw UsageError("bound needs d > 0");
    return n0 * std::log(n) + m_edges * (std::log(d) - std::log(n - 2 * m_edges));
}

double hd_probability_upper_bound(double n, double d, double n0, double m_edges) {
    return std::exp(hd_log_probability_upper_bound(n, d, n0, m_edges));
}

VerifyReport verify_trajectory(const Graph& g, const Trajectory& traj, double alpha, std::uint64_t min_departures) {
    VerifyReport rep;
    rep.violations = check_avoidance(g, traj);
    rep.faithfulness = chi_square_faithfulness(g, traj, alpha, min_departures);
    return rep;
}

std::string format_report_text(const VerifyReport& report, std::size_t max_listed) {
    std::ostringstream out;
    out << "violations: " << report.violations.size() << "\n";
    for (std::size_t i = 0; i < report.violations.size() && i < max_listed; ++i) {
        const auto& v = report.violations[i];
        out << "  tick " << v.tick << " " << violation_name(v.kind);
        for (auto x : v.detail) out << " " << x;
        out << "\n";
    }
    if (report.violations.size() > max_listed) out << "  ...\n";
    const auto& f = report.faithfulness;
    std::size_t untested = f.cells.size() - f.tested;
    out << "faithfulness: " << (f.pass ? "pass" : "FAIL") << " (tested " << f.tested << ", untested " << untested
        << ", alpha " << f.alpha << ", per-cell threshold " << f.threshold << ", min p " << f.min_p << ", failures "
        << f.failures << ")\n";
    out << "verdict: " << (report.clean() ? "clean" : "violations found") << "\n";
    return out.str();
}

std::string format_report_json(const VerifyReport& report) {
    nlohmann::json j;
    j["clean"] = report.clean();
    auto& vs = j["violations"] = nlohmann::json::array();
    for (const auto& v : report.violations) {
        vs.push_back({{"tick", v.tick}, {"kind", violation_name(v.kind)}, {"detail", v.detail}});
    }
    const auto& f = report.faithfulness;
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : f.cells) {
        nlohmann::json cj{{"walker", c.walker},   {"vertex", c.vertex}, {"departures", c.departures},
                          {"counts", c.counts},   {"tested", c.tested}};
        if (c.tested) {
            cj["statistic"] = c.statistic;
            cj["dof"] = c.dof;
            cj["p_value"] = c.p_value;
        }
        cells.push_back(std::move(cj));
    }
    j["faithfulness"] = {{"pass", f.pass},           {"alpha", f.alpha},   {"tested", f.tested},
                         {"threshold", f.threshold}, {"min_p", f.min_p},   {"failures", f.failures},
                         {"cells", std::move(cells)}};
    return j.dump(2) + "\n";
}

}  // namespace avoidkit
