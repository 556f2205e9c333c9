#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "avoidkit/graph.hpp"
#include "avoidkit/trajectory.hpp"
#include "avoidkit/transport.hpp"

namespace avoidkit {

using Rational = boost::rational<std::int64_t>;

// --- avoidance ----------------------------------------------------------------

enum class ViolationKind { collision_same_tick, collision_swap, adjacency_at_block_end, non_edge_step };
std::string violation_name(ViolationKind kind);

struct Violation {
    std::uint64_t tick = 0;
    ViolationKind kind = ViolationKind::collision_same_tick;
    std::vector<VertexId> detail;  // the walkers' vertices involved
    bool operator==(const Violation&) const = default;
};

// Walker i moves after every walker h < i within a tick, so the checks are
// P_i(t) ≠ P_h(t) and P_h(t+1) ≠ P_i(t) for h < i. On the cubic and
// square-free engines the walkers must also be non-adjacent at each block
// start. Throws UsageError if the trajectory was not produced on `g`.
std::vector<Violation> check_avoidance(const Graph& g, const Trajectory& traj);

// --- exact laws -----------------------------------------------------------------

struct FirstStepLaw {
    std::map<VertexId, Rational> alice;
    std::map<VertexId, Rational> bob;
    // Probability of excursions cut at the enumeration depth (S6 only). The
    // first-step laws above already include it.
    Rational residual{0};
};

inline constexpr std::size_t kExcursionDepth = 16;

// Enumerates every random choice of the cubic block coupler at (a, b).
FirstStepLaw exact_cubic_marginals(const Graph& g, VertexId a, VertexId b, std::size_t depth = kExcursionDepth);

// Exact first-step law of the square-free engine at (a, b).
FirstStepLaw exact_squarefree_marginals(const SquarefreeTransport& t);

bool is_uniform_over(const std::map<VertexId, Rational>& law, std::span<const VertexId> support);

struct RegularIndexLaws {
    std::vector<Rational> I;                     // P(I = i)
    std::vector<std::vector<Rational>> K_given_I;  // P(K = k | I = i)
    std::vector<Rational> J;                     // P(J = j)
    std::vector<std::vector<Rational>> L_given_J;  // P(L = l | J = j)
};

// Certifies the sum identities first (CertificationError names the index).
RegularIndexLaws exact_regular_index_laws(const RegularTransport& t, const Graph& g);
bool regular_laws_uniform(const RegularIndexLaws& laws, std::size_t d);

// --- chi-square faithfulness ---------------------------------------------------

inline constexpr std::uint64_t kDefaultMinDepartures = 30;
inline constexpr double kDefaultAlpha = 0.001;

struct FaithfulnessCell {
    std::size_t walker = 0;
    VertexId vertex = 0;
    std::uint64_t departures = 0;
    std::vector<std::uint64_t> counts;  // in N(vertex) order
    bool tested = false;
    double statistic = 0.0;
    std::size_t dof = 0;
    double p_value = 1.0;
};

struct FaithfulnessReport {
    std::vector<FaithfulnessCell> cells;
    std::size_t tested = 0;
    double alpha = kDefaultAlpha;
    double threshold = 0.0;  // alpha / tested
    double min_p = 1.0;
    std::size_t failures = 0;
    bool pass = true;
};

// Pearson chi-square of each (walker, vertex) transition row against the
// uniform law on N(vertex), Bonferroni over the tested rows.
FaithfulnessReport chi_square_faithfulness(const Graph& g, const Trajectory& traj, double alpha = kDefaultAlpha,
                                           std::uint64_t min_departures = kDefaultMinDepartures);

// --- analytic bound ------------------------------------------------------------

// n^{n0} · (d / (n − 2m))^m, evaluated in logarithms. Needs m > n0 and n > 2m.
double hd_log_probability_upper_bound(double n, double d, double n0, double m_edges);
double hd_probability_upper_bound(double n, double d, double n0, double m_edges);

// --- report --------------------------------------------------------------------

struct VerifyReport {
    std::vector<Violation> violations;
    FaithfulnessReport faithfulness;
    bool clean() const { return violations.empty() && faithfulness.pass; }
};

VerifyReport verify_trajectory(const Graph& g, const Trajectory& traj, double alpha = kDefaultAlpha,
                               std::uint64_t min_departures = kDefaultMinDepartures);
std::string format_report_text(const VerifyReport& report, std::size_t max_listed = 20);
std::string format_report_json(const VerifyReport& report);

}  // namespace avoidkit
