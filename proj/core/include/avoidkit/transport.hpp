#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "avoidkit/errors.hpp"
#include "avoidkit/graph.hpp"

namespace avoidkit {

// Mover's two-step plan (a', a'').
struct MoverPair {
    VertexId first_step = 0;
    VertexId second_step = 0;
    bool operator==(const MoverPair&) const = default;
};

// Other walker's step and the exclusion it hands back: (b', e').
struct OtherPair {
    VertexId step = 0;
    VertexId next_excluded = 0;
    bool operator==(const OtherPair&) const = default;
    auto operator<=>(const OtherPair&) const = default;
};

// (a', a'') ⊢ (b', e'): b' ∉ {a', a''} and (a'' ∈ N(b') ⇒ e' = a'').
bool compatible(const Graph& g, MoverPair mover, OtherPair other);

// Throws UsageError unless b ≠ a and e ∈ N(a). Adjacent b forces e = b.
void check_regular_triple(const Graph& g, VertexId a, VertexId b, VertexId e);

// The mover's plans in (i, k) order: i over N(a) \ {e}, k over N(a_i).
std::vector<MoverPair> mover_pairs(const Graph& g, VertexId a, VertexId e);
// The other walker's plans in (j, l) order: j over N(b), l over N(b_j).
std::vector<OtherPair> other_pairs(const Graph& g, VertexId b);

// { (b', e') : some plan in A0 is compatible with it }, sorted.
std::vector<OtherPair> cmp_regular(const Graph& g, VertexId a, VertexId b, VertexId e,
                                   std::span<const MoverPair> subset);

// { b' ∈ N(b) : ∃ a' ∈ N0 with b' ∉ {a'} ∪ N(a') }, sorted. Needs b ∉ {a} ∪ N(a).
std::vector<VertexId> cmp_squarefree(const Graph& g, VertexId a, VertexId b, std::span<const VertexId> subset);

// Dense row-major nonnegative integer matrix.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), cells_(rows * cols, 0) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::int64_t& operator()(std::size_t r, std::size_t c) { return cells_[r * cols_ + c]; }
    std::int64_t operator()(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c]; }
    std::int64_t row_sum(std::size_t r) const;
    std::int64_t col_sum(std::size_t c) const;
    std::int64_t total() const;
    bool operator==(const IntMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::int64_t> cells_;
};

// Row-major allowed-cell mask.
struct Support {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<char> allowed;
    bool operator()(std::size_t r, std::size_t c) const { return allowed[r * cols + c] != 0; }
};

// Violated Hall set from a minimum cut: the rows' total supply exceeds the
// total demand of every column they are allowed to reach.
struct HallCertificate {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> neighbor_cols;
    std::int64_t supply = 0;
    std::int64_t demand = 0;
};

class InfeasibleError : public Error {
public:
    InfeasibleError(const std::string& what, HallCertificate cert) : Error(what), certificate_(std::move(cert)) {}
    const HallCertificate& certificate() const noexcept { return certificate_; }

private:
    HallCertificate certificate_;
};

// A coupling's transport was infeasible even though the graph hypotheses
// promise a solution. Carries the Hall certificate from the solver.
class HypothesisViolation : public InternalError {
public:
    HypothesisViolation(const std::string& what, HallCertificate cert)
        : InternalError(what), certificate_(std::move(cert)) {}
    const HallCertificate& certificate() const noexcept { return certificate_; }

private:
    HallCertificate certificate_;
};

// Integer transportation problem as max flow (Dinic, index-order scans).
// Returns m ≥ 0 on `allowed` with row sums = supplies, column sums = demands.
// Throws UsageError when the totals differ, InfeasibleError when no such m exists.
IntMatrix solve_transport(std::span<const std::int64_t> supplies, std::span<const std::int64_t> demands,
                          const Support& allowed);

// m(i, j, k, l) over 𝒜 × ℬ for the triple (a, b, e). Rows index (i, k) as
// i*d + k, columns index (j, l) as j*d + l.
struct RegularTransport {
    VertexId a = 0;
    VertexId b = 0;
    VertexId e = 0;
    std::size_t d = 0;
    std::vector<MoverPair> movers;   // size d(d-1), row order
    std::vector<OtherPair> others;   // size d², column order
    IntMatrix m;

    std::int64_t at(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
        return m(i * d + k, j * d + l);
    }
    std::int64_t total() const { return static_cast<std::int64_t>(d * d * (d - 1)); }
};

// Needs a d-regular neighbourhood around (a, b); throws HypothesisViolation
// when infeasible (H_d present?).
RegularTransport build_regular_transport(const Graph& g, VertexId a, VertexId b, VertexId e);

// Rows are the larger neighbourhood (k = |rows| ≥ l = |cols|); `swapped` means
// rows are N(b). Row sums l, column sums k, support b_j ∉ {a_i} ∪ N(a_i).
struct SquarefreeTransport {
    VertexId a = 0;
    VertexId b = 0;
    bool swapped = false;
    std::vector<VertexId> rows;
    std::vector<VertexId> cols;
    IntMatrix m;
};

SquarefreeTransport build_squarefree_transport(const Graph& g, VertexId a, VertexId b);

// Exact integer sum identities; throw CertificationError naming the index.
void certify(const RegularTransport& t, const Graph& g);
void certify(const SquarefreeTransport& t, const Graph& g);

std::string format_matrix(const IntMatrix& m);

}  // namespace avoidkit
