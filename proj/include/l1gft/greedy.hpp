#pragma once

// Greedy partition sequence and the Haar-like greedy basis built on it.
//
// Starting from singletons, the two groups with the largest mutual weight
// W(A, B) are merged until one group remains. Merge k (k = N..2) turns the
// partition tau_k into tau_{k-1}; basis vector k is the unit vector in
// span{1_A, 1_B} orthogonal to 1_{A u B}.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "piecewise.hpp"

namespace l1gft {

struct MergeRecord {
    /// Partition index: this merge takes tau_k to tau_{k-1}.
    std::size_t k = 0;
    /// A holds the smaller smallest member.
    VertexSet a;
    VertexSet b;
    double weight = 0.0;
};

/// N-1 merge records ordered k = N down to 2.
class MergeTree {
public:
    MergeTree() = default;

    /// Validates that the records replay tau_N -> tau_1: each A and B must be
    /// distinct groups of the partition current at that step.
    MergeTree(std::size_t n, std::vector<MergeRecord> merges) : n_(n), merges_(std::move(merges))
    {
        if (n == 0)
            fail(ErrorCode::InvalidParameter, "merge tree needs n >= 1");
        if (merges_.size() != n - 1)
            fail(ErrorCode::InvalidParameter, "merge tree needs exactly N-1 merges");
        // group[v] = smallest member of v's group
        std::vector<std::size_t> group(n);
        std::vector<std::size_t> size(n, 1);
        for (std::size_t v = 0; v < n; ++v)
            group[v] = v;
        std::size_t expect_k = n;
        for (auto& rec : merges_) {
            if (rec.k != expect_k)
                fail(ErrorCode::InvalidParameter, "merge records must run k = N..2");
            --expect_k;
            if (rec.b.front() < rec.a.front())
                std::swap(rec.a, rec.b);
            check_is_group(group, size, rec.a);
            check_is_group(group, size, rec.b);
            if (rec.a.front() == rec.b.front())
                fail(ErrorCode::InvalidParameter, "merge of a group with itself");
            const auto label = rec.a.front();
            for (auto v : rec.b)
                group[v] = label;
            size[label] += size[rec.b.front()];
        }
    }

    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] const std::vector<MergeRecord>& merges() const noexcept { return merges_; }
    /// Record for partition index k (2..N).
    [[nodiscard]] const MergeRecord& at_k(std::size_t k) const { return merges_.at(n_ - k); }

    /// Partitions tau_N, tau_{N-1}, ..., tau_1 as vertex-to-group-label maps,
    /// where each label is the group's smallest member.
    [[nodiscard]] std::vector<std::vector<std::size_t>> replay() const
    {
        std::vector<std::vector<std::size_t>> out;
        std::vector<std::size_t> group(n_);
        for (std::size_t v = 0; v < n_; ++v)
            group[v] = v;
        out.push_back(group);
        for (const auto& rec : merges_) {
            for (auto v : rec.b)
                group[v] = rec.a.front();
            out.push_back(group);
        }
        return out;
    }

private:
    static void check_is_group(const std::vector<std::size_t>& group,
                               const std::vector<std::size_t>& size, const VertexSet& s)
    {
        if (s.members().back() >= group.size())
            fail(ErrorCode::IndexOutOfRange, "merge references vertex beyond N");
        const auto label = group[s.front()];
        if (label != s.front() || size[label] != s.size())
            fail(ErrorCode::InvalidParameter, "merge operand is not a current group");
        for (auto v : s)
            if (group[v] != label)
                fail(ErrorCode::InvalidParameter, "merge operand is not a current group");
    }

    std::size_t n_ = 0;
    std::vector<MergeRecord> merges_;
};

/// Greedy agglomeration by largest mutual weight.
///
/// Keeps a dense group x group weight table indexed by group label (smallest
/// member) plus the exact row maximum of every active group. Merging A and B
/// only ever raises entries (W(A u B, C) = W(A, C) + W(B, C) >= both), so row
/// maxima update in O(1) per row and each merge costs O(N).
///
/// Ties: pairs within 1e-12 relative of the maximum are equivalent and the
/// lexicographically smallest (smaller label, larger label) pair is taken.
inline MergeTree build_merge_tree(const Graph& g)
{
    const std::size_t n = g.n();
    Matrix table = g.weights();
    std::vector<std::vector<std::size_t>> members(n);
    std::vector<std::size_t> active(n);
    Vector row_max(static_cast<Eigen::Index>(n));
    for (std::size_t v = 0; v < n; ++v) {
        members[v] = {v};
        active[v] = v;
        row_max(static_cast<Eigen::Index>(v)) = table.col(static_cast<Eigen::Index>(v)).maxCoeff();
    }

    std::vector<MergeRecord> merges;
    merges.reserve(n > 0 ? n - 1 : 0);
    for (std::size_t k = n; k >= 2; --k) {
        double best = 0.0;
        for (auto r : active)
            best = std::max(best, row_max(static_cast<Eigen::Index>(r)));
        if (!(best > 0.0))
            fail(ErrorCode::InternalError, "no positive-weight pair left to merge");
        const double cut = best - 1e-12 * best;

        std::size_t ra = n;
        for (auto r : active) {
            if (row_max(static_cast<Eigen::Index>(r)) >= cut) {
                ra = r;
                break;
            }
        }
        std::size_t rb = n;
        for (auto c : active) {
            if (c != ra && table(static_cast<Eigen::Index>(ra), static_cast<Eigen::Index>(c)) >= cut) {
                rb = c;
                break;
            }
        }
        if (ra == n || rb == n || rb < ra)
            fail(ErrorCode::InternalError, "merge selection lost track of the maximum");

        const auto ia = static_cast<Eigen::Index>(ra);
        const auto ib = static_cast<Eigen::Index>(rb);
        merges.push_back({k, VertexSet(members[ra]), VertexSet(members[rb]), table(ia, ib)});

        std::vector<std::size_t> joined;
        joined.reserve(members[ra].size() + members[rb].size());
        std::merge(members[ra].begin(), members[ra].end(), members[rb].begin(), members[rb].end(),
                   std::back_inserter(joined));
        members[ra] = std::move(joined);
        members[rb].clear();
        active.erase(std::find(active.begin(), active.end(), rb));

        double own_max = 0.0;
        for (auto c : active) {
            if (c == ra)
                continue;
            const auto ic = static_cast<Eigen::Index>(c);
            const double v = table(ia, ic) + table(ib, ic);
            table(ia, ic) = v;
            table(ic, ia) = v;
            row_max(ic) = std::max(row_max(ic), v);
            own_max = std::max(own_max, v);
        }
        row_max(ia) = own_max;
    }
    return MergeTree(n, std::move(merges));
}

/// Coefficients of basis vector k: a_k on A_k, b_k on B_k.
struct GreedyCoefficients {
    double a = 0.0;
    double b = 0.0;
    double t = 0.0;
};

inline GreedyCoefficients greedy_coefficients(std::size_t size_a, std::size_t size_b)
{
    const double na = static_cast<double>(size_a);
    const double nb = static_cast<double>(size_b);
    const double t = 1.0 / std::sqrt(na * nb * (na + nb));
    return {-t * nb, t * na, t};
}

struct GreedyBasis {
    /// Column k-1 holds basis vector k; column 0 is the constant vector.
    Matrix columns;
    MergeTree tree;
    /// Indexed like columns; entry 0 is unused.
    std::vector<GreedyCoefficients> coefficients;
};

inline GreedyBasis greedy_basis_from_tree(const MergeTree& tree)
{
    const auto n = tree.n();
    const auto ni = static_cast<Eigen::Index>(n);
    GreedyBasis out{Matrix::Zero(ni, ni), tree, std::vector<GreedyCoefficients>(n)};
    out.columns.col(0).setConstant(1.0 / std::sqrt(static_cast<double>(n)));
    for (const auto& rec : tree.merges()) {
        const auto c = greedy_coefficients(rec.a.size(), rec.b.size());
        const auto col = static_cast<Eigen::Index>(rec.k - 1);
        for (auto v : rec.a)
            out.columns(static_cast<Eigen::Index>(v), col) = c.a;
        for (auto v : rec.b)
            out.columns(static_cast<Eigen::Index>(v), col) = c.b;
        out.coefficients[rec.k - 1] = c;
    }
    return out;
}

inline GreedyBasis greedy_basis(const Graph& g)
{
    return greedy_basis_from_tree(build_merge_tree(g));
}

/// For each k = 2..N, checks dim ker(U_{k-1}' M) == 1 where U_{k-1} holds the
/// first k-1 greedy vectors and M = [1_{A_k}, 1_{B_k}, 1_{C_1}, ...] spans tau_k.
inline bool verify_critical_structure(const Graph& g, const GreedyBasis& basis)
{
    const auto n = basis.tree.n();
    if (g.n() != n || static_cast<std::size_t>(basis.columns.rows()) != n)
        fail(ErrorCode::DimensionMismatch, "basis and graph sizes differ");
    const auto partitions = basis.tree.replay();
    for (std::size_t k = 2; k <= n; ++k) {
        const auto& rec = basis.tree.at_k(k);
        const auto& group = partitions[n - k];
        // column order: A_k, B_k, then the remaining groups by label
        std::vector<std::size_t> col_of(n, n);
        col_of[rec.a.front()] = 0;
        col_of[rec.b.front()] = 1;
        std::size_t next = 2;
        for (std::size_t v = 0; v < n; ++v)
            if (group[v] == v && col_of[v] == n)
                col_of[v] = next++;
        if (next != k)
            return false;
        std::vector<std::size_t> label(n);
        for (std::size_t v = 0; v < n; ++v)
            label[v] = col_of[group[v]];
        const auto m = PartitionMatrix::from_labels(label, k);
        const Matrix um =
            constrained_block_matrix(basis.columns.leftCols(static_cast<Eigen::Index>(k - 1)), m);
        if (nullity(um) != 1)
            return false;
    }
    return true;
}

} // namespace l1gft
