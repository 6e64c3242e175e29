#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/SVD>

#include "graph.hpp"

namespace l1gft {

/// Ordered list of disjoint vertex blocks covering 0..n-1; the columns of the
/// 0/1 matrix M are the block indicator vectors in list order.
class PartitionMatrix {
public:
    PartitionMatrix() = default;

    PartitionMatrix(std::size_t n, std::vector<VertexSet> blocks)
        : n_(n), blocks_(std::move(blocks)), owner_(n, 0)
    {
        if (blocks_.empty() || blocks_.size() > n)
            fail(ErrorCode::InvalidParameter, "partition must have 1..N blocks");
        std::vector<char> seen(n, 0);
        for (std::size_t b = 0; b < blocks_.size(); ++b) {
            for (auto v : blocks_[b]) {
                if (v >= n)
                    fail(ErrorCode::IndexOutOfRange, "vertex " + std::to_string(v + 1));
                if (seen[v])
                    fail(ErrorCode::InvalidParameter, "blocks overlap at vertex " + std::to_string(v + 1));
                seen[v] = 1;
                owner_[v] = b;
            }
        }
        if (std::find(seen.begin(), seen.end(), 0) != seen.end())
            fail(ErrorCode::InvalidParameter, "blocks do not cover all vertices");
    }

    /// Build from a block label per vertex (labels 0..m-1, all used).
    static PartitionMatrix from_labels(std::span<const std::size_t> label, std::size_t m)
    {
        std::vector<std::vector<std::size_t>> members(m);
        for (std::size_t v = 0; v < label.size(); ++v)
            members.at(label[v]).push_back(v);
        std::vector<VertexSet> blocks;
        blocks.reserve(m);
        for (auto& mem : members)
            blocks.emplace_back(std::move(mem));
        return PartitionMatrix(label.size(), std::move(blocks));
    }

    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] std::size_t m() const noexcept { return blocks_.size(); }
    [[nodiscard]] const std::vector<VertexSet>& blocks() const noexcept { return blocks_; }
    [[nodiscard]] const VertexSet& block(std::size_t j) const { return blocks_.at(j); }
    /// Index of the block containing vertex v.
    [[nodiscard]] std::size_t block_of(std::size_t v) const { return owner_.at(v); }

    [[nodiscard]] Matrix dense() const
    {
        Matrix out = Matrix::Zero(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(m()));
        for (std::size_t v = 0; v < n_; ++v)
            out(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(owner_[v])) = 1.0;
        return out;
    }

    /// M a.
    [[nodiscard]] Signal expand(const Vector& a) const
    {
        if (static_cast<std::size_t>(a.size()) != m())
            fail(ErrorCode::DimensionMismatch, "value vector length != block count");
        Signal x(static_cast<Eigen::Index>(n_));
        for (std::size_t v = 0; v < n_; ++v)
            x(static_cast<Eigen::Index>(v)) = a(static_cast<Eigen::Index>(owner_[v]));
        return x;
    }

    friend bool operator==(const PartitionMatrix& a, const PartitionMatrix& b)
    {
        return a.n_ == b.n_ && a.blocks_ == b.blocks_;
    }

private:
    std::size_t n_ = 0;
    std::vector<VertexSet> blocks_;
    std::vector<std::size_t> owner_;
};

/// x = M a with a strictly increasing.
struct PiecewiseRepresentation {
    PartitionMatrix partition;
    Vector values;

    [[nodiscard]] Signal reconstruct() const { return partition.expand(values); }
};

/// Level-set factorization of x. Components are grouped by exact equality.
inline PiecewiseRepresentation piecewise_rep(const Signal& x)
{
    const auto n = static_cast<std::size_t>(x.size());
    if (n == 0)
        fail(ErrorCode::InvalidParameter, "empty signal");
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (!std::isfinite(x(i)))
            fail(ErrorCode::InvalidParameter, "signal has non-finite component");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return x(a) < x(b); });

    std::vector<VertexSet> blocks;
    std::vector<double> values;
    std::vector<std::size_t> current;
    for (auto v : order) {
        if (current.empty() || x(v) != values.back()) {
            if (!current.empty())
                blocks.emplace_back(std::move(current));
            current.clear();
            values.push_back(x(v));
        }
        current.push_back(v);
    }
    blocks.emplace_back(std::move(current));
    return {PartitionMatrix(n, std::move(blocks)),
            Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()))};
}

/// f with S(M a') = f' a' for every strictly increasing a'.
/// f_i = sum_{j<i} W(A_i, A_j) - sum_{j>i} W(A_i, A_j).
inline Vector local_linear_form(const Graph& g, const PartitionMatrix& m)
{
    if (m.n() != g.n())
        fail(ErrorCode::DimensionMismatch, "partition size != vertex count");
    if (m.m() < 2)
        fail(ErrorCode::SingleBlock, "variation is identically zero on a single block");
    Vector f = Vector::Zero(static_cast<Eigen::Index>(m.m()));
    for (const auto& e : g.edges()) {
        const auto bi = m.block_of(e.i);
        const auto bj = m.block_of(e.j);
        if (bi == bj)
            continue;
        const auto lo = static_cast<Eigen::Index>(std::min(bi, bj));
        const auto hi = static_cast<Eigen::Index>(std::max(bi, bj));
        f(hi) += e.w;
        f(lo) -= e.w;
    }
    return f;
}

/// Relative cutoff below which singular values count as zero.
inline constexpr double rank_tolerance = 1e-9;

/// Nullity (column count minus numerical rank) of a small dense matrix.
inline std::size_t nullity(const Matrix& a)
{
    const auto cols = static_cast<std::size_t>(a.cols());
    if (a.rows() == 0)
        return cols;
    Eigen::JacobiSVD<Matrix> svd(a);
    const Vector& s = svd.singularValues();
    const double smax = s.size() > 0 ? s.maxCoeff() : 0.0;
    const double cut = rank_tolerance * (smax > 0.0 ? smax : 1.0);
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cut)
            ++rank;
    return cols - rank;
}

/// U' M, formed by summing the rows of U over each block.
inline Matrix constrained_block_matrix(const Matrix& u, const PartitionMatrix& m)
{
    if (static_cast<std::size_t>(u.rows()) != m.n())
        fail(ErrorCode::DimensionMismatch, "U rows != partition size");
    Matrix out = Matrix::Zero(u.cols(), static_cast<Eigen::Index>(m.m()));
    for (std::size_t v = 0; v < m.n(); ++v)
        out.col(static_cast<Eigen::Index>(m.block_of(v))) += u.row(static_cast<Eigen::Index>(v)).transpose();
    return out;
}

/// dim ker(U' M). U must have full column rank.
inline std::size_t kernel_dimension(const Matrix& u, const PartitionMatrix& m)
{
    if (u.cols() == 0 || u.cols() >= u.rows())
        fail(ErrorCode::DimensionMismatch, "U must be N x (k-1) with 1 <= k-1 < N");
    if (nullity(u) != 0)
        fail(ErrorCode::RankDeficientU, "U does not have full column rank");
    return nullity(constrained_block_matrix(u, m));
}

/// Membership test for the critical partition set: dim ker(U' M) == 1.
inline bool satisfies_necessary_condition(const Matrix& u, const PartitionMatrix& m)
{
    return kernel_dimension(u, m) == 1;
}

} // namespace l1gft
