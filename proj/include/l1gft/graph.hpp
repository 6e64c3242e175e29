#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "error.hpp"
#include "random.hpp"

namespace l1gft {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Signal = Eigen::VectorXd;

/// Sorted, duplicate-free, non-empty set of 0-based vertex indices.
class VertexSet {
public:
    VertexSet() = default;

    explicit VertexSet(std::vector<std::size_t> members) : members_(std::move(members))
    {
        if (members_.empty())
            fail(ErrorCode::InvalidParameter, "vertex set must be non-empty");
        std::sort(members_.begin(), members_.end());
        if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
            fail(ErrorCode::InvalidParameter, "vertex set contains duplicates");
    }

    VertexSet(std::initializer_list<std::size_t> members)
        : VertexSet(std::vector<std::size_t>(members)) {}

    /// Build from 1-based labels as they appear in files and on the command line.
    static VertexSet from_one_based(std::span<const std::size_t> labels)
    {
        std::vector<std::size_t> m;
        m.reserve(labels.size());
        for (auto v : labels) {
            if (v == 0)
                fail(ErrorCode::IndexOutOfRange, "vertex labels are 1-based");
            m.push_back(v - 1);
        }
        return VertexSet(std::move(m));
    }

    [[nodiscard]] std::span<const std::size_t> members() const noexcept { return members_; }
    [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }
    [[nodiscard]] std::size_t front() const { return members_.front(); }
    [[nodiscard]] auto begin() const noexcept { return members_.begin(); }
    [[nodiscard]] auto end() const noexcept { return members_.end(); }

    [[nodiscard]] std::vector<std::size_t> one_based() const
    {
        std::vector<std::size_t> out(members_.begin(), members_.end());
        for (auto& v : out)
            ++v;
        return out;
    }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;
    friend auto operator<=>(const VertexSet&, const VertexSet&) = default;

private:
    std::vector<std::size_t> members_;
};

/// Positive-weight upper-triangle entry (i < j).
struct Edge {
    std::size_t i;
    std::size_t j;
    double w;
};

/// Connected, undirected, weighted graph with a dense symmetric weight matrix.
///
/// Construction validates the matrix (square, exact symmetry, zero diagonal,
/// nonnegative finite entries, connected); a Graph is immutable afterwards.
class Graph {
public:
    explicit Graph(Matrix weights) : w_(std::move(weights))
    {
        if (w_.rows() != w_.cols())
            fail(ErrorCode::DimensionMismatch, "weight matrix must be square");
        if (w_.rows() < 1)
            fail(ErrorCode::InvalidParameter, "graph needs at least one vertex");
        const auto n = static_cast<std::size_t>(w_.rows());
        for (std::size_t i = 0; i < n; ++i) {
            if (w_(i, i) != 0.0)
                fail(ErrorCode::SelfLoop, "nonzero diagonal at vertex " + std::to_string(i + 1));
            for (std::size_t j = 0; j < n; ++j) {
                const double v = w_(i, j);
                if (!std::isfinite(v))
                    fail(ErrorCode::ParseError, "non-finite weight");
                if (v < 0.0)
                    fail(ErrorCode::NegativeWeight,
                         "w(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") < 0");
                if (v != w_(j, i))
                    fail(ErrorCode::AsymmetricWeights,
                         "w(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") != w(" +
                             std::to_string(j + 1) + "," + std::to_string(i + 1) + ")");
                if (j > i && v > 0.0)
                    edges_.push_back({i, j, v});
            }
        }
        if (!connected())
            fail(ErrorCode::DisconnectedGraph, "graph has more than one component");
    }

    [[nodiscard]] std::size_t n() const noexcept { return static_cast<std::size_t>(w_.rows()); }
    [[nodiscard]] const Matrix& weights() const noexcept { return w_; }
    [[nodiscard]] double weight(std::size_t i, std::size_t j) const { return w_(i, j); }
    [[nodiscard]] std::span<const Edge> edges() const noexcept { return edges_; }

    [[nodiscard]] Vector degrees() const { return w_.rowwise().sum(); }

private:
    bool connected() const
    {
        const std::size_t n = this->n();
        std::vector<std::vector<std::size_t>> adj(n);
        for (const auto& e : edges_) {
            adj[e.i].push_back(e.j);
            adj[e.j].push_back(e.i);
        }
        std::vector<char> seen(n, 0);
        std::vector<std::size_t> stack{0};
        seen[0] = 1;
        std::size_t count = 1;
        while (!stack.empty()) {
            const auto v = stack.back();
            stack.pop_back();
            for (auto u : adj[v]) {
                if (!seen[u]) {
                    seen[u] = 1;
                    ++count;
                    stack.push_back(u);
                }
            }
        }
        return count == n;
    }

    Matrix w_;
    std::vector<Edge> edges_;
};

/// W(A, B): sum of w_ij over i in A, j in B. Empty sets give 0.
inline double block_weight(const Graph& g, std::span<const std::size_t> a,
                           std::span<const std::size_t> b)
{
    const auto n = g.n();
    double sum = 0.0;
    for (auto i : a) {
        if (i >= n)
            fail(ErrorCode::IndexOutOfRange, "vertex " + std::to_string(i + 1));
        for (auto j : b) {
            if (j >= n)
                fail(ErrorCode::IndexOutOfRange, "vertex " + std::to_string(j + 1));
            sum += g.weight(i, j);
        }
    }
    return sum;
}

inline double block_weight(const Graph& g, const VertexSet& a, const VertexSet& b)
{
    return block_weight(g, a.members(), b.members());
}

/// Combinatorial Laplacian D - W.
inline Matrix laplacian(const Graph& g)
{
    Matrix l = -g.weights();
    const Vector d = g.degrees();
    for (Eigen::Index i = 0; i < l.rows(); ++i)
        l(i, i) = d(i);
    return l;
}

using Point2 = std::pair<double, double>;

/// n points uniform on the unit square.
inline std::vector<Point2> random_points(std::size_t n, std::uint64_t seed)
{
    Rng rng(seed);
    std::vector<Point2> pts(n);
    for (auto& p : pts) {
        p.first = rng.uniform();
        p.second = rng.uniform();
    }
    return pts;
}

/// Gaussian-kernel graph: w_ij = exp(-|p_i - p_j|^2 / sigma^2), i != j.
inline Graph gaussian_kernel_graph(std::span<const Point2> pts, double sigma)
{
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        fail(ErrorCode::InvalidParameter, "sigma must be positive");
    const auto n = static_cast<Eigen::Index>(pts.size());
    Matrix w = Matrix::Zero(n, n);
    const double inv_s2 = 1.0 / (sigma * sigma);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double dx = pts[i].first - pts[j].first;
            const double dy = pts[i].second - pts[j].second;
            const double v = std::exp(-(dx * dx + dy * dy) * inv_s2);
            w(i, j) = v;
            w(j, i) = v;
        }
    }
    return Graph(std::move(w));
}

inline Graph random_geometric_graph(std::size_t n, double sigma, std::uint64_t seed)
{
    if (n < 2)
        fail(ErrorCode::InvalidParameter, "random geometric graph needs n >= 2");
    const auto pts = random_points(n, seed);
    return gaussian_kernel_graph(pts, sigma);
}

} // namespace l1gft
