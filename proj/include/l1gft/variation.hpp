#pragma once

#include <cmath>
#include <string>

#include "graph.hpp"

namespace l1gft {

namespace detail {
inline void check_length(const Graph& g, const Signal& x)
{
    if (static_cast<std::size_t>(x.size()) != g.n())
        fail(ErrorCode::DimensionMismatch, "signal length " + std::to_string(x.size()) +
                                               " != vertex count " + std::to_string(g.n()));
}
} // namespace detail

/// S(x) = sum_{i<j} w_ij |x_i - x_j|.
inline double l1_variation(const Graph& g, const Signal& x)
{
    detail::check_length(g, x);
    double s = 0.0;
    for (const auto& e : g.edges())
        s += e.w * std::abs(x(e.i) - x(e.j));
    return s;
}

/// Laplacian quadratic form x'Lx evaluated as sum_{i<j} w_ij (x_i - x_j)^2.
inline double l2_variation(const Graph& g, const Signal& x)
{
    detail::check_length(g, x);
    double s = 0.0;
    for (const auto& e : g.edges()) {
        const double d = x(e.i) - x(e.j);
        s += e.w * d * d;
    }
    return s;
}

/// sum over ordered pairs of w_ij (x_i - x_j)_+.
inline double directed_variation(const Graph& g, const Signal& x)
{
    detail::check_length(g, x);
    double s = 0.0;
    for (const auto& e : g.edges()) {
        const double d = x(e.i) - x(e.j);
        s += e.w * std::max(d, 0.0) + e.w * std::max(-d, 0.0);
    }
    return s;
}

/// (candidate - reference) / reference for two variation values.
inline double relative_error(double candidate, double reference)
{
    if (reference == 0.0)
        fail(ErrorCode::ZeroReferenceVariation, "reference variation is zero");
    return (candidate - reference) / reference;
}

inline double relative_variation_error(const Graph& g, const Signal& candidate,
                                       const Signal& reference)
{
    return relative_error(l1_variation(g, candidate), l1_variation(g, reference));
}

/// Sum of l1_variation over the columns of an N x N basis.
inline double basis_variation_sum(const Graph& g, const Matrix& basis)
{
    if (static_cast<std::size_t>(basis.rows()) != g.n() || basis.rows() != basis.cols())
        fail(ErrorCode::DimensionMismatch, "basis must be N x N");
    double s = 0.0;
    for (Eigen::Index k = 0; k < basis.cols(); ++k)
        s += l1_variation(g, basis.col(k));
    return s;
}

} // namespace l1gft
