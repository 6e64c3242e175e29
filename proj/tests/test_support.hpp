#pragma once

// Shared fixtures and brute-force oracles. The oracles work on the dense
// weight matrix directly and never call into the routines they check.

#include <cmath>
#include <cstdint>

#include "l1gft/l1gft.hpp"

namespace l1gft::testing {

/// 1 -- 2 -- 3 with w12 = 1, w23 = 2.
inline Graph path_graph()
{
    Matrix w = Matrix::Zero(3, 3);
    w(0, 1) = w(1, 0) = 1.0;
    w(1, 2) = w(2, 1) = 2.0;
    return Graph(w);
}

inline Graph complete_graph(std::size_t n, double weight = 1.0)
{
    const auto ni = static_cast<Eigen::Index>(n);
    Matrix w = Matrix::Constant(ni, ni, weight);
    w.diagonal().setZero();
    return Graph(w);
}

/// Complete graph with weights uniform on [0.1, 1).
inline Graph random_weight_graph(std::size_t n, std::uint64_t seed)
{
    Rng rng(seed);
    const auto ni = static_cast<Eigen::Index>(n);
    Matrix w = Matrix::Zero(ni, ni);
    for (Eigen::Index i = 0; i < ni; ++i)
        for (Eigen::Index j = i + 1; j < ni; ++j)
            w(i, j) = w(j, i) = rng.uniform(0.1, 1.0);
    return Graph(w);
}

inline Signal random_signal(std::size_t n, Rng& rng, double lo = -1.0, double hi = 1.0)
{
    Signal x(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < x.size(); ++i)
        x(i) = rng.uniform(lo, hi);
    return x;
}

/// sum_{i<j} w_ij |x_i - x_j| over every matrix entry.
inline double brute_l1(const Matrix& w, const Signal& x)
{
    double s = 0.0;
    for (Eigen::Index i = 0; i < w.rows(); ++i)
        for (Eigen::Index j = i + 1; j < w.cols(); ++j)
            s += w(i, j) * std::abs(x(i) - x(j));
    return s;
}

inline double brute_l2(const Matrix& w, const Signal& x)
{
    double s = 0.0;
    for (Eigen::Index i = 0; i < w.rows(); ++i)
        for (Eigen::Index j = i + 1; j < w.cols(); ++j)
            s += w(i, j) * (x(i) - x(j)) * (x(i) - x(j));
    return s;
}

inline double rel_diff(double a, double b)
{
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

} // namespace l1gft::testing
