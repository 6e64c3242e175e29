#pragma once

// Exact l1 Fourier basis for small graphs.
//
// Each basis vector u_k minimizes S(x) over unit vectors orthogonal to
// u_1..u_{k-1}. Any local minimizer x = M a has dim ker(U' M) == 1, and then
// x is one of exactly two unit vectors in span(M) (a sign pair). The feasible
// set therefore reduces to a finite critical set that can be enumerated over
// set partitions of the vertices with at most k blocks.

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/SVD>

#include "piecewise.hpp"
#include "variation.hpp"

namespace l1gft {

struct ExactOptions {
    /// Enumeration is Bell-number sized; refuse graphs above this.
    std::size_t max_n = 10;
};

struct CriticalPoint {
    /// Level-set partition of `signal`, blocks in ascending value order.
    PartitionMatrix partition;
    Signal signal;
    double variation = 0.0;
    /// Restricted growth string of the partition (blocks labelled by first
    /// appearance); used as the canonical ordering key.
    std::vector<std::size_t> rgs;

    [[nodiscard]] std::string canonical_string() const
    {
        std::string s;
        for (auto c : rgs)
            s.push_back(static_cast<char>('0' + c));
        return s;
    }
};

namespace detail {

/// Calls visit(rgs, blocks) for every restricted growth string of length n
/// using at most max_blocks symbols, in lexicographic order.
inline void for_each_set_partition(
    std::size_t n, std::size_t max_blocks,
    const std::function<void(const std::vector<std::size_t>&, std::size_t)>& visit)
{
    std::vector<std::size_t> rgs(n, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t used) {
        if (pos == n) {
            visit(rgs, used);
            return;
        }
        const std::size_t limit = std::min(used + 1, max_blocks);
        for (std::size_t c = 0; c < limit; ++c) {
            rgs[pos] = c;
            rec(pos + 1, std::max(used, c + 1));
        }
    };
    if (n == 0 || max_blocks == 0)
        return;
    rgs[0] = 0;
    rec(1, 1);
}

inline void check_constraint_matrix(const Graph& g, const Matrix& u, const ExactOptions& opt)
{
    const std::size_t n = g.n();
    if (n > opt.max_n)
        fail(ErrorCode::GraphTooLarge,
             "N = " + std::to_string(n) + " exceeds enumeration cap " + std::to_string(opt.max_n));
    if (static_cast<std::size_t>(u.rows()) != n)
        fail(ErrorCode::DimensionMismatch, "U must have N rows");
    if (u.cols() < 1 || static_cast<std::size_t>(u.cols()) >= n)
        fail(ErrorCode::InvalidParameter, "U must have k-1 columns with 2 <= k <= N");
    const Matrix gram = u.transpose() * u;
    const double dev = (gram - Matrix::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
    if (dev > 1e-9)
        fail(ErrorCode::RankDeficientU, "U columns are not orthonormal");
    const double c = 1.0 / std::sqrt(static_cast<double>(n));
    if ((u.col(0).array() - c).abs().maxCoeff() > 1e-9)
        fail(ErrorCode::InvalidParameter, "first column of U must be the constant vector");
}

/// Flip so the first component with magnitude above 1e-12 is positive.
inline void fix_sign(Signal& x)
{
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (std::abs(x(i)) > 1e-12) {
            if (x(i) < 0.0)
                x = -x;
            return;
        }
    }
}

} // namespace detail

/// All critical points for the constraint matrix U (N x (k-1)), one per
/// partition matrix satisfying the nullity-1 condition, in enumeration order.
inline std::vector<CriticalPoint> enumerate_critical_set(const Graph& g, const Matrix& u,
                                                         const ExactOptions& opt = {})
{
    detail::check_constraint_matrix(g, u, opt);
    const std::size_t n = g.n();
    const std::size_t k = static_cast<std::size_t>(u.cols()) + 1;
    const auto rows = u.cols();

    std::vector<CriticalPoint> out;
    Matrix um;
    detail::for_each_set_partition(n, k, [&](const std::vector<std::size_t>& rgs, std::size_t m) {
        if (m < 2)
            return;
        um.setZero(rows, static_cast<Eigen::Index>(m));
        for (std::size_t v = 0; v < n; ++v)
            um.col(static_cast<Eigen::Index>(rgs[v])) += u.row(static_cast<Eigen::Index>(v)).transpose();

        Eigen::JacobiSVD<Matrix> svd(um, Eigen::ComputeFullV);
        const Vector& s = svd.singularValues();
        const double smax = s.maxCoeff();
        const double cut = rank_tolerance * (smax > 0.0 ? smax : 1.0);
        std::size_t rank = 0;
        for (Eigen::Index i = 0; i < s.size(); ++i)
            if (s(i) > cut)
                ++rank;
        if (m - rank != 1)
            return;

        // Right singular vector of the smallest singular value spans the kernel.
        const Vector a = svd.matrixV().col(static_cast<Eigen::Index>(m) - 1);
        const double tie = 1e-10 * std::max(1.0, a.norm());
        for (Eigen::Index i = 0; i < a.size(); ++i)
            for (Eigen::Index j = i + 1; j < a.size(); ++j)
                if (std::abs(a(i) - a(j)) <= tie)
                    return;

        Signal x(static_cast<Eigen::Index>(n));
        for (std::size_t v = 0; v < n; ++v)
            x(static_cast<Eigen::Index>(v)) = a(static_cast<Eigen::Index>(rgs[v]));
        x /= x.norm();
        detail::fix_sign(x);

        CriticalPoint cp;
        cp.partition = piecewise_rep(x).partition;
        cp.variation = l1_variation(g, x);
        cp.signal = std::move(x);
        cp.rgs = rgs;
        out.push_back(std::move(cp));
    });
    if (out.empty())
        fail(ErrorCode::InfeasibleStep, "no critical points for k = " + std::to_string(k));
    return out;
}

/// Minimum-variation member of a critical set. Candidates within 1e-12
/// relative of the minimum tie; the smallest canonical partition string wins.
inline const CriticalPoint& select_minimum(const std::vector<CriticalPoint>& cands)
{
    if (cands.empty())
        fail(ErrorCode::InfeasibleStep, "empty critical set");
    double best = cands.front().variation;
    for (const auto& c : cands)
        best = std::min(best, c.variation);
    const double cut = best + 1e-12 * std::abs(best);
    const CriticalPoint* pick = nullptr;
    for (const auto& c : cands)
        if (c.variation <= cut && (pick == nullptr || c.rgs < pick->rgs))
            pick = &c;
    return *pick;
}

inline CriticalPoint solve_step(const Graph& g, const Matrix& u, const ExactOptions& opt = {})
{
    return select_minimum(enumerate_critical_set(g, u, opt));
}

struct ExactStepReport {
    std::size_t k = 0;
    std::size_t candidates = 0;
    PartitionMatrix partition;
    double variation = 0.0;
};

struct ExactL1Basis {
    Matrix columns;
    std::vector<double> variations;
    /// One entry per k = 2..N.
    std::vector<ExactStepReport> steps;
};

inline ExactL1Basis exact_l1_basis(const Graph& g, const ExactOptions& opt = {})
{
    const std::size_t n = g.n();
    if (n > opt.max_n)
        fail(ErrorCode::GraphTooLarge,
             "N = " + std::to_string(n) + " exceeds enumeration cap " + std::to_string(opt.max_n));
    const auto ni = static_cast<Eigen::Index>(n);
    ExactL1Basis out;
    out.columns = Matrix::Zero(ni, ni);
    out.columns.col(0).setConstant(1.0 / std::sqrt(static_cast<double>(n)));
    out.variations.push_back(0.0);
    for (std::size_t k = 2; k <= n; ++k) {
        const auto ki = static_cast<Eigen::Index>(k);
        const auto cands = enumerate_critical_set(g, out.columns.leftCols(ki - 1), opt);
        const auto& best = select_minimum(cands);
        out.columns.col(ki - 1) = best.signal;
        out.variations.push_back(best.variation);
        out.steps.push_back({k, cands.size(), best.partition, best.variation});
    }
    return out;
}

} // namespace l1gft
