#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "greedy.hpp"
#include "spectral.hpp"

namespace l1gft {

enum class BasisTag { laplacian, greedy, l1_exact, custom };

constexpr std::string_view to_string(BasisTag tag) noexcept
{
    switch (tag) {
    case BasisTag::laplacian: return "laplacian";
    case BasisTag::greedy: return "greedy";
    case BasisTag::l1_exact: return "l1-exact";
    case BasisTag::custom: return "custom";
    }
    return "custom";
}

/// Maximum entry of |B'B - I|.
inline double orthonormality_defect(const Matrix& b)
{
    const Matrix gram = b.transpose() * b;
    return (gram - Matrix::Identity(b.cols(), b.cols())).cwiseAbs().maxCoeff();
}

/// Square matrix with orthonormal columns, checked once at construction.
class OrthonormalBasis {
public:
    static constexpr double tolerance = 1e-9;

    OrthonormalBasis(Matrix columns, BasisTag tag) : columns_(std::move(columns)), tag_(tag)
    {
        if (columns_.rows() != columns_.cols() || columns_.rows() == 0)
            fail(ErrorCode::DimensionMismatch, "basis must be a non-empty N x N matrix");
        const double defect = orthonormality_defect(columns_);
        if (!(defect <= tolerance))
            fail(ErrorCode::NonOrthonormalBasis,
                 "max |B'B - I| = " + std::to_string(defect) + " exceeds 1e-9");
    }

    [[nodiscard]] const Matrix& columns() const noexcept { return columns_; }
    [[nodiscard]] BasisTag tag() const noexcept { return tag_; }
    [[nodiscard]] std::size_t n() const noexcept { return static_cast<std::size_t>(columns_.rows()); }

private:
    Matrix columns_;
    BasisTag tag_;
};

struct SpectralCoefficients {
    Vector values;
    BasisTag basis_tag = BasisTag::custom;
};

/// B' x.
inline SpectralCoefficients naive_transform(const OrthonormalBasis& basis, const Signal& x)
{
    if (static_cast<std::size_t>(x.size()) != basis.n())
        fail(ErrorCode::DimensionMismatch, "signal length != basis size");
    return {basis.columns().transpose() * x, basis.tag()};
}

/// B c.
inline Signal inverse_transform(const OrthonormalBasis& basis, const SpectralCoefficients& coeffs)
{
    if (static_cast<std::size_t>(coeffs.values.size()) != basis.n())
        fail(ErrorCode::DimensionMismatch, "coefficient length != basis size");
    return basis.columns() * coeffs.values;
}

struct OpCounter {
    std::uint64_t multiplications = 0;
};

/// Precomputed schedule for the greedy transform.
///
/// Block sums are carried bottom-up through the merge tree: the sum over
/// A_k u B_k is alpha_k + beta_k, so no vertex is summed twice. Applying the
/// plan costs two multiplications per merge plus one for the constant term.
class GreedyTransformPlan {
public:
    explicit GreedyTransformPlan(const MergeTree& tree) : n_(tree.n())
    {
        steps_.reserve(tree.merges().size());
        for (const auto& rec : tree.merges()) {
            const auto c = greedy_coefficients(rec.a.size(), rec.b.size());
            steps_.push_back({rec.a.front(), rec.b.front(), rec.k - 1, c.a, c.b});
        }
        inv_sqrt_n_ = 1.0 / std::sqrt(static_cast<double>(n_));
    }

    [[nodiscard]] std::size_t n() const noexcept { return n_; }

    [[nodiscard]] SpectralCoefficients apply(const Signal& x, OpCounter* counter = nullptr) const
    {
        if (static_cast<std::size_t>(x.size()) != n_)
            fail(ErrorCode::DimensionMismatch, "signal length != tree size");
        // sums[label] holds <x, 1_G> for the live group with that label
        Vector sums = x;
        Vector out(static_cast<Eigen::Index>(n_));
        std::uint64_t mults = 0;
        for (const auto& s : steps_) {
            const double alpha = sums(static_cast<Eigen::Index>(s.label_a));
            const double beta = sums(static_cast<Eigen::Index>(s.label_b));
            out(static_cast<Eigen::Index>(s.column)) = s.a * alpha + s.b * beta;
            mults += 2;
            sums(static_cast<Eigen::Index>(s.label_a)) = alpha + beta;
        }
        // after the last merge the root sum sits at label 0
        out(0) = sums(0) * inv_sqrt_n_;
        mults += 1;
        if (counter)
            counter->multiplications += mults;
        return {std::move(out), BasisTag::greedy};
    }

private:
    struct Step {
        std::size_t label_a;
        std::size_t label_b;
        std::size_t column;
        double a;
        double b;
    };

    std::size_t n_;
    double inv_sqrt_n_ = 0.0;
    std::vector<Step> steps_;
};

inline SpectralCoefficients fast_greedy_transform(const MergeTree& tree, const Signal& x,
                                                  OpCounter* counter = nullptr)
{
    return GreedyTransformPlan(tree).apply(x, counter);
}

struct ApproximationCurve {
    /// errors[n] = relative error using the n largest coefficients, n = 0..N.
    std::vector<double> errors;
    /// Coefficient indices by descending magnitude (ties: smaller index first).
    std::vector<std::size_t> order;
};

/// n-term curve from precomputed coefficients; `signal_norm` is |x|.
inline ApproximationCurve n_term_curve(const SpectralCoefficients& coeffs, double signal_norm)
{
    if (!(signal_norm > 0.0))
        fail(ErrorCode::ZeroSignal, "n-term curve of a zero signal");
    const auto& c = coeffs.values;
    const auto n = static_cast<std::size_t>(c.size());
    ApproximationCurve out;
    out.order.resize(n);
    std::iota(out.order.begin(), out.order.end(), std::size_t{0});
    std::stable_sort(out.order.begin(), out.order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(c(static_cast<Eigen::Index>(a))) > std::abs(c(static_cast<Eigen::Index>(b)));
    });
    // tail energies summed from the smallest term up
    out.errors.assign(n + 1, 0.0);
    double tail = 0.0;
    for (std::size_t i = n; i-- > 0;) {
        const double v = c(static_cast<Eigen::Index>(out.order[i]));
        tail += v * v;
        out.errors[i] = std::sqrt(tail) / signal_norm;
    }
    return out;
}

inline ApproximationCurve n_term_curve(const OrthonormalBasis& basis, const Signal& x)
{
    const double norm = x.norm();
    if (!(norm > 0.0))
        fail(ErrorCode::ZeroSignal, "n-term curve of a zero signal");
    return n_term_curve(naive_transform(basis, x), norm);
}

/// Signal with Laplacian coefficients rand(k) / (1 + mu * lambda_k), rand
/// uniform on [-1, 1).
inline Signal simulated_signal(const LaplacianBasis& spectrum, double mu, std::uint64_t seed)
{
    if (!(mu > 0.0) || !std::isfinite(mu))
        fail(ErrorCode::InvalidParameter, "mu must be positive");
    Rng rng(seed);
    const auto n = spectrum.eigenvalues.size();
    Vector coeffs(n);
    for (Eigen::Index k = 0; k < n; ++k)
        coeffs(k) = rng.uniform(-1.0, 1.0) / (1.0 + mu * spectrum.eigenvalues(k));
    return spectrum.columns * coeffs;
}

} // namespace l1gft
