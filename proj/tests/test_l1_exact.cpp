#include <gtest/gtest.h>

#include <Eigen/LU>

#include "test_support.hpp"

using namespace l1gft;
using namespace l1gft::testing;

namespace {

Matrix constant_column(std::size_t n)
{
    return Matrix::Constant(static_cast<Eigen::Index>(n), 1, 1.0 / std::sqrt(static_cast<double>(n)));
}

/// First k-1 Laplacian eigenvectors with the constant one made positive;
/// a generic orthonormal constraint matrix.
Matrix laplacian_constraint(const Graph& g, std::size_t k)
{
    Matrix u = laplacian_basis(g).columns.leftCols(static_cast<Eigen::Index>(k - 1));
    if (u(0, 0) < 0)
        u.col(0) = -u.col(0);
    u.col(0).setConstant(1.0 / std::sqrt(static_cast<double>(g.n())));
    return u;
}

bool equal_up_to_sign(const Signal& a, const Signal& b, double tol)
{
    return (a - b).cwiseAbs().maxCoeff() <= tol || (a + b).cwiseAbs().maxCoeff() <= tol;
}

} // namespace

TEST(EnumerateCriticalSet, FourVerticesMatchesTheSevenTwoBlockSplits)
{
    const double r3 = 1.0 / (2.0 * std::sqrt(3.0));
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto g = random_weight_graph(4, seed);
        const auto& w = g.weights();
        auto W = [&](int i, int j) { return w(i - 1, j - 1); };
        const std::vector<std::pair<Signal, double>> table{
            {(Signal(4) << -3, 1, 1, 1).finished() * r3, 2 / std::sqrt(3.0) * (W(1, 2) + W(1, 3) + W(1, 4))},
            {(Signal(4) << 1, -3, 1, 1).finished() * r3, 2 / std::sqrt(3.0) * (W(1, 2) + W(2, 3) + W(2, 4))},
            {(Signal(4) << 1, 1, -3, 1).finished() * r3, 2 / std::sqrt(3.0) * (W(1, 3) + W(2, 3) + W(3, 4))},
            {(Signal(4) << 1, 1, 1, -3).finished() * r3, 2 / std::sqrt(3.0) * (W(1, 4) + W(2, 4) + W(3, 4))},
            {(Signal(4) << -1, -1, 1, 1).finished() * 0.5, W(1, 3) + W(1, 4) + W(2, 3) + W(2, 4)},
            {(Signal(4) << -1, 1, -1, 1).finished() * 0.5, W(1, 2) + W(1, 4) + W(2, 3) + W(3, 4)},
            {(Signal(4) << -1, 1, 1, -1).finished() * 0.5, W(1, 2) + W(1, 3) + W(2, 4) + W(3, 4)}, // cross pairs of {1,4} | {2,3}
        };
        const auto cps = enumerate_critical_set(g, constant_column(4));
        ASSERT_EQ(cps.size(), 7u);
        std::vector<int> hits(7, 0);
        for (const auto& cp : cps) {
            for (std::size_t r = 0; r < table.size(); ++r) {
                if (equal_up_to_sign(cp.signal, table[r].first, 1e-12)) {
                    ++hits[r];
                    EXPECT_LE(rel_diff(cp.variation, table[r].second), 1e-12);
                }
            }
        }
        for (int h : hits)
            EXPECT_EQ(h, 1);
    }
}

TEST(EnumerateCriticalSet, TwoVertices)
{
    Matrix w(2, 2);
    w << 0, 0.7, 0.7, 0;
    const Graph g(w);
    const auto cps = enumerate_critical_set(g, constant_column(2));
    ASSERT_EQ(cps.size(), 1u);
    const Signal expect = (Signal(2) << -1, 1).finished() / std::sqrt(2.0);
    EXPECT_TRUE(equal_up_to_sign(cps[0].signal, expect, 1e-15));
    EXPECT_NEAR(cps[0].variation, std::sqrt(2.0) * 0.7, 1e-15);
}

TEST(EnumerateCriticalSet, CompleteGraphValues)
{
    const auto cps = enumerate_critical_set(complete_graph(4), constant_column(4));
    ASSERT_EQ(cps.size(), 7u);
    int balanced = 0, lopsided = 0;
    for (const auto& cp : cps) {
        if (std::abs(cp.variation - 4.0) <= 1e-12)
            ++balanced;
        else if (std::abs(cp.variation - 2.0 * std::sqrt(3.0)) <= 1e-12)
            ++lopsided;
    }
    EXPECT_EQ(balanced, 3);
    EXPECT_EQ(lopsided, 4);
}

TEST(EnumerateCriticalSet, PointInvariants)
{
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const std::size_t n = 4 + seed % 3;
        const auto g = random_geometric_graph(n, 0.5, seed);
        for (std::size_t k = 2; k <= n; ++k) {
            const Matrix u = laplacian_constraint(g, k);
            for (const auto& cp : enumerate_critical_set(g, u)) {
                EXPECT_NEAR(cp.signal.norm(), 1.0, 1e-12);
                EXPECT_LE((u.transpose() * cp.signal).cwiseAbs().maxCoeff(), 1e-10);
                EXPECT_LE(cp.partition.m(), k);
                EXPECT_TRUE(satisfies_necessary_condition(u, cp.partition));
                EXPECT_LE(rel_diff(cp.variation, brute_l1(g.weights(), cp.signal)), 1e-12);
                // the sign partner lies in the same span and is feasible too
                const Signal neg = -cp.signal;
                EXPECT_EQ(piecewise_rep(neg).partition.m(), cp.partition.m());
            }
        }
    }
}

TEST(EnumerateCriticalSet, CountMatchesIndependentPartitionFilter)
{
    // Every map vertex -> label in [0, k) is filtered down to canonical
    // labellings; nullity comes from a full-pivot LU rather than the SVD.
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const std::size_t n = 5 + seed % 2;
        const auto g = random_geometric_graph(n, 0.6, 100 + seed);
        for (std::size_t k = 2; k <= n; ++k) {
            const Matrix u = laplacian_constraint(g, k);
            std::size_t expected = 0;
            std::vector<std::size_t> lab(n, 0);
            std::size_t total = 1;
            for (std::size_t i = 0; i < n; ++i)
                total *= k;
            for (std::size_t code = 0; code < total; ++code) {
                std::size_t c = code;
                for (std::size_t i = 0; i < n; ++i) {
                    lab[i] = c % k;
                    c /= k;
                }
                std::size_t next = 0;
                bool canonical = true;
                for (auto l : lab) {
                    if (l > next) {
                        canonical = false;
                        break;
                    }
                    if (l == next)
                        ++next;
                }
                if (!canonical || next < 2)
                    continue;
                Matrix m = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(next));
                for (std::size_t v = 0; v < n; ++v)
                    m(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(lab[v])) = 1.0;
                Eigen::FullPivLU<Matrix> lu(u.transpose() * m);
                lu.setThreshold(1e-9);
                if (lu.dimensionOfKernel() != 1)
                    continue;
                Vector a = lu.kernel().col(0);
                a.normalize();
                bool distinct = true;
                for (Eigen::Index i = 0; i < a.size(); ++i)
                    for (Eigen::Index j = i + 1; j < a.size(); ++j)
                        distinct = distinct && std::abs(a(i) - a(j)) > 1e-10;
                if (distinct)
                    ++expected;
            }
            EXPECT_EQ(enumerate_critical_set(g, u).size(), expected) << "n=" << n << " k=" << k;
        }
    }
}

TEST(SolveStep, TwoVertices)
{
    Matrix w(2, 2);
    w << 0, 1, 1, 0;
    const auto cp = solve_step(Graph(w), constant_column(2));
    EXPECT_TRUE(equal_up_to_sign(cp.signal, (Signal(2) << -1, 1).finished() / std::sqrt(2.0), 1e-15));
}

TEST(SolveStep, CompleteGraphPicksLopsidedSplitDeterministically)
{
    const auto cp = solve_step(complete_graph(4), constant_column(4));
    EXPECT_NEAR(cp.variation, 2.0 * std::sqrt(3.0), 1e-12);
    // four 1+3 splits tie; restricted growth string 0001 is the smallest
    EXPECT_EQ(cp.canonical_string(), "0001");
    const Signal expect = (Signal(4) << 1, 1, 1, -3).finished() / (2.0 * std::sqrt(3.0));
    EXPECT_LE((cp.signal - expect).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(SolveStep, GlobalMinimumAgainstRandomSampling)
{
    Rng rng(2024);
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
        const std::size_t n = 4 + trial % 5;
        const auto g = random_geometric_graph(n, 0.5, 500 + trial);
        for (std::size_t k : {std::size_t{2}, std::size_t{3}}) {
            const Matrix u = laplacian_constraint(g, k);
            const double best = solve_step(g, u).variation;
            const Matrix proj = Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) -
                                u * u.transpose();
            double sampled = std::numeric_limits<double>::infinity();
            for (int s = 0; s < 10000; ++s) {
                Signal x = proj * random_signal(n, rng);
                const double nrm = x.norm();
                if (nrm < 1e-8)
                    continue;
                sampled = std::min(sampled, brute_l1(g.weights(), x / nrm));
            }
            EXPECT_GE(sampled, best - 1e-9) << "trial " << trial << " k " << k;
        }
    }
}

TEST(ExactBasis, TwoVertices)
{
    Matrix w(2, 2);
    w << 0, 1, 1, 0;
    const auto b = exact_l1_basis(Graph(w));
    const double h = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(b.columns(0, 0), h, 1e-15);
    EXPECT_NEAR(b.columns(1, 0), h, 1e-15);
    EXPECT_TRUE(equal_up_to_sign(b.columns.col(1), (Signal(2) << -h, h).finished(), 1e-15));
    EXPECT_EQ(b.variations[0], 0.0);
    EXPECT_NEAR(b.variations[1], std::sqrt(2.0), 1e-15);
}

TEST(ExactBasis, OrthonormalAndAtMostKValues)
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const std::size_t n = 4 + seed % 5;
        const auto g = random_geometric_graph(n, 0.5, 900 + seed);
        const auto b = exact_l1_basis(g);
        EXPECT_LE(orthonormality_defect(b.columns), 1e-10);
        EXPECT_EQ(l1_variation(g, b.columns.col(0)), 0.0);
        ASSERT_EQ(b.steps.size(), n - 1);
        for (std::size_t k = 2; k <= n; ++k) {
            const auto col = b.columns.col(static_cast<Eigen::Index>(k - 1));
            EXPECT_LE(piecewise_rep(col).partition.m(), k);
            EXPECT_GE(b.steps[k - 2].candidates, 1u);
            EXPECT_LE(rel_diff(b.variations[k - 1], brute_l1(g.weights(), col)), 1e-12);
        }
        EXPECT_GE(b.variations[1], b.variations[0]);
    }
}

TEST(ExactBasis, GraphTooLarge)
{
    const auto g = random_geometric_graph(11, 0.5, 1);
    try {
        exact_l1_basis(g);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::GraphTooLarge);
    }
    try {
        enumerate_critical_set(g, constant_column(11), {.max_n = 8});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::GraphTooLarge);
    }
}

TEST(SetPartitions, BellNumbersWithBlockCap)
{
    std::size_t count = 0;
    detail::for_each_set_partition(6, 6, [&](const auto&, std::size_t) { ++count; });
    EXPECT_EQ(count, 203u); // Bell(6)
    count = 0;
    detail::for_each_set_partition(6, 2, [&](const auto&, std::size_t) { ++count; });
    EXPECT_EQ(count, 32u); // S(6,1) + S(6,2) = 1 + 31
}
