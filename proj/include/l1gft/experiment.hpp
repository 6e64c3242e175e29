#pragma once

// Comparison study of exact l1, greedy and Laplacian bases on random
// geometric graphs, and the n-term approximation study.

#include <atomic>
#include <exception>
#include <mutex>
#include <cstdint>
#include <thread>
#include <vector>

#include "io.hpp"
#include "l1_exact.hpp"

namespace l1gft {

struct ComparisonRecord {
    std::uint64_t seed = 0;
    std::size_t n = 0;
    double sigma = 0.0;
    double s_u2_exact = 0.0;
    double s_u2_greedy = 0.0;
    double s_u2_laplacian = 0.0;
    double r_u2_greedy = 0.0;
    double r_u2_laplacian = 0.0;
    double s_exact = 0.0;
    double s_greedy = 0.0;
    double s_laplacian = 0.0;
    double r_greedy = 0.0;
    double r_laplacian = 0.0;
    /// Variations of the exact basis vectors, u_1..u_N.
    std::vector<double> exact_variations;
    /// Distinct component values of each exact basis vector.
    std::vector<std::size_t> exact_value_counts;
};

struct ComparisonReport {
    std::size_t n = 0;
    std::size_t trials = 0;
    double sigma = 0.0;
    std::uint64_t seed = 0;
    std::vector<ComparisonRecord> records;
    double mean_r_u2_greedy = 0.0;
    double mean_r_u2_laplacian = 0.0;
    double mean_r_greedy = 0.0;
    double mean_r_laplacian = 0.0;
};

/// Number of distinct values after rounding components to a 1e-10 grid.
inline std::size_t distinct_values(const Signal& x, double quantum = 1e-10)
{
    std::vector<double> q(static_cast<std::size_t>(x.size()));
    for (Eigen::Index i = 0; i < x.size(); ++i)
        q[static_cast<std::size_t>(i)] = std::round(x(i) / quantum);
    std::sort(q.begin(), q.end());
    return static_cast<std::size_t>(std::unique(q.begin(), q.end()) - q.begin());
}

inline ComparisonRecord compare_bases(const Graph& g, std::uint64_t seed, double sigma,
                                      const ExactOptions& opt = {})
{
    ComparisonRecord rec;
    rec.seed = seed;
    rec.n = g.n();
    rec.sigma = sigma;

    const auto exact = exact_l1_basis(g, opt);
    const auto greedy = greedy_basis(g);
    const auto lap = laplacian_basis(g);

    rec.s_u2_exact = l1_variation(g, exact.columns.col(1));
    rec.s_u2_greedy = l1_variation(g, greedy.columns.col(1));
    rec.s_u2_laplacian = l1_variation(g, lap.columns.col(1));
    rec.r_u2_greedy = relative_error(rec.s_u2_greedy, rec.s_u2_exact);
    rec.r_u2_laplacian = relative_error(rec.s_u2_laplacian, rec.s_u2_exact);

    rec.s_exact = basis_variation_sum(g, exact.columns);
    rec.s_greedy = basis_variation_sum(g, greedy.columns);
    rec.s_laplacian = basis_variation_sum(g, lap.columns);
    rec.r_greedy = relative_error(rec.s_greedy, rec.s_exact);
    rec.r_laplacian = relative_error(rec.s_laplacian, rec.s_exact);

    rec.exact_variations = exact.variations;
    for (Eigen::Index k = 0; k < exact.columns.cols(); ++k)
        rec.exact_value_counts.push_back(distinct_values(exact.columns.col(k)));
    return rec;
}

/// Runs `trials` independent trials. Trial t uses graph seed
/// derive_seed(seed, t); results are ordered by trial index for any `jobs`.
inline ComparisonReport run_comparison(std::size_t n, std::size_t trials, double sigma,
                                       std::uint64_t seed, unsigned jobs = 1,
                                       const ExactOptions& opt = {})
{
    if (n < 3 || n > 8)
        fail(ErrorCode::InvalidParameter, "comparison needs 3 <= n <= 8");
    if (trials < 1)
        fail(ErrorCode::InvalidParameter, "trials must be >= 1");
    ComparisonReport rep{n, trials, sigma, seed, std::vector<ComparisonRecord>(trials)};

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t t = next++; t < trials; t = next++) {
            try {
                const auto s = derive_seed(seed, t);
                rep.records[t] = compare_bases(random_geometric_graph(n, sigma, s), s, sigma, opt);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
            }
        }
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(trials)));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned j = 0; j < jobs; ++j)
            pool.emplace_back(worker);
    }
    if (error)
        std::rethrow_exception(error);

    for (const auto& r : rep.records) {
        rep.mean_r_u2_greedy += r.r_u2_greedy;
        rep.mean_r_u2_laplacian += r.r_u2_laplacian;
        rep.mean_r_greedy += r.r_greedy;
        rep.mean_r_laplacian += r.r_laplacian;
    }
    const double inv = 1.0 / static_cast<double>(trials);
    rep.mean_r_u2_greedy *= inv;
    rep.mean_r_u2_laplacian *= inv;
    rep.mean_r_greedy *= inv;
    rep.mean_r_laplacian *= inv;
    return rep;
}

inline json to_json(const ComparisonRecord& r)
{
    return {{"seed", r.seed},
            {"N", r.n},
            {"sigma", r.sigma},
            {"S_u2_exact", r.s_u2_exact},
            {"S_u2_greedy", r.s_u2_greedy},
            {"S_u2_laplacian", r.s_u2_laplacian},
            {"r_u2_greedy", r.r_u2_greedy},
            {"r_u2_laplacian", r.r_u2_laplacian},
            {"S_U_exact", r.s_exact},
            {"S_U_greedy", r.s_greedy},
            {"S_U_laplacian", r.s_laplacian},
            {"r_U_greedy", r.r_greedy},
            {"r_U_laplacian", r.r_laplacian},
            {"exact_variations", r.exact_variations},
            {"exact_value_counts", r.exact_value_counts}};
}

inline json to_json(const ComparisonReport& rep)
{
    json records = json::array();
    for (const auto& r : rep.records)
        records.push_back(to_json(r));
    return {{"records", records},
            {"mean",
             {{"r_u2_greedy", rep.mean_r_u2_greedy},
              {"r_u2_laplacian", rep.mean_r_u2_laplacian},
              {"r_U_greedy", rep.mean_r_greedy},
              {"r_U_laplacian", rep.mean_r_laplacian}}}};
}

} // namespace l1gft
