// l1gft: command-line front end for graph construction, basis construction,
// transforms, n-term approximation and the basis comparison study.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "l1gft/l1gft.hpp"

using namespace l1gft;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

GraphFormat parse_format(const std::string& s)
{
    if (s == "auto")
        return GraphFormat::automatic;
    if (s == "edge")
        return GraphFormat::edge_list;
    if (s == "dense")
        return GraphFormat::dense;
    fail(ErrorCode::InvalidParameter, "unknown graph format " + s);
}

struct GraphArgs {
    std::string path;
    std::string format = "auto";
    std::size_t n = 0;

    void add_to(CLI::App* cmd)
    {
        cmd->add_option("--graph", path, "graph CSV (edge list or dense)")->required();
        cmd->add_option("--format", format, "auto | edge | dense")
            ->check(CLI::IsMember({"auto", "edge", "dense"}));
        cmd->add_option("--vertices", n, "vertex count for edge lists (default: largest index)");
    }

    Graph load() const
    {
        return load_graph(path, parse_format(format),
                          n ? std::optional<std::size_t>(n) : std::nullopt);
    }

    json params() const { return {{"graph", path}, {"format", format}, {"vertices", n}}; }
};

void warn_cap(std::size_t max_n)
{
    if (max_n > ExactOptions{}.max_n)
        std::cerr << "warning: --max-n " << max_n
                  << " raises the enumeration cap; runtime grows like the Bell number of N\n";
}

/// Basis of the requested kind as an orthonormal matrix.
OrthonormalBasis make_basis(const Graph& g, const std::string& kind, std::size_t max_n)
{
    if (kind == "greedy")
        return {greedy_basis(g).columns, BasisTag::greedy};
    if (kind == "laplacian")
        return {laplacian_basis(g).columns, BasisTag::laplacian};
    if (kind == "l1")
        return {exact_l1_basis(g, {max_n}).columns, BasisTag::l1_exact};
    fail(ErrorCode::InvalidParameter, "unknown basis " + kind);
}

std::string format_coefficients(const SpectralCoefficients& c)
{
    std::string out = "coefficient\n";
    for (Eigen::Index i = 0; i < c.values.size(); ++i)
        out += io_detail::format_double(c.values(i)) + '\n';
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"l1 graph Fourier transform toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "random geometric graph on the unit square");
    std::size_t gen_n = 0;
    double gen_sigma = 0.5;
    std::uint64_t seed = 0;
    std::string gen_out, gen_points;
    gen->add_option("--n", gen_n, "vertex count")->required();
    gen->add_option("--sigma", gen_sigma, "kernel width");
    gen->add_option("--seed", seed, "RNG seed")->envname("L1GFT_SEED");
    gen->add_option("--out", gen_out, "dense CSV output")->required();
    gen->add_option("--points", gen_points, "optional CSV of sampled points");

    // basis
    auto* basis = app.add_subcommand("basis", "construct a basis");
    std::string basis_kind, basis_out, basis_tree, basis_report, basis_eigs;
    std::size_t max_n = ExactOptions{}.max_n;
    GraphArgs basis_graph;
    basis->add_option("kind", basis_kind, "greedy | laplacian | l1")
        ->required()
        ->check(CLI::IsMember({"greedy", "laplacian", "l1"}));
    basis_graph.add_to(basis);
    basis->add_option("--out", basis_out, "basis CSV output");
    basis->add_option("--tree", basis_tree, "merge tree JSON output (greedy)");
    basis->add_option("--report", basis_report, "JSON report output");
    basis->add_option("--eigenvalues", basis_eigs, "eigenvalue CSV output (laplacian)");
    basis->add_option("--max-n", max_n, "enumeration cap for l1");

    // transform
    auto* transform = app.add_subcommand("transform", "forward transform of a signal");
    std::string tr_kind, tr_basis = "greedy", tr_signal, tr_out, tr_tree;
    GraphArgs tr_graph;
    transform->add_option("method", tr_kind, "naive | fast")
        ->required()
        ->check(CLI::IsMember({"naive", "fast"}));
    tr_graph.add_to(transform);
    transform->add_option("--basis", tr_basis, "greedy | laplacian | l1 (naive only)")
        ->check(CLI::IsMember({"greedy", "laplacian", "l1"}));
    transform->add_option("--tree", tr_tree, "merge tree JSON to use instead of rebuilding (fast)");
    transform->add_option("--signal", tr_signal, "signal CSV")->required();
    transform->add_option("--out", tr_out, "coefficient CSV output")->required();
    transform->add_option("--max-n", max_n, "enumeration cap for l1");

    // nterm
    auto* nterm = app.add_subcommand("nterm", "n-term approximation curve");
    std::string nt_basis = "greedy", nt_signal, nt_out, nt_report, nt_signal_out;
    double mu = 5.0;
    GraphArgs nt_graph;
    nt_graph.add_to(nterm);
    nterm->add_option("--basis", nt_basis, "greedy | laplacian | l1")
        ->check(CLI::IsMember({"greedy", "laplacian", "l1"}));
    nterm->add_option("--signal", nt_signal, "signal CSV; omitted: simulate from the Laplacian spectrum");
    nterm->add_option("--mu", mu, "spectral decay for simulated signals");
    nterm->add_option("--seed", seed, "RNG seed for simulated signals")->envname("L1GFT_SEED");
    nterm->add_option("--signal-out", nt_signal_out, "write the (simulated) signal");
    nterm->add_option("--out", nt_out, "curve CSV output (n,epsilon)")->required();
    nterm->add_option("--report", nt_report, "JSON report output");
    nterm->add_option("--max-n", max_n, "enumeration cap for l1");

    // compare
    auto* compare = app.add_subcommand("compare", "exact vs greedy vs Laplacian variation study");
    std::size_t cmp_n = 6, cmp_trials = 100;
    double cmp_sigma = 0.5;
    unsigned jobs = 1;
    std::string cmp_out;
    compare->add_option("--n", cmp_n, "vertex count (3..8)")->required();
    compare->add_option("--trials", cmp_trials, "number of random graphs");
    compare->add_option("--sigma", cmp_sigma, "kernel width");
    compare->add_option("--seed", seed, "master seed")->envname("L1GFT_SEED");
    compare->add_option("--jobs", jobs, "worker threads");
    compare->add_option("--out", cmp_out, "JSON report output")->required();

    // ingest
    auto* ingest = app.add_subcommand("ingest", "validate a signal against a graph");
    std::string in_signal, in_out;
    GraphArgs in_graph;
    in_graph.add_to(ingest);
    ingest->add_option("--signal", in_signal, "signal CSV")->required();
    ingest->add_option("--out", in_out, "canonical signal CSV output");

    CLI11_PARSE(app, argc, argv);

    try {
        const auto t0 = Clock::now();
        if (*gen) {
            const auto pts = random_points(gen_n, seed);
            if (gen_n < 2)
                fail(ErrorCode::InvalidParameter, "gen needs n >= 2");
            const auto g = gaussian_kernel_graph(pts, gen_sigma);
            save_graph_dense(g, gen_out);
            if (!gen_points.empty()) {
                std::string text = "x,y\n";
                for (const auto& [x, y] : pts)
                    text += io_detail::format_double(x) + ',' + io_detail::format_double(y) + '\n';
                io_detail::write_file(gen_points, text);
            }
        } else if (*basis) {
            const auto g = basis_graph.load();
            json report = {{"params",
                            {{"kind", basis_kind}, {"input", basis_graph.params()}, {"max_n", max_n}}}};
            Matrix columns;
            if (basis_kind == "greedy") {
                const auto gb = greedy_basis(g);
                columns = gb.columns;
                if (!basis_tree.empty())
                    save_json(tree_to_json(gb.tree), basis_tree);
                report["critical_structure"] = verify_critical_structure(g, gb);
            } else if (basis_kind == "laplacian") {
                const auto lb = laplacian_basis(g);
                columns = lb.columns;
                if (!basis_eigs.empty())
                    save_signal(lb.eigenvalues, basis_eigs);
                report["eigenvalues"] = std::vector<double>(lb.eigenvalues.begin(), lb.eigenvalues.end());
                report["eigen_variation_error"] = eigen_variation_check(g, lb);
            } else {
                warn_cap(max_n);
                const auto eb = exact_l1_basis(g, {max_n});
                columns = eb.columns;
                json steps = json::array();
                for (const auto& s : eb.steps)
                    steps.push_back({{"k", s.k},
                                     {"candidates", s.candidates},
                                     {"partition", partition_to_json(s.partition)},
                                     {"variation", s.variation}});
                report["steps"] = steps;
            }
            std::vector<double> variations;
            for (Eigen::Index k = 0; k < columns.cols(); ++k)
                variations.push_back(l1_variation(g, columns.col(k)));
            report["variations"] = variations;
            report["variation_sum"] = basis_variation_sum(g, columns);
            report["orthonormality_defect"] = orthonormality_defect(columns);
            if (!basis_out.empty())
                save_matrix_csv(columns, basis_out);
            report["timing"] = {{"seconds", seconds_since(t0)}};
            if (!basis_report.empty())
                save_json(report, basis_report);
        } else if (*transform) {
            const auto g = tr_graph.load();
            const auto x = ingest_signal(tr_signal, g);
            SpectralCoefficients c;
            if (tr_kind == "fast") {
                const auto tree = tr_tree.empty() ? build_merge_tree(g) : tree_from_json(load_json(tr_tree));
                if (tree.n() != g.n())
                    fail(ErrorCode::DimensionMismatch, "tree size != graph size");
                c = fast_greedy_transform(tree, x);
            } else {
                if (tr_basis == "l1")
                    warn_cap(max_n);
                c = naive_transform(make_basis(g, tr_basis, max_n), x);
            }
            io_detail::write_file(tr_out, format_coefficients(c));
        } else if (*nterm) {
            const auto g = nt_graph.load();
            json params = {{"basis", nt_basis}, {"input", nt_graph.params()}};
            Signal x;
            if (nt_signal.empty()) {
                x = simulated_signal(laplacian_basis(g), mu, seed);
                params["signal"] = "simulated";
                params["mu"] = mu;
                params["seed"] = seed;
            } else {
                x = ingest_signal(nt_signal, g);
                params["signal"] = nt_signal;
            }
            if (!nt_signal_out.empty())
                save_signal(x, nt_signal_out);
            if (nt_basis == "l1")
                warn_cap(max_n);
            const auto b = make_basis(g, nt_basis, max_n);
            const auto curve = n_term_curve(b, x);
            io_detail::write_file(nt_out, format_curve(curve));
            if (!nt_report.empty()) {
                json report = {{"params", params},
                               {"basis_tag", std::string(to_string(b.tag()))},
                               {"epsilon", curve.errors},
                               {"order", curve.order},
                               {"timing", {{"seconds", seconds_since(t0)}}}};
                save_json(report, nt_report);
            }
        } else if (*compare) {
            const auto rep = run_comparison(cmp_n, cmp_trials, cmp_sigma, seed, jobs);
            json report = to_json(rep);
            report["params"] = {
                {"n", cmp_n}, {"trials", cmp_trials}, {"sigma", cmp_sigma}, {"seed", seed}, {"jobs", jobs}};
            report["timing"] = {{"seconds", seconds_since(t0)}};
            save_json(report, cmp_out);
        } else if (*ingest) {
            const auto g = in_graph.load();
            const auto x = ingest_signal(in_signal, g);
            if (!in_out.empty())
                save_signal(x, in_out);
            std::cout << "n=" << x.size() << " norm=" << io_detail::format_double(x.norm())
                      << " l1_variation=" << io_detail::format_double(l1_variation(g, x)) << '\n';
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 10 + static_cast<int>(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: InternalError: " << e.what() << '\n';
        return 10 + static_cast<int>(ErrorCode::InternalError);
    }
    return 0;
}
