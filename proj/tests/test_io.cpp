#include <gtest/gtest.h>

#include <filesystem>

#include "test_support.hpp"

using namespace l1gft;
using namespace l1gft::testing;

namespace {

std::string temp_path(const std::string& name)
{
    return (std::filesystem::temp_directory_path() / ("l1gft_io_" + name)).string();
}

} // namespace

TEST(TreeJson, RoundTrip)
{
    const auto g = random_geometric_graph(30, 0.3, 6);
    const auto t = build_merge_tree(g);
    const auto path = temp_path("tree.json");
    save_json(tree_to_json(t), path);
    const auto back = tree_from_json(load_json(path));
    ASSERT_EQ(back.merges().size(), t.merges().size());
    for (std::size_t i = 0; i < t.merges().size(); ++i) {
        EXPECT_EQ(back.merges()[i].a, t.merges()[i].a);
        EXPECT_EQ(back.merges()[i].b, t.merges()[i].b);
        EXPECT_EQ(back.merges()[i].weight, t.merges()[i].weight);
    }
    EXPECT_EQ(greedy_basis_from_tree(back).columns, greedy_basis(g).columns);
    std::filesystem::remove(path);
}

TEST(TreeJson, OneBasedLayout)
{
    Matrix w(2, 2);
    w << 0, 2, 2, 0;
    const auto j = tree_to_json(build_merge_tree(Graph(w)));
    EXPECT_EQ(j.at("n"), 2);
    EXPECT_EQ(j.at("merges")[0].at("A"), json::array({1}));
    EXPECT_EQ(j.at("merges")[0].at("B"), json::array({2}));
    try {
        tree_from_json(json::parse(R"({"n": 2})"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ParseError);
    }
}

TEST(PartitionJson, RoundTrip)
{
    const PartitionMatrix m(5, {VertexSet{1, 4}, VertexSet{0}, VertexSet{2, 3}});
    const auto j = partition_to_json(m);
    EXPECT_EQ(j, json::parse("[[2,5],[1],[3,4]]"));
    EXPECT_EQ(partition_from_json(j, 5), m);
}

TEST(SignalCsv, RoundTripIsBitExact)
{
    Rng rng(1);
    const Signal x = random_signal(50, rng, -1e6, 1e6);
    EXPECT_TRUE((parse_signal(format_signal(x)).array() == x.array()).all());
    EXPECT_TRUE((parse_signal(format_signal(x, false)).array() == x.array()).all());
    EXPECT_EQ(parse_signal("1e-3\n+2\n")(0), 1e-3);
    EXPECT_EQ(parse_signal("1e-3\n+2\n")(1), 2.0);
}

TEST(SignalCsv, IngestLengthMismatch)
{
    const auto path = temp_path("sig.csv");
    save_signal(Signal::Ones(4), path);
    try {
        ingest_signal(path, path_graph());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::LengthMismatch);
    }
    save_signal(Signal::Ones(3), path);
    EXPECT_EQ(ingest_signal(path, path_graph()).size(), 3);
    std::filesystem::remove(path);
}

TEST(SignalCsv, MissingFile)
{
    try {
        ingest_signal(temp_path("does_not_exist.csv"), path_graph());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::IoError);
    }
}

TEST(CurveCsv, RoundTrip)
{
    const OrthonormalBasis id(Matrix::Identity(4, 4), BasisTag::custom);
    const auto c = n_term_curve(id, (Signal(4) << 0.5, -2, 1e-3, 7).finished());
    const auto text = format_curve(c);
    EXPECT_EQ(text.substr(0, 10), "n,epsilon\n");
    EXPECT_EQ(parse_curve(text).errors, c.errors);
}

TEST(MatrixCsv, RoundTrip)
{
    const Matrix b = greedy_basis(random_geometric_graph(12, 0.4, 2)).columns;
    EXPECT_EQ(parse_matrix_csv(format_matrix_csv(b)), b);
}
