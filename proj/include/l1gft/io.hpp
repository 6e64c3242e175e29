#pragma once

// File formats.
//
//   edge-list CSV  optional header, rows "i,j,w" with 1-based vertices;
//                  each undirected edge appears once (either orientation)
//   dense CSV      N rows of N comma-separated weights
//   signal CSV     one value per line, optional header "value"
//   basis CSV      N rows x N columns, column j is basis vector j
//   tree JSON      {"n": N, "merges": [{"k": N, "A": [..], "B": [..], "w": ..}, ..]}
//   partition JSON array of 1-based vertex arrays, blocks in value order
//
// Reals are written with 17 significant digits so they read back bit-exactly.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "greedy.hpp"
#include "transform.hpp"

namespace l1gft {

using json = nlohmann::json;

enum class GraphFormat { automatic, edge_list, dense };

namespace io_detail {

inline std::string_view trim(std::string_view s)
{
    const auto* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

inline std::optional<double> parse_double(std::string_view s)
{
    s = trim(s);
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    double v = 0.0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (s.empty() || ec != std::errc() || ptr != end)
        return std::nullopt;
    return v;
}

/// Non-empty lines split on commas; all fields numeric. A non-numeric first
/// line is treated as a header and skipped.
inline std::vector<std::vector<double>> parse_numeric_csv(std::string_view text)
{
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos)
            nl = text.size();
        const auto line = trim(text.substr(pos, nl - pos));
        pos = nl + 1;
        ++line_no;
        if (line.empty())
            continue;
        std::vector<double> row;
        bool numeric = true;
        std::size_t fpos = 0;
        while (true) {
            auto comma = line.find(',', fpos);
            const auto field = line.substr(fpos, comma == std::string_view::npos ? line.npos : comma - fpos);
            const auto v = parse_double(field);
            if (!v) {
                numeric = false;
                break;
            }
            row.push_back(*v);
            if (comma == std::string_view::npos)
                break;
            fpos = comma + 1;
        }
        if (!numeric) {
            if (rows.empty() && line_no == 1)
                continue;
            fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad number");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorCode::IoError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        fail(ErrorCode::IoError, "cannot write " + path);
    out << text;
    if (!out)
        fail(ErrorCode::IoError, "write failed for " + path);
}

inline std::size_t as_index(double v)
{
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e9)
        fail(ErrorCode::IndexOutOfRange, "vertex index must be a positive integer");
    return static_cast<std::size_t>(v);
}

} // namespace io_detail

/// Parses graph text. Auto-detection picks dense when the rows form a square
/// matrix whose first entry is 0 (edge-list rows start with an index >= 1).
/// For edge lists, `n` fixes the vertex count; otherwise the largest index.
inline Graph parse_graph(std::string_view text, GraphFormat format = GraphFormat::automatic,
                         std::optional<std::size_t> n = std::nullopt)
{
    const auto rows = io_detail::parse_numeric_csv(text);
    if (rows.empty())
        fail(ErrorCode::ParseError, "graph file has no data rows");
    if (format == GraphFormat::automatic) {
        bool square = true;
        for (const auto& r : rows)
            square = square && r.size() == rows.size();
        format = (square && rows[0][0] == 0.0) ? GraphFormat::dense : GraphFormat::edge_list;
    }

    if (format == GraphFormat::dense) {
        const auto dim = static_cast<Eigen::Index>(rows.size());
        Matrix w(dim, dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            if (static_cast<Eigen::Index>(rows[i].size()) != dim)
                fail(ErrorCode::ParseError, "dense row " + std::to_string(i + 1) + " has wrong length");
            for (Eigen::Index j = 0; j < dim; ++j)
                w(i, j) = rows[i][j];
        }
        return Graph(std::move(w));
    }

    std::size_t max_index = 0;
    for (const auto& r : rows) {
        if (r.size() != 3)
            fail(ErrorCode::ParseError, "edge-list rows must be i,j,w");
        max_index = std::max({max_index, io_detail::as_index(r[0]), io_detail::as_index(r[1])});
    }
    const std::size_t dim = n.value_or(max_index);
    if (max_index > dim)
        fail(ErrorCode::IndexOutOfRange, "edge references vertex beyond N");
    Matrix w = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    std::vector<char> seen(dim * dim, 0);
    for (const auto& r : rows) {
        const auto i = io_detail::as_index(r[0]) - 1;
        const auto j = io_detail::as_index(r[1]) - 1;
        if (i == j)
            fail(ErrorCode::SelfLoop, "edge " + std::to_string(i + 1) + "," + std::to_string(j + 1));
        if (r[2] < 0.0)
            fail(ErrorCode::NegativeWeight, "edge " + std::to_string(i + 1) + "," + std::to_string(j + 1));
        if (seen[i * dim + j])
            fail(ErrorCode::DuplicateEdge, "edge " + std::to_string(i + 1) + "," + std::to_string(j + 1));
        seen[i * dim + j] = seen[j * dim + i] = 1;
        w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = r[2];
        w(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = r[2];
    }
    return Graph(std::move(w));
}

inline Graph load_graph(const std::string& path, GraphFormat format = GraphFormat::automatic,
                        std::optional<std::size_t> n = std::nullopt)
{
    return parse_graph(io_detail::read_file(path), format, n);
}

inline std::string format_matrix_csv(const Matrix& m)
{
    std::string out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j)
                out += ',';
            out += io_detail::format_double(m(i, j));
        }
        out += '\n';
    }
    return out;
}

inline std::string format_graph_dense(const Graph& g) { return format_matrix_csv(g.weights()); }

inline void save_graph_dense(const Graph& g, const std::string& path)
{
    io_detail::write_file(path, format_graph_dense(g));
}

inline Matrix parse_matrix_csv(std::string_view text)
{
    const auto rows = io_detail::parse_numeric_csv(text);
    if (rows.empty())
        fail(ErrorCode::ParseError, "matrix file has no data rows");
    const auto r = static_cast<Eigen::Index>(rows.size());
    const auto c = static_cast<Eigen::Index>(rows[0].size());
    Matrix m(r, c);
    for (Eigen::Index i = 0; i < r; ++i) {
        if (static_cast<Eigen::Index>(rows[i].size()) != c)
            fail(ErrorCode::ParseError, "ragged matrix row " + std::to_string(i + 1));
        for (Eigen::Index j = 0; j < c; ++j)
            m(i, j) = rows[i][j];
    }
    return m;
}

inline Matrix load_matrix_csv(const std::string& path)
{
    return parse_matrix_csv(io_detail::read_file(path));
}

inline void save_matrix_csv(const Matrix& m, const std::string& path)
{
    io_detail::write_file(path, format_matrix_csv(m));
}

inline Signal parse_signal(std::string_view text)
{
    const auto rows = io_detail::parse_numeric_csv(text);
    Signal x(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != 1)
            fail(ErrorCode::ParseError, "signal line " + std::to_string(i + 1) + " must hold one value");
        if (!std::isfinite(rows[i][0]))
            fail(ErrorCode::ParseError, "signal line " + std::to_string(i + 1) + " is not finite");
        x(static_cast<Eigen::Index>(i)) = rows[i][0];
    }
    return x;
}

inline std::string format_signal(const Signal& x, bool header = true)
{
    std::string out = header ? "value\n" : "";
    for (Eigen::Index i = 0; i < x.size(); ++i)
        out += io_detail::format_double(x(i)) + '\n';
    return out;
}

inline void save_signal(const Signal& x, const std::string& path)
{
    io_detail::write_file(path, format_signal(x));
}

/// Reads a signal and checks it against the graph's vertex count.
inline Signal ingest_signal(const std::string& path, const Graph& g)
{
    Signal x = parse_signal(io_detail::read_file(path));
    if (static_cast<std::size_t>(x.size()) != g.n())
        fail(ErrorCode::LengthMismatch, "signal has " + std::to_string(x.size()) +
                                            " values, graph has " + std::to_string(g.n()) + " vertices");
    return x;
}

inline std::string format_curve(const ApproximationCurve& curve)
{
    std::string out = "n,epsilon\n";
    for (std::size_t i = 0; i < curve.errors.size(); ++i)
        out += std::to_string(i) + ',' + io_detail::format_double(curve.errors[i]) + '\n';
    return out;
}

inline ApproximationCurve parse_curve(std::string_view text)
{
    const auto rows = io_detail::parse_numeric_csv(text);
    ApproximationCurve c;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != 2 || rows[i][0] != static_cast<double>(i))
            fail(ErrorCode::ParseError, "curve rows must be n,epsilon with n = 0,1,..");
        c.errors.push_back(rows[i][1]);
    }
    return c;
}

inline json partition_to_json(const PartitionMatrix& m)
{
    json out = json::array();
    for (const auto& b : m.blocks())
        out.push_back(b.one_based());
    return out;
}

inline PartitionMatrix partition_from_json(const json& j, std::size_t n)
{
    if (!j.is_array())
        fail(ErrorCode::ParseError, "partition must be an array of arrays");
    std::vector<VertexSet> blocks;
    for (const auto& b : j)
        blocks.push_back(VertexSet::from_one_based(b.get<std::vector<std::size_t>>()));
    return PartitionMatrix(n, std::move(blocks));
}

inline json tree_to_json(const MergeTree& tree)
{
    json merges = json::array();
    for (const auto& r : tree.merges())
        merges.push_back({{"k", r.k}, {"A", r.a.one_based()}, {"B", r.b.one_based()}, {"w", r.weight}});
    return {{"n", tree.n()}, {"merges", merges}};
}

inline MergeTree tree_from_json(const json& j)
{
    try {
        const auto n = j.at("n").get<std::size_t>();
        std::vector<MergeRecord> merges;
        for (const auto& m : j.at("merges")) {
            merges.push_back({m.at("k").get<std::size_t>(),
                              VertexSet::from_one_based(m.at("A").get<std::vector<std::size_t>>()),
                              VertexSet::from_one_based(m.at("B").get<std::vector<std::size_t>>()),
                              m.value("w", 0.0)});
        }
        return MergeTree(n, std::move(merges));
    } catch (const json::exception& e) {
        fail(ErrorCode::ParseError, std::string("tree JSON: ") + e.what());
    }
}

inline json load_json(const std::string& path)
{
    try {
        return json::parse(io_detail::read_file(path));
    } catch (const json::exception& e) {
        fail(ErrorCode::ParseError, path + ": " + e.what());
    }
}

inline void save_json(const json& j, const std::string& path)
{
    io_detail::write_file(path, j.dump(2) + '\n');
}

} // namespace l1gft
