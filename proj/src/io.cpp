#include "arbor/io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "arbor/error.hpp"
#include "arbor/value.hpp"

namespace arbor {

LineReader::LineReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

bool LineReader::next(std::vector<std::string>& tokens) {
    tokens.clear();
    while (std::getline(in_, buffer_)) {
        ++line_;
        std::istringstream words(buffer_);
        std::string w;
        while (words >> w) {
            tokens.push_back(w);
        }
        if (!tokens.empty() && tokens[0][0] != '#') {
            return true;
        }
        tokens.clear();
    }
    return false;
}

std::vector<std::string> LineReader::expect(const std::string& what) {
    std::vector<std::string> tokens;
    if (!next(tokens)) {
        ++line_;
        fail("unexpected end of input, expected " + what);
    }
    return tokens;
}

void LineReader::fail(const std::string& message) const { throw ParseError(source_, line_, message); }

std::int64_t LineReader::integer(const std::string& token, std::int64_t lo, std::int64_t hi) const {
    std::int64_t value = 0;
    auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || end != token.data() + token.size()) {
        fail("'" + token + "' is not an integer");
    }
    if (value < lo || value > hi) {
        fail(token + " is outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return value;
}

double LineReader::real(const std::string& token) const {
    if (token == "-inf") {
        return kNegInf;
    }
    double value = 0;
    auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || end != token.data() + token.size() || !std::isfinite(value)) {
        fail("'" + token + "' is not a finite real or -inf");
    }
    return value;
}

namespace {

constexpr std::int64_t kMaxNodes = 1 << 30;

void expect_count(const LineReader& in, const std::vector<std::string>& tokens, std::size_t count,
                  const std::string& what) {
    if (tokens.size() != count) {
        in.fail("expected " + what + ", got " + std::to_string(tokens.size()) + " fields");
    }
}

}

Tree read_tree(LineReader& in) {
    auto head = in.expect("node count");
    expect_count(in, head, 1, "a node count");
    const auto n = static_cast<NodeId>(in.integer(head[0], 1, kMaxNodes));
    std::vector<Edge> edges;
    edges.reserve(n - 1);
    for (NodeId i = 0; i + 1 < n; ++i) {
        auto t = in.expect("tree edge");
        expect_count(in, t, 2, "an edge 'u v'");
        edges.emplace_back(static_cast<NodeId>(in.integer(t[0], 0, n - 1)),
                           static_cast<NodeId>(in.integer(t[1], 0, n - 1)));
    }
    try {
        return Tree(n, edges);
    } catch (const InputError& e) {
        in.fail(e.what());
    }
}

void write_tree(std::ostream& out, const Tree& t) {
    out << t.size() << '\n';
    for (NodeId v = 0; v < t.size(); ++v) {
        for (NodeId w : t.neighbors(v)) {
            if (v < w) out << v << ' ' << w << '\n';
        }
    }
}

std::vector<double> read_alpha(LineReader& in, NodeId n) {
    std::vector<double> alpha(n);
    std::vector<bool> seen(n, false);
    for (NodeId i = 0; i < n; ++i) {
        auto t = in.expect("weight line");
        expect_count(in, t, 2, "'node value'");
        auto v = static_cast<NodeId>(in.integer(t[0], 0, n - 1));
        if (seen[v]) in.fail("node " + t[0] + " has two weights");
        seen[v] = true;
        alpha[v] = in.real(t[1]);
    }
    std::vector<std::string> extra;
    if (in.next(extra)) in.fail("more weight lines than nodes");
    return alpha;
}

std::string format_value(double x) {
    if (x == kNegInf) return "-inf";
    if (x == kPosInf) return "inf";
    std::ostringstream s;
    s.precision(17);
    s << x;
    return s.str();
}

void write_alpha(std::ostream& out, const std::vector<double>& alpha) {
    for (std::size_t v = 0; v < alpha.size(); ++v) {
        out << v << ' ' << format_value(alpha[v]) << '\n';
    }
}

Graph read_graph(LineReader& in) {
    auto head = in.expect("graph header");
    expect_count(in, head, 2, "'n m'");
    const auto n = static_cast<NodeId>(in.integer(head[0], 1, kMaxNodes));
    const auto m = in.integer(head[1], 0, std::int64_t{1} << 40);
    std::vector<Edge> edges;
    for (std::int64_t i = 0; i < m; ++i) {
        auto t = in.expect("graph edge");
        expect_count(in, t, 2, "an edge 'u v'");
        edges.emplace_back(static_cast<NodeId>(in.integer(t[0], 0, n - 1)),
                           static_cast<NodeId>(in.integer(t[1], 0, n - 1)));
    }
    try {
        return Graph(n, edges);
    } catch (const InputError& e) {
        in.fail(e.what());
    }
}

void write_graph(std::ostream& out, const Graph& g) {
    out << g.size() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) {
        out << u << ' ' << v << '\n';
    }
}

namespace {

void read_tuple(LineReader& in, const TreeSystem& sys, std::vector<std::string>& t, std::vector<NodeId>& tuple) {
    expect_count(in, t, static_cast<std::size_t>(sys.k()), std::to_string(sys.k()) + " node ids");
    tuple.resize(sys.k());
    for (int i = 0; i < sys.k(); ++i) {
        tuple[i] = static_cast<NodeId>(in.integer(t[i], 0, sys.tree(i).size() - 1));
    }
}

}

SystemFile read_system(LineReader& in) {
    auto head = in.expect("tree count");
    expect_count(in, head, 1, "a tree count");
    const int k = static_cast<int>(in.integer(head[0], 1, 1 << 20));
    std::vector<Tree> trees;
    for (int i = 0; i < k; ++i) {
        trees.push_back(read_tree(in));
    }
    TreeSystem sys(std::move(trees));
    auto count_line = in.expect("point count");
    expect_count(in, count_line, 1, "a point count");
    const auto count = in.integer(count_line[0], 0, std::int64_t{1} << 40);
    PointSet points(k);
    std::vector<NodeId> tuple;
    for (std::int64_t p = 0; p < count; ++p) {
        auto t = in.expect("point");
        read_tuple(in, sys, t, tuple);
        points.add(tuple);
    }
    return {std::move(sys), std::move(points)};
}

void write_system(std::ostream& out, const TreeSystem& sys, const PointSet& points) {
    out << sys.k() << '\n';
    for (const Tree& t : sys.trees()) {
        write_tree(out, t);
    }
    out << points.size() << '\n';
    for (std::size_t p = 0; p < points.size(); ++p) {
        auto tuple = points[p];
        for (std::size_t i = 0; i < tuple.size(); ++i) {
            out << (i ? " " : "") << tuple[i];
        }
        out << '\n';
    }
}

Embedding read_embedding(LineReader& in) {
    auto head = in.expect("embedding header");
    if (head.size() < 2) in.fail("expected 'mode quality [amount]'");
    Embedding emb;
    if (head[0] == "system") {
        emb.mode = ProductMode::System;
    } else if (head[0] == "cartesian") {
        emb.mode = ProductMode::Cartesian;
    } else if (head[0] == "strong") {
        emb.mode = ProductMode::Strong;
    } else {
        in.fail("unknown mode '" + head[0] + "', expected system, cartesian or strong");
    }
    if (head[1] == "exact") {
        expect_count(in, head, 2, "'mode exact'");
    } else if (head[1] == "distortion" || head[1] == "stretch") {
        expect_count(in, head, 3, "'mode " + head[1] + " amount'");
        const double amount = in.real(head[2]);
        try {
            emb.quality = head[1] == "distortion" ? Quality::distortion(amount) : Quality::stretch(amount);
        } catch (const InputError& e) {
            in.fail(e.what());
        }
    } else {
        in.fail("unknown quality '" + head[1] + "', expected exact, distortion or stretch");
    }
    SystemFile file = read_system(in);
    if (file.points.empty()) in.fail("an embedding needs at least one point");
    emb.system = std::move(file.system);
    emb.points = std::move(file.points);
    return emb;
}

void write_embedding(std::ostream& out, const Embedding& emb) {
    static const char* modes[] = {"system", "cartesian", "strong"};
    out << modes[static_cast<int>(emb.mode)];
    switch (emb.quality.kind) {
        case Quality::Kind::Exact: out << " exact\n"; break;
        case Quality::Kind::Distortion: out << " distortion " << format_value(emb.quality.amount) << '\n'; break;
        case Quality::Kind::Stretch: out << " stretch " << format_value(emb.quality.amount) << '\n'; break;
    }
    write_system(out, emb.system, emb.points);
}

PointSet read_points(LineReader& in, const TreeSystem& sys) {
    PointSet points(sys.k());
    std::vector<std::string> t;
    std::vector<NodeId> tuple;
    while (in.next(t)) {
        read_tuple(in, sys, t, tuple);
        points.add(tuple);
    }
    return points;
}

std::vector<SubsetQuery> read_subset_queries(LineReader& in, NodeId tree_size) {
    std::vector<SubsetQuery> out;
    std::vector<std::string> t;
    while (in.next(t)) {
        const auto k = in.integer(t[0], 1, tree_size);
        expect_count(in, t, static_cast<std::size_t>(2 * k + 1), "'k u_1..u_k b_1..b_k' with k = " + t[0]);
        SubsetQuery q;
        for (std::int64_t i = 0; i < k; ++i) {
            q.nodes.push_back(static_cast<NodeId>(in.integer(t[1 + i], 0, tree_size - 1)));
            double b = in.real(t[1 + k + i]);
            if (b == kNegInf) in.fail("offsets must be finite");
            q.beta.push_back(b);
        }
        out.push_back(std::move(q));
    }
    return out;
}

}
