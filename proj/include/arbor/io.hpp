#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "arbor/graph.hpp"
#include "arbor/reductions.hpp"
#include "arbor/tree.hpp"
#include "arbor/tree_system.hpp"

namespace arbor {

/*
 * Line oriented text input. Blank lines and lines starting with '#' are
 * skipped; every parse failure raises ParseError naming source and line.
 */
class LineReader {
public:
    LineReader(std::istream& in, std::string source);

    // next content line split on whitespace; false at end of input
    bool next(std::vector<std::string>& tokens);
    // like next, but end of input is an error mentioning `what`
    std::vector<std::string> expect(const std::string& what);

    std::size_t line() const { return line_; }
    const std::string& source() const { return source_; }
    [[noreturn]] void fail(const std::string& message) const;

    std::int64_t integer(const std::string& token, std::int64_t lo, std::int64_t hi) const;
    // decimal real; "-inf" is the only accepted non-finite literal
    double real(const std::string& token) const;

private:
    std::istream& in_;
    std::string source_;
    std::size_t line_ = 0;
    std::string buffer_;
};

Tree read_tree(LineReader& in);
void write_tree(std::ostream& out, const Tree& t);

// one "node value" line per node, every node exactly once
std::vector<double> read_alpha(LineReader& in, NodeId n);
void write_alpha(std::ostream& out, const std::vector<double>& alpha);

// "n m" header then m edge lines
Graph read_graph(LineReader& in);
void write_graph(std::ostream& out, const Graph& g);

struct SystemFile {
    TreeSystem system;
    PointSet points;
};

// k, k tree blocks, |S|, then |S| lines of k node ids
SystemFile read_system(LineReader& in);
void write_system(std::ostream& out, const TreeSystem& sys, const PointSet& points);

// header "mode quality [amount]", e.g. "cartesian stretch 2", then a system file
Embedding read_embedding(LineReader& in);
void write_embedding(std::ostream& out, const Embedding& emb);

// remaining lines of k node ids each
PointSet read_points(LineReader& in, const TreeSystem& sys);

struct SubsetQuery {
    std::vector<NodeId> nodes;
    std::vector<double> beta;
};

// remaining lines "k u_1 .. u_k b_1 .. b_k"
std::vector<SubsetQuery> read_subset_queries(LineReader& in, NodeId tree_size);

std::string format_value(double x);

}
