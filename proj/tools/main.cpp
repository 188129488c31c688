#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "arbor/bench.hpp"
#include "arbor/error.hpp"
#include "arbor/generators.hpp"
#include "arbor/io.hpp"
#include "arbor/median.hpp"
#include "arbor/odot_ecc.hpp"
#include "arbor/oracle.hpp"
#include "arbor/reductions.hpp"
#include "arbor/subset_ecc.hpp"

using namespace arbor;

namespace {

struct RunConfig {
    std::uint64_t seed = 1;
    bool check = false;
    bool verbose = false;
    int jobs = 1;
    std::string out;
};

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw InputError("cannot open '" + path + "' for writing");
        }
    }
    std::ostream& operator*() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return in;
}

// runs f(i) for i in [0, count) on `jobs` workers, contiguous blocks
template <class F>
void parallel_for(std::size_t count, int jobs, F f) {
    jobs = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
    if (jobs == 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::vector<std::future<void>> work;
    const std::size_t block = (count + jobs - 1) / jobs;
    for (std::size_t lo = 0; lo < count; lo += block) {
        work.push_back(std::async(std::launch::async, [&, lo] {
            for (std::size_t i = lo; i < std::min(count, lo + block); ++i) f(i);
        }));
    }
    for (auto& w : work) w.get();
}

Embedding load_embedding(const std::string& path) {
    auto in = open_input(path);
    LineReader reader(in, path);
    return read_embedding(reader);
}

SystemFile load_system(const std::string& path) {
    auto in = open_input(path);
    LineReader reader(in, path);
    return read_system(reader);
}

int cmd_ecc(const RunConfig& cfg, const Embedding& emb) {
    EccOptions opt;
    opt.jobs = cfg.jobs;
    EccReport rep = ecc_all(emb, opt);
    Output out(cfg.out);
    *out << "# id raw estimate\n";
    for (std::size_t i = 0; i < rep.raw.size(); ++i) {
        *out << i << ' ' << rep.raw[i] << ' ' << format_value(rep.estimate[i]) << '\n';
    }
    *out << "diameter " << rep.raw_diameter << ' ' << format_value(rep.diameter) << '\n';
    *out << "radius " << rep.raw_radius << ' ' << format_value(rep.radius) << '\n';
    if (cfg.verbose) {
        std::cerr << "points " << rep.raw.size() << ", trees " << emb.system.k() << ", "
                  << (rep.used_index ? "index" : "pairwise fallback") << '\n';
    }
    if (cfg.check) {
        auto dist = tree_distances(emb.system);
        const Combine op = combine_for(emb.mode);
        std::vector<std::int64_t> ref(rep.raw.size());
        parallel_for(ref.size(), cfg.jobs,
                     [&](std::size_t i) { ref[i] = brute_odot(dist, emb.points, emb.points[i], op); });
        for (std::size_t i = 0; i < ref.size(); ++i) {
            if (ref[i] != rep.raw[i]) {
                throw InvariantError("point " + std::to_string(i) + ": index gives " + std::to_string(rep.raw[i]) +
                                     ", brute force " + std::to_string(ref[i]));
            }
        }
        std::cerr << "check: " << ref.size() << " eccentricities agree with brute force\n";
    }
    return 0;
}

struct SubsetInput {
    Tree tree;
    std::vector<double> alpha;
    std::vector<SubsetQuery> queries;
};

SubsetInput load_subset(const std::string& tree_path, const std::string& alpha_path, const std::string& query_path) {
    SubsetInput s;
    {
        auto in = open_input(tree_path);
        LineReader r(in, tree_path);
        s.tree = read_tree(r);
    }
    if (alpha_path.empty()) {
        s.alpha.assign(s.tree.size(), 0.0);
    } else {
        auto in = open_input(alpha_path);
        LineReader r(in, alpha_path);
        s.alpha = read_alpha(r, s.tree.size());
    }
    if (query_path.empty() || query_path == "-") {
        LineReader r(std::cin, "<stdin>");
        s.queries = read_subset_queries(r, s.tree.size());
    } else {
        auto in = open_input(query_path);
        LineReader r(in, query_path);
        s.queries = read_subset_queries(r, s.tree.size());
    }
    return s;
}

std::vector<double> run_subset(const SubsetInput& s, int jobs) {
    SubsetEccIndex index(s.tree, s.alpha);
    std::vector<double> out(s.queries.size());
    parallel_for(out.size(), jobs,
                 [&](std::size_t i) { out[i] = index.query(s.queries[i].nodes, s.queries[i].beta); });
    return out;
}

int cmd_subset(const RunConfig& cfg, const SubsetInput& s) {
    auto values = run_subset(s, cfg.jobs);
    if (cfg.check) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            double ref = brute_subset_ecc(s.tree, s.alpha, s.queries[i].nodes, s.queries[i].beta);
            if (ref != values[i]) {
                throw InvariantError("query " + std::to_string(i + 1) + ": index gives " + format_value(values[i]) +
                                     ", brute force " + format_value(ref));
            }
        }
        std::cerr << "check: " << values.size() << " queries agree with brute force\n";
    }
    Output out(cfg.out);
    for (double v : values) *out << format_value(v) << '\n';
    return 0;
}

Graph load_graph(const std::string& path) {
    auto in = open_input(path);
    LineReader r(in, path);
    return read_graph(r);
}

int cmd_median(const RunConfig& cfg, const Graph& g) {
    DiameterReport rep = diameter_cube_free_report(g);
    Output out(cfg.out);
    *out << rep.diameter << '\n';
    if (cfg.verbose) {
        auto field = [](std::int32_t x) { return x < 0 ? std::string("-") : std::to_string(x); };
        *out << "# depth graphs vertices center panels separated neighboring two-neighboring\n";
        for (const auto& l : rep.levels) {
            *out << l.depth << ' ' << l.graphs << ' ' << l.vertices << ' ' << field(l.center_ecc) << ' '
                 << field(l.panels) << ' ' << field(l.separated) << ' ' << field(l.neighboring) << ' '
                 << field(l.two_neighboring) << '\n';
        }
    }
    if (cfg.check) {
        auto ref = diameter(g);
        if (ref != rep.diameter) {
            throw InvariantError("diameter " + std::to_string(rep.diameter) + " but breadth-first search gives " +
                                 std::to_string(ref));
        }
        std::cerr << "check: diameter agrees with breadth-first search\n";
    }
    return 0;
}

TreeShape parse_shape(const std::string& s) {
    static const std::map<std::string, TreeShape> shapes{
        {"recursive", TreeShape::Recursive}, {"prufer", TreeShape::Prufer}, {"caterpillar", TreeShape::Caterpillar},
        {"deep", TreeShape::Deep},           {"path", TreeShape::Path},     {"star", TreeShape::Star}};
    auto it = shapes.find(s);
    if (it == shapes.end()) throw InputError("unknown tree shape '" + s + "'");
    return it->second;
}

struct GenParams {
    std::string kind;
    NodeId n = 16, m = 16, rows = 4, cols = 4, clique = 4;
    int k = 2, rounds = 3;
    std::int64_t count = 32;
    std::string shape = "any";
    std::string alpha_out;
    std::string graph_out;
};

int cmd_gen(const RunConfig& cfg, const GenParams& p) {
    Rng rng(cfg.seed);
    Output out(cfg.out);
    auto tree = [&](NodeId n) { return p.shape == "any" ? random_tree_any(n, rng) : random_tree(n, rng, parse_shape(p.shape)); };
    if (p.kind == "tree") {
        Tree t = tree(p.n);
        write_tree(*out, t);
        if (!p.alpha_out.empty()) {
            std::uniform_int_distribution<int> w(-10, 10);
            std::vector<double> alpha(t.size());
            for (auto& a : alpha) a = w(rng);
            std::ofstream f(p.alpha_out);
            write_alpha(f, alpha);
        }
    } else if (p.kind == "grid") {
        write_graph(*out, grid_graph(p.rows, p.cols));
    } else if (p.kind == "grid-embedding") {
        Embedding emb = product_embedding({path_tree(p.rows), path_tree(p.cols)}, ProductMode::Cartesian);
        write_embedding(*out, emb);
    } else if (p.kind == "tree-product") {
        Tree a = tree(p.n);
        Tree b = tree(p.m);
        write_graph(*out, tree_product(a, b));
    } else if (p.kind == "gated-sub") {
        Tree a = tree(p.n);
        Tree b = tree(p.m);
        Graph g = tree_product(a, b);
        write_graph(*out, g.induced(random_gated_subset(g, rng, p.rounds, 2)));
    } else if (p.kind == "system") {
        TreeSystem sys = random_system(p.k, p.n, rng);
        write_system(*out, sys, random_points(sys, p.count, rng));
    } else if (p.kind == "split-embedding") {
        Graph g = random_split_graph(p.clique, p.n, rng);
        Embedding emb = split_graph_embedding(g, p.clique, rng);
        write_embedding(*out, emb);
        if (!p.graph_out.empty()) {
            std::ofstream f(p.graph_out);
            write_graph(f, g);
        }
    } else {
        throw InputError("unknown generator '" + p.kind + "'");
    }
    return 0;
}

// every index against brute force on the points themselves and on random tuples
void verify_odot(const RunConfig& cfg, const SystemFile& f) {
    if (f.points.empty()) throw InputError("the point set is empty");
    Rng rng(cfg.seed);
    PointSet probes = random_points(f.system, 200, rng);
    for (std::size_t i = 0; i < f.points.size(); ++i) probes.add(f.points[i]);
    auto dist = tree_distances(f.system);
    PlusIndex plus(f.system, f.points);
    MinIndex min(f.system, f.points);
    MaxIndex max(f.system, f.points);
    for (std::size_t q = 0; q < probes.size(); ++q) {
        auto v = probes[q];
        const std::pair<Combine, std::int64_t> got[] = {
            {Combine::Plus, plus.query(v).value}, {Combine::Min, min.query(v).value}, {Combine::Max, max.query(v).value}};
        for (auto [op, value] : got) {
            auto ref = brute_odot(dist, f.points, v, op);
            if (ref != value) {
                throw InvariantError("query " + std::to_string(q) + ": index gives " + std::to_string(value) +
                                     ", brute force " + std::to_string(ref));
            }
        }
    }
    std::cerr << "check: " << probes.size() << " queries agree with brute force for plus, min and max\n";
}

int cmd_verify(RunConfig cfg, const std::string& kind, const std::vector<std::string>& files) {
    cfg.check = true;
    cfg.out = "/dev/null";
    if (kind == "subset") {
        if (files.size() < 2 || files.size() > 3) throw InputError("verify subset takes TREE QUERIES or TREE ALPHA QUERIES");
        auto s = files.size() == 2 ? load_subset(files[0], "", files[1]) : load_subset(files[0], files[1], files[2]);
        cmd_subset(cfg, s);
    } else if (kind == "ecc") {
        if (files.size() != 1) throw InputError("verify ecc takes one embedding file");
        cmd_ecc(cfg, load_embedding(files[0]));
    } else if (kind == "odot") {
        if (files.size() != 1) throw InputError("verify odot takes one system file");
        verify_odot(cfg, load_system(files[0]));
    } else if (kind == "median") {
        if (files.size() != 1) throw InputError("verify median takes one graph file");
        Graph g = load_graph(files[0]);
        if (!g.connected()) throw InvariantError("graph is disconnected");
        if (!check_cube_free(g)) throw InvariantError("graph contains a 3-cube");
        if (g.size() <= 400 && !check_median(g)) throw InvariantError("graph is not median");
        cmd_median(cfg, g);
    } else {
        throw InputError("unknown verify kind '" + kind + "'");
    }
    std::cout << "pass\n";
    return 0;
}

int cmd_bench(const RunConfig& cfg, const std::string& suite, int lo, int hi, int reps, int queries) {
    BenchOptions opt;
    opt.seed = cfg.seed;
    opt.repetitions = reps;
    opt.queries = queries;
    std::vector<BenchRow> rows;
    if (suite == "subset-ecc") {
        rows = bench_subset_ecc(lo, hi, 16, opt);
    } else if (suite == "query-max") {
        std::vector<int> ks;
        for (int k = 1; k <= (1 << std::max(0, hi - lo)); k *= 2) ks.push_back(k);
        rows = bench_query_max(ks, 1 << lo, 1 << lo, opt);
    } else if (suite == "median") {
        rows = bench_median(lo, hi, opt);
    } else {
        throw InputError("unknown bench suite '" + suite + "'");
    }
    Output out(cfg.out);
    *out << "# suite n k build_ns query_ns\n";
    for (const auto& r : rows) {
        *out << r.suite << ' ' << r.n << ' ' << r.k << ' ' << static_cast<std::int64_t>(r.build_ns) << ' '
             << static_cast<std::int64_t>(r.query_ns) << '\n';
    }
    if (suite != "query-max") {
        *out << "# build growth per doubling " << growth_per_doubling(rows, &BenchRow::build_ns, false) << '\n';
        if (suite == "subset-ecc") {
            *out << "# query growth per doubling " << growth_per_doubling(rows, &BenchRow::query_ns, false) << '\n';
        }
    }
    return 0;
}

}

int main(int argc, char** argv) {
    CLI::App app{"eccentricities in tree systems, tree products and median graphs"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    app.add_option("--seed", cfg.seed, "seed for every random choice");
    app.add_flag("--check", cfg.check, "cross-check results against brute force");
    app.add_option("--out", cfg.out, "write results here instead of stdout");
    app.add_option("--jobs", cfg.jobs, "worker threads for batch queries")->check(CLI::PositiveNumber);
    app.add_flag("--verbose", cfg.verbose, "print extra detail");

    std::string file;
    auto* ecc = app.add_subcommand("ecc", "eccentricities of every embedded point");
    ecc->add_option("file", file, "embedding file")->required();

    std::string tree_file, alpha_file, query_file;
    auto* sub = app.add_subcommand("subset-ecc", "weighted eccentricity of node subsets of a tree");
    sub->add_option("tree", tree_file, "tree file")->required();
    sub->add_option("--alpha", alpha_file, "node weight file, zero weights if absent");
    sub->add_option("--queries", query_file, "query file, stdin if absent");

    auto* med = app.add_subcommand("median-diameter", "diameter of a cube-free median graph");
    med->add_option("graph", file, "graph file")->required();

    GenParams gp;
    auto* gen = app.add_subcommand("gen", "write a generated instance");
    gen->add_option("kind", gp.kind, "tree, grid, grid-embedding, tree-product, gated-sub, system, split-embedding")
        ->required();
    gen->add_option("--n", gp.n, "tree size, or independent set size for split-embedding")
        ->check(CLI::PositiveNumber);
    gen->add_option("--m", gp.m, "second tree size")->check(CLI::PositiveNumber);
    gen->add_option("--rows", gp.rows)->check(CLI::PositiveNumber);
    gen->add_option("--cols", gp.cols)->check(CLI::PositiveNumber);
    gen->add_option("--k", gp.k, "trees in a system")->check(CLI::PositiveNumber);
    gen->add_option("--count", gp.count, "points in a system")->check(CLI::NonNegativeNumber);
    gen->add_option("--rounds", gp.rounds, "halfspace cuts for gated-sub")->check(CLI::NonNegativeNumber);
    gen->add_option("--clique", gp.clique)->check(CLI::PositiveNumber);
    gen->add_option("--shape", gp.shape, "recursive, prufer, caterpillar, deep, path, star or any");
    gen->add_option("--alpha-out", gp.alpha_out, "also write random node weights (tree)");
    gen->add_option("--graph-out", gp.graph_out, "also write the graph (split-embedding)");

    std::string verify_kind;
    std::vector<std::string> verify_files;
    auto* ver = app.add_subcommand("verify", "compare against brute force and report pass or fail");
    ver->add_option("kind", verify_kind, "subset, ecc, odot or median")->required();
    ver->add_option("files", verify_files, "input files")->required();

    std::string suite;
    int lo = 10, hi = 14, reps = 3, queries = 2000;
    auto* bench = app.add_subcommand("bench", "doubling-series timings");
    bench->add_option("suite", suite, "subset-ecc, query-max or median")->required();
    bench->add_option("--log-lo", lo, "smallest size exponent")->check(CLI::Range(1, 28));
    bench->add_option("--log-hi", hi, "largest size exponent")->check(CLI::Range(1, 28));
    bench->add_option("--reps", reps)->check(CLI::PositiveNumber);
    bench->add_option("--queries", queries)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "error: usage: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*ecc) return cmd_ecc(cfg, load_embedding(file));
        if (*sub) return cmd_subset(cfg, load_subset(tree_file, alpha_file, query_file));
        if (*med) return cmd_median(cfg, load_graph(file));
        if (*gen) return cmd_gen(cfg, gp);
        if (*ver) return cmd_verify(cfg, verify_kind, verify_files);
        if (*bench) return cmd_bench(cfg, suite, lo, std::max(lo, hi), reps, queries);
    } catch (const Error& e) {
        std::cerr << "error: " << e.kind() << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
