#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace arbor {

// one measured instance of a doubling series
struct BenchRow {
    std::string suite;
    std::int64_t n = 0;       // instance size (nodes or vertices)
    int k = 1;                // trees in the system, where relevant
    double build_ns = 0;      // preprocessing, best of the repetitions
    double query_ns = 0;      // mean per query, best of the repetitions
};

struct BenchOptions {
    std::uint64_t seed = 1;
    int repetitions = 3;
    int queries = 2000;
};

// subset eccentricity on random trees of 2^lo .. 2^hi nodes, |U| = subset
std::vector<BenchRow> bench_subset_ecc(int log_lo, int log_hi, int subset, const BenchOptions& opt);
// max-combination queries on systems of k trees for each k in `ks`
std::vector<BenchRow> bench_query_max(const std::vector<int>& ks, int tree_size, int points,
                                      const BenchOptions& opt);
// median-graph diameter on tree products of 2^lo .. 2^hi vertices
std::vector<BenchRow> bench_median(int log_lo, int log_hi, const BenchOptions& opt);

// growth of `value` per doubling of n, as the geometric mean over the series
double growth_per_doubling(const std::vector<BenchRow>& rows, double BenchRow::*value, bool per_node);

}
