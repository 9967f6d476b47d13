#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bubblekit/graph.hpp"
#include "bubblekit/kmer.hpp"
#include "bubblekit/sizing.hpp"

namespace bk {

// Numeric table with named columns, printed as TSV.
struct BenchTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::string tsv() const;
    std::vector<double> column(const std::string& name) const;  // throws ConfigError on unknown names
};

// Sorted distinct canonical k-mers drawn uniformly at random.
std::vector<u128> random_canonical_kmers(uint64_t n, int k, uint64_t seed);

// Sorted distinct canonical k-mers of a uniform random sequence, which is the shape a
// solid set takes when reads cover a genome; generates until n distinct k-mers exist.
std::vector<u128> genome_kmers(uint64_t n, int k, uint64_t seed);

struct CascadeBenchParams {
    std::vector<uint64_t> sizes{10000, 100000, 1000000};
    int t = 4;
    int k = 32;
    SizingMode sizing = SizingMode::SingleR;
    bool genome_like = true;
    int threads = 1;  // > 1 additionally times a parallel build
    uint64_t seed = 1;
};

// Columns: N, t, k, bits_per_kmer, predicted_bits, serial_s, parallel_s, level_0 .. level_t (traversal mix, %).
BenchTable bench_cascade(const CascadeBenchParams& p);

// Chain of variant gadgets with unitig-like arc weights: substitution diamonds, skipped
// segments (a direct arc beside a longer path), alternative segments nested with
// diamonds, and dead-end tips.
Digraph synthetic_cdbg(std::mt19937_64& rng, uint32_t gadgets, Weight max_unitig = 60);

struct BubbleBenchParams {
    uint32_t graphs = 100;
    uint32_t min_n = 4, max_n = 24;
    double density = 0.15;
    uint32_t cdbg_graphs = 20;
    uint32_t cdbg_gadgets = 14;
    Weight alpha1 = 1000;
    uint64_t seed = 7;
};

// Linear-delay suite over random digraphs. Columns: graph, n, m, bubbles, total_ops, max_delay.
BenchTable bench_bubble_delay(const BubbleBenchParams& p);

// Bounded vs pruned backtracking over every source of synthetic cDBG graphs.
// Columns: graph, n, m, bubbles, bounded_ops, backtrack_ops, agree.
BenchTable bench_bubble_bounded(const BubbleBenchParams& p);

// Diamond family: columns n, k, cycles, certificate_ops, baseline_ops, johnson_ops.
BenchTable bench_paths(uint32_t min_k = 2, uint32_t max_k = 30, uint32_t step = 4);

}  // namespace bk
