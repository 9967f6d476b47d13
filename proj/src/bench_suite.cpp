#include "bubblekit/bench_suite.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>

#include "bubblekit/bubbles.hpp"
#include "bubblekit/cascade.hpp"
#include "bubblekit/errors.hpp"
#include "bubblekit/paths.hpp"

namespace bk {

std::string BenchTable::tsv() const {
    std::ostringstream o;
    for (size_t i = 0; i < columns.size(); ++i) o << (i ? "\t" : "") << columns[i];
    o << '\n';
    for (const auto& r : rows) {
        for (size_t i = 0; i < r.size(); ++i) o << (i ? "\t" : "") << r[i];
        o << '\n';
    }
    return o.str();
}

std::vector<double> BenchTable::column(const std::string& name) const {
    auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw ConfigError("no column " + name);
    const size_t c = static_cast<size_t>(it - columns.begin());
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[c]);
    return out;
}

std::vector<u128> random_canonical_kmers(uint64_t n, int k, uint64_t seed) {
    std::mt19937_64 rng(seed);
    const u128 mask = kmer_mask(k);
    std::vector<u128> v;
    v.reserve(n + n / 8);
    while (v.size() < n) {
        const uint64_t want = n - v.size();
        for (uint64_t i = 0; i < want + want / 16 + 16; ++i) {
            const u128 x = ((static_cast<u128>(rng()) << 64) | rng()) & mask;
            v.push_back(canonical_packed(x, k));
        }
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    v.resize(n);
    return v;
}

std::vector<u128> genome_kmers(uint64_t n, int k, uint64_t seed) {
    std::mt19937_64 rng(seed);
    const u128 mask = kmer_mask(k);
    std::vector<u128> v;
    v.reserve(n + n / 8);
    u128 x = 0;
    for (int i = 0; i < k - 1; ++i) x = (x << 2) | static_cast<u128>(rng() & 3);
    while (v.size() < n) {
        const uint64_t want = n - v.size();
        for (uint64_t i = 0; i < want + want / 32 + 16; ++i) {
            x = ((x << 2) | static_cast<u128>(rng() & 3)) & mask;
            v.push_back(canonical_packed(x, k));
        }
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    v.resize(n);
    return v;
}

BenchTable bench_cascade(const CascadeBenchParams& p) {
    BenchTable t;
    t.columns = {"N", "t", "k", "bits_per_kmer", "predicted_bits", "serial_s", "parallel_s"};
    for (int i = 0; i <= p.t; ++i) t.columns.push_back("level_" + std::to_string(i));
    const SizingPlan plan = plan_sizing(p.t, p.k, p.sizing);
    for (uint64_t N : p.sizes) {
        const auto keys = p.genome_like ? genome_kmers(N, p.k, p.seed + N) : random_canonical_kmers(N, p.k, p.seed + N);
        CascadeOptions o;
        o.seed = p.seed;
        o.threads = 1;
        auto t0 = std::chrono::steady_clock::now();
        CascadingBloom c = build_cascade(keys, p.k, plan, o);
        const double serial = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        double parallel = serial;
        if (p.threads > 1) {
            o.threads = p.threads;
            t0 = std::chrono::steady_clock::now();
            CascadingBloom cp = build_cascade(keys, p.k, plan, o);
            parallel = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
        const auto hist = traversal_histogram(c, keys, std::max(1, p.threads));
        double total = 0;
        for (auto h : hist) total += static_cast<double>(h);
        std::vector<double> row{static_cast<double>(N), static_cast<double>(p.t), static_cast<double>(p.k),
                                c.bits_per_kmer(), plan.predicted_bits_per_kmer, serial, parallel};
        for (auto h : hist) row.push_back(total > 0 ? 100.0 * static_cast<double>(h) / total : 0.0);
        t.rows.push_back(std::move(row));
    }
    return t;
}

Digraph synthetic_cdbg(std::mt19937_64& rng, uint32_t gadgets, Weight max_unitig) {
    struct A {
        uint32_t u, v;
        Weight w;
    };
    std::vector<A> arcs;
    uint32_t n = 1;
    std::uniform_int_distribution<Weight> len(1, max_unitig);
    auto fresh = [&] { return n++; };
    auto chain = [&](uint32_t from, uint32_t nodes) {
        uint32_t cur = from;
        for (uint32_t i = 0; i < nodes; ++i) {
            uint32_t x = fresh();
            arcs.push_back({cur, x, len(rng)});
            cur = x;
        }
        return cur;
    };
    auto diamond = [&](uint32_t from) {
        uint32_t a = fresh(), b = fresh(), to = fresh();
        const Weight w = len(rng);
        arcs.push_back({from, a, w});
        arcs.push_back({from, b, w});
        const Weight w2 = len(rng);
        arcs.push_back({a, to, w2});
        arcs.push_back({b, to, w2});
        return to;
    };
    uint32_t cur = 0;
    for (uint32_t g = 0; g < gadgets; ++g) {
        switch (rng() % 4) {
            case 0:
                cur = diamond(cur);
                break;
            case 1: {  // skipped segment
                const uint32_t start = cur;
                uint32_t end = chain(start, 2 + static_cast<uint32_t>(rng() % 6));
                arcs.push_back({start, end, len(rng)});
                cur = end;
                break;
            }
            case 2: {  // alternative segment carrying substitutions
                const uint32_t start = cur;
                uint32_t x = chain(start, 1);
                for (uint32_t d = 0, nd = 1 + static_cast<uint32_t>(rng() % 3); d < nd; ++d) x = diamond(x);
                uint32_t y = chain(start, 1 + static_cast<uint32_t>(rng() % 3));
                const uint32_t end = fresh();
                arcs.push_back({x, end, len(rng)});
                arcs.push_back({y, end, len(rng)});
                cur = end;
                break;
            }
            default: {  // tip
                chain(cur, 1 + static_cast<uint32_t>(rng() % 3));
                cur = chain(cur, 1);
                break;
            }
        }
    }
    Digraph d(n);
    for (const A& a : arcs) d.add_arc(a.u, a.v, a.w);
    d.sort_adjacency();
    return d;
}

namespace {

Digraph random_digraph(std::mt19937_64& rng, uint32_t n, double p) {
    Digraph g(n);
    std::bernoulli_distribution coin(p);
    for (uint32_t u = 0; u < n; ++u)
        for (uint32_t v = 0; v < n; ++v)
            if (u != v && coin(rng)) g.add_arc(u, v, 1);
    return g;
}

}  // namespace

BenchTable bench_bubble_delay(const BubbleBenchParams& p) {
    BenchTable t;
    t.columns = {"graph", "n", "m", "bubbles", "total_ops", "max_delay"};
    std::mt19937_64 rng(p.seed);
    for (uint32_t i = 0; i < p.graphs; ++i) {
        const uint32_t n =
            p.min_n + static_cast<uint32_t>(rng() % (p.max_n - p.min_n + 1));
        Digraph g = random_digraph(rng, n, p.density);
        OpCounter op;
        uint64_t last = 0, max_delay = 0, bubbles = 0;
        BubbleSink sink = [&](const Bubble&) {
            max_delay = std::max(max_delay, op.ops - last);
            last = op.ops;
            ++bubbles;
            return true;
        };
        for (uint32_t s = 0; s < g.n(); ++s) {
            last = op.ops;
            list_bubbles_linear_delay(g, s, sink, &op);
            max_delay = std::max(max_delay, op.ops - last);
        }
        t.rows.push_back({static_cast<double>(i), static_cast<double>(g.n()), static_cast<double>(g.m()),
                          static_cast<double>(bubbles), static_cast<double>(op.ops),
                          static_cast<double>(max_delay)});
    }
    return t;
}

BenchTable bench_bubble_bounded(const BubbleBenchParams& p) {
    BenchTable t;
    t.columns = {"graph", "n", "m", "bubbles", "bounded_ops", "backtrack_ops", "agree"};
    std::mt19937_64 rng(p.seed ^ 0x9E3779B97F4A7C15ULL);
    BubbleConstraints c;
    c.alpha1 = p.alpha1;
    c.alpha2 = p.alpha1;
    for (uint32_t i = 0; i < p.cdbg_graphs; ++i) {
        Digraph g = synthetic_cdbg(rng, p.cdbg_gadgets);
        OpCounter ob, ok;
        std::set<std::pair<std::vector<uint32_t>, std::vector<uint32_t>>> a, b;
        for (uint32_t s = 0; s < g.n(); ++s) {
            list_bounded_bubbles(g, s, c, [&](const Bubble& x) {
                a.insert({x.path1, x.path2});
                return true;
            }, &ob);
            enumerate_as_bubbles(g, s, c, [&](const Bubble& x) {
                b.insert({x.path1, x.path2});
                return true;
            }, &ok);
        }
        t.rows.push_back({static_cast<double>(i), static_cast<double>(g.n()), static_cast<double>(g.m()),
                          static_cast<double>(a.size()), static_cast<double>(ob.ops), static_cast<double>(ok.ops),
                          a == b ? 1.0 : 0.0});
    }
    return t;
}

BenchTable bench_paths(uint32_t min_k, uint32_t max_k, uint32_t step) {
    BenchTable t;
    t.columns = {"n", "k", "cycles", "certificate_ops", "baseline_ops", "johnson_ops"};
    for (uint32_t k = min_k; k <= max_k; k += step) {
        UGraph g = diamond_graph(k);
        uint64_t count = 0;
        PathSink sink = [&](const VertexPath&) {
            ++count;
            return true;
        };
        OpCounter oc, ob, oj;
        list_cycles(g, StPathMode::Certificate, sink, &oc);
        const uint64_t cycles = count;
        list_cycles(g, StPathMode::Baseline, sink, &ob);
        list_cycles_johnson(g, sink, &oj);
        t.rows.push_back({static_cast<double>(g.n()), static_cast<double>(k), static_cast<double>(cycles),
                          static_cast<double>(oc.ops), static_cast<double>(ob.ops), static_cast<double>(oj.ops)});
    }
    return t;
}

}  // namespace bk
