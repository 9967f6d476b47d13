// Acceptance suite: prints one PASS/FAIL line per criterion and exits non-zero if any fail.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bubblekit/bench_suite.hpp"
#include "bubblekit/bubbles.hpp"
#include "bubblekit/cascade.hpp"
#include "bubblekit/errors.hpp"
#include "bubblekit/paths.hpp"
#include "bubblekit/pipeline.hpp"
#include "bubblekit/sizing.hpp"
#include "oracles.hpp"

using namespace bk;
using oracle::Path;
using oracle::PathPair;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
    char buf[1024];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool in_sorted(const std::vector<u128>& v, u128 x) { return std::binary_search(v.begin(), v.end(), x); }

std::string random_dna(std::mt19937_64& rng, size_t n) {
    std::string s(n, 'A');
    for (auto& c : s) c = "ACGT"[rng() % 4];
    return s;
}

size_t common_prefix(const std::string& x, const std::string& y) {
    size_t i = 0;
    while (i < x.size() && i < y.size() && x[i] == y[i]) ++i;
    return i;
}

size_t common_suffix(const std::string& x, const std::string& y) {
    size_t i = 0;
    while (i < x.size() && i < y.size() && x[x.size() - 1 - i] == y[y.size() - 1 - i]) ++i;
    return i;
}

std::multiset<std::pair<Path, Weight>> as_multiset(const std::vector<WeightedPath>& v) {
    std::multiset<std::pair<Path, Weight>> r;
    for (const auto& p : v) r.insert({p.vertices, p.weight});
    return r;
}

WeightedPathSink collect_into(std::vector<WeightedPath>& out) {
    return [&out](const WeightedPath& p) { return out.push_back(p), true; };
}

// Collects bubble keys; counts duplicates and malformed outputs.
struct BubbleBag {
    std::set<PathPair> keys;
    uint64_t emitted = 0, bad = 0;
    BubbleSink sink(const Digraph& g) {
        return [this, &g](const Bubble& b) {
            ++emitted;
            if (!is_bubble(g, b)) ++bad;
            keys.insert(oracle::key(b));
            return true;
        };
    }
    uint64_t duplicates() const { return emitted - keys.size(); }
};

// ---------------------------------------------------------------- 1, 2
Outcome cascade_memory() {
    const uint64_t N = 1000000;
    const auto t0 = Clock::now();
    const auto keys = random_canonical_kmers(N, 32, 101);
    CascadeOptions o;
    o.seed = 7;
    const CascadingBloom c4 = build_cascade(keys, 32, plan_sizing(4, 32, SizingMode::SingleR), o);
    const CascadingBloom c1 = build_cascade(keys, 32, plan_sizing(1, 32, SizingMode::SingleR), o);
    const double secs = seconds_since(t0);
    const double b4 = c4.bits_per_kmer(), b1 = c1.bits_per_kmer();
    const double rel = std::abs(b4 - 8.664) / 8.664;
    Outcome r;
    r.pass = rel <= 0.10 && b1 >= 1.25 * b4 && secs < 120;
    r.detail = fmt("N=%llu uniform: t=4 %.3f bits/k-mer (%.1f%% from 8.664), t=1 %.3f (x%.3f), %.1f s",
                   static_cast<unsigned long long>(N), b4, 100 * rel, b1, b1 / b4, secs);
    return r;
}

Outcome query_mix() {
    const uint64_t N = 1000000;
    const auto keys = genome_kmers(N, 32, 202);
    CascadeOptions o;
    o.seed = 11;
    const CascadingBloom c = build_cascade(keys, 32, fixed_plan(4, 32, 6.049), o);
    const auto h = traversal_histogram(c, keys, 1);
    const double total = static_cast<double>(std::accumulate(h.begin(), h.end(), uint64_t{0}));
    const double want[5] = {70.90, 23.63, 3.88, 1.29, 0.3};
    Outcome r;
    r.pass = h.size() == 5;
    std::string mix;
    double worst = 0;
    for (size_t i = 0; i < h.size() && i < 5; ++i) {
        const double pct = 100.0 * static_cast<double>(h[i]) / total;
        worst = std::max(worst, std::abs(pct - want[i]));
        mix += fmt("%s%.2f", i ? "/" : "", pct);
    }
    r.pass = r.pass && worst <= 1.5;
    r.detail = fmt("genome-like N=%llu, mix %s%% (max deviation %.2f pts); %.3f bits/k-mer",
                   static_cast<unsigned long long>(N), mix.c_str(), worst, c.bits_per_kmer());
    return r;
}

// ---------------------------------------------------------------- 3
Outcome cascade_exactness() {
    std::mt19937_64 rng(303);
    uint64_t errors = 0, queries = 0, largest = 0;
    for (int it = 0; it < 100; ++it) {
        const int k = 15 + static_cast<int>(rng() % 49);
        const uint64_t n = it == 0 ? 100000 : 1000 + rng() % 99001;
        largest = std::max(largest, n);
        const auto keys = it % 2 ? random_canonical_kmers(n, k, rng()) : genome_kmers(n, k, rng());
        const int t = std::vector<int>{1, 2, 4, 6}[rng() % 4];
        CascadeOptions o;
        o.seed = rng();
        const CascadingBloom c = build_cascade(keys, k, plan_sizing(t, k, SizingMode::SingleR), o);
        u128 e[8];
        for (u128 x : keys) {
            ++queries;
            errors += !c.contains(x);
            canonical_extensions(x, k, e);
            for (u128 y : e) {
                ++queries;
                errors += c.contains(y) != in_sorted(keys, y);
            }
        }
    }
    return {errors == 0, fmt("100 sets up to %llu k-mers, %llu queries, %llu errors",
                             static_cast<unsigned long long>(largest), static_cast<unsigned long long>(queries),
                             static_cast<unsigned long long>(errors))};
}

// ---------------------------------------------------------------- 4
Outcome bubble_oracle() {
    std::mt19937_64 rng(404);
    uint64_t mismatches = 0, duplicates = 0, bad = 0, bubbles = 0;
    auto check = [&](const Digraph& g, const BubbleConstraints& c) {
        for (uint32_t s = 0; s < g.n(); ++s) {
            BubbleBag lin, bnd;
            list_bubbles_linear_delay(g, s, lin.sink(g));
            list_bounded_bubbles(g, s, c, bnd.sink(g));
            mismatches += lin.keys != oracle::bubbles(g, s);
            mismatches += bnd.keys != oracle::bubbles(g, s, c.alpha1, c.alpha2, c.beta);
            duplicates += lin.duplicates() + bnd.duplicates();
            bad += lin.bad + bnd.bad;
            bubbles += lin.emitted;
        }
    };
    for (int it = 0; it < 500; ++it) {
        const uint32_t n = 1 + static_cast<uint32_t>(rng() % 7);
        const Digraph g = oracle::random_digraph(rng, n, 0.15 + 0.6 * static_cast<double>(rng() % 100) / 100.0);
        BubbleConstraints c;
        c.alpha1 = it % 2 ? kInf : static_cast<Weight>(rng() % 7);
        c.alpha2 = c.alpha1 == kInf ? kInf : static_cast<Weight>(rng() % (c.alpha1 + 1));
        check(g, c);
    }
    for (int it = 0; it < 150; ++it) {
        const uint32_t n = 2 + static_cast<uint32_t>(rng() % 8);
        const Digraph g = oracle::random_digraph(rng, n, 0.3, 0, 6);
        BubbleConstraints c;
        c.alpha1 = static_cast<Weight>(rng() % 20);
        c.alpha2 = static_cast<Weight>(rng() % (c.alpha1 + 1));
        c.beta = rng() % 3 == 0 ? static_cast<Weight>(rng() % 4) : 0;
        check(g, c);
    }
    return {mismatches == 0 && duplicates == 0 && bad == 0,
            fmt("500 unweighted (n<=7) + 150 weighted (n<=9) digraphs, %llu bubbles; %llu mismatches, "
                "%llu duplicates, %llu malformed",
                static_cast<unsigned long long>(bubbles), static_cast<unsigned long long>(mismatches),
                static_cast<unsigned long long>(duplicates), static_cast<unsigned long long>(bad))};
}

// ---------------------------------------------------------------- 5
Outcome linear_delay() {
    const BenchTable t = bench_bubble_delay(BubbleBenchParams{});
    const auto n = t.column("n"), m = t.column("m"), d = t.column("max_delay");
    double sxy = 0, sxx = 0;
    for (size_t i = 0; i < d.size(); ++i) {
        const double x = n[i] + m[i];
        sxy += x * d[i];
        sxx += x * x;
    }
    const double C = sxy / sxx;
    double worst = 0;
    size_t outliers = 0;
    for (size_t i = 0; i < d.size(); ++i) {
        const double ratio = d[i] / (n[i] + m[i]);
        worst = std::max(worst, ratio);
        outliers += ratio > 2 * C;
    }
    return {d.size() == 100 && outliers == 0,
            fmt("%zu graphs, fitted C=%.2f, worst max_delay/(n+m)=%.2f (%.2f C), %zu beyond 2C", d.size(), C, worst,
                worst / C, outliers)};
}

// ---------------------------------------------------------------- 6
Outcome cycle_optimality() {
    const BenchTable t = bench_paths(2, 30, 1);
    const auto n = t.column("n"), k = t.column("k"), cyc = t.column("cycles");
    const auto cert = t.column("certificate_ops"), john = t.column("johnson_ops");
    std::vector<double> xn, yc, yj;
    bool counts_ok = true;
    for (size_t i = 0; i < n.size(); ++i) {
        counts_ok = counts_ok && cyc[i] == k[i] * k[i] + k[i] * (k[i] - 1);
        if (n[i] >= 31) {
            xn.push_back(n[i]);
            yc.push_back(cert[i]);
            yj.push_back(john[i]);
        }
    }
    for (uint32_t kk = 1; kk <= 5; ++kk)
        counts_ok = counts_ok && oracle::cycles(diamond_graph(kk)).size() == kk * kk + kk * (kk - 1);
    const double ec = oracle::loglog_slope(xn, yc), ej = oracle::loglog_slope(xn, yj);
    const double ec_all = oracle::loglog_slope(n, cert), ej_all = oracle::loglog_slope(n, john);
    return {counts_ok && ec <= 2.2 && ej >= 2.8 && n.back() == 63,
            fmt("diamonds n=31..63: certificate exponent %.3f, Johnson %.3f (n=7..63: %.3f / %.3f); "
                "closed-form counts %s",
                ec, ej, ec_all, ej_all, counts_ok ? "ok" : "WRONG")};
}

// ---------------------------------------------------------------- 7
Outcome bounded_paths() {
    std::mt19937_64 rng(707);
    uint64_t bad_equiv = 0, bad_order = 0, bad_peak = 0, instances = 0, paths = 0;
    auto run_directed = [&](const Digraph& g, uint32_t s, uint32_t t, Weight alpha,
                            const std::multiset<std::pair<Path, Weight>>& want) {
        std::vector<WeightedPath> rec, st, hp;
        list_bounded_st_paths(g, s, t, alpha, collect_into(rec));
        const PathEnumStats ss = list_paths_ordered(g, s, t, alpha, OrderContainer::Stack, std::nullopt, collect_into(st));
        const PathEnumStats hs = list_paths_ordered(g, s, t, alpha, OrderContainer::Heap, std::nullopt, collect_into(hp));
        bad_equiv += as_multiset(rec) != want || as_multiset(st) != want || as_multiset(hp) != want;
        bool order_ok = st.size() == rec.size();
        for (size_t i = 0; order_ok && i < st.size(); ++i) order_ok = st[i].vertices == rec[rec.size() - 1 - i].vertices;
        for (size_t i = 1; i < hp.size(); ++i) order_ok = order_ok && hp[i - 1].weight <= hp[i].weight;
        bad_order += !order_ok;
        bad_peak += hs.peak_container > want.size() || ss.peak_container > g.m();
        paths += want.size();
    };
    for (int it = 0; it < 300; ++it, ++instances) {
        const uint32_t n = 2 + static_cast<uint32_t>(rng() % 8);
        const UGraph u = oracle::random_ugraph(rng, n, 0.35, 0, 5);
        const Weight alpha = static_cast<Weight>(rng() % 25);
        const Digraph g = as_digraph(u);
        const auto want = oracle::bounded_paths(g, 0, n - 1, alpha);
        std::vector<WeightedPath> und;
        list_bounded_st_paths_undirected(u, 0, n - 1, alpha, collect_into(und));
        bad_equiv += as_multiset(und) != want;
        run_directed(g, 0, n - 1, alpha, want);
    }
    for (int it = 0; it < 300; ++it, ++instances) {
        const uint32_t n = 2 + static_cast<uint32_t>(rng() % 8);
        const Digraph g = oracle::random_digraph(rng, n, 0.35, 0, 6);
        const Weight alpha = it % 10 == 0 ? kInf : static_cast<Weight>(rng() % 30);
        run_directed(g, 0, n - 1, alpha, oracle::bounded_paths(g, 0, n - 1, alpha));
    }
    return {bad_equiv == 0 && bad_order == 0 && bad_peak == 0,
            fmt("%llu instances (n<=9), %llu paths; %llu equivalence, %llu ordering, %llu peak-size failures",
                static_cast<unsigned long long>(instances), static_cast<unsigned long long>(paths),
                static_cast<unsigned long long>(bad_equiv), static_cast<unsigned long long>(bad_order),
                static_cast<unsigned long long>(bad_peak))};
}

// ---------------------------------------------------------------- 8
Outcome lcp_fold() {
    std::mt19937_64 rng(808);
    int checked = 0, wrong = 0;
    while (checked < 400) {
        const uint32_t n = 2 + static_cast<uint32_t>(rng() % 11);
        const UGraph g = oracle::random_connected_ugraph(rng, n, 0.12, 1, 5);
        const uint32_t s = static_cast<uint32_t>(rng() % n);
        uint32_t t = static_cast<uint32_t>(rng() % n);
        if (t == s) t = (s + 1) % n;
        const Weight alpha = static_cast<Weight>(rng() % 30);
        const auto all = oracle::bounded_paths(as_digraph(g), s, t, alpha);
        if (all.empty()) {
            try {
                longest_common_prefix(g, s, t, alpha);
                ++wrong;
            } catch (const NoPathWithinBound&) {
            }
            continue;
        }
        Path pre = all.begin()->first;
        for (const auto& [p, w] : all) {
            size_t i = 0;
            while (i < pre.size() && i < p.size() && pre[i] == p[i]) ++i;
            pre.resize(i);
        }
        ++checked;
        wrong += longest_common_prefix(g, s, t, alpha) != pre;
    }
    return {wrong == 0, fmt("%d instances with a bounded path, %d wrong", checked, wrong)};
}

// ---------------------------------------------------------------- 9
Outcome pipeline_shapes() {
    std::mt19937_64 rng(909);
    int as_bad = 0, snp_bad = 0, indel_bad = 0;
    const int runs = 6;
    for (int it = 0; it < runs; ++it) {
        PipelineConfig cfg;
        cfg.k = 31;
        cfg.min_abundance = 1;
        cfg.out_dir.clear();
        cfg.use_cascade = it % 2 == 0;
        const std::string a = random_dna(rng, 150), b = random_dna(rng, 150), s = random_dna(rng, 60 + rng() % 120);
        const PipelineResult r = run_pipeline_sequences({a + s + b, a + b}, cfg);
        const size_t want = 2 * cfg.k - 2 - common_prefix(s, b) - common_suffix(s, a);
        as_bad += !(r.bubbles.size() == 1 && r.bubbles[0].cls == BubbleClass::AS && r.bubbles[0].len2 == want &&
                    r.bubbles[0].len1 == want + s.size());
    }
    for (int it = 0; it < runs; ++it) {
        PipelineConfig cfg;
        cfg.k = 21;
        cfg.min_abundance = 1;
        cfg.out_dir.clear();
        const std::string a = random_dna(rng, 300);
        std::string b = a;
        b[150] = b[150] == 'C' ? 'T' : 'C';
        const PipelineResult r = run_pipeline_sequences({a, b}, cfg);
        snp_bad += !(r.bubbles.size() == 1 && r.bubbles[0].cls == BubbleClass::SNP &&
                     r.bubbles[0].len1 == 2u * cfg.k - 1 && r.bubbles[0].len2 == 2u * cfg.k - 1);
    }
    for (int it = 0; it < runs; ++it) {
        PipelineConfig cfg;
        cfg.k = 25;
        cfg.min_abundance = 1;
        cfg.out_dir.clear();
        const std::string a = random_dna(rng, 300);
        std::string b = a;
        b.erase(140, 2);
        const PipelineResult r = run_pipeline_sequences({a, b}, cfg);
        indel_bad += !(r.bubbles.size() == 1 && r.bubbles[0].cls == BubbleClass::Indel &&
                       r.bubbles[0].len1 - r.bubbles[0].len2 == 2);
    }
    return {as_bad + snp_bad + indel_bad == 0,
            fmt("%d runs each: AS failures %d, SNP failures %d, 2-nt indel failures %d", runs, as_bad, snp_bad,
                indel_bad)};
}

// ---------------------------------------------------------------- 10
Outcome bounded_speed() {
    const BenchTable t = bench_bubble_bounded(BubbleBenchParams{});
    const auto bo = t.column("bounded_ops"), bt = t.column("backtrack_ops"), agree = t.column("agree");
    double sb = 0, st = 0;
    std::vector<double> ratios;
    bool all_agree = true;
    for (size_t i = 0; i < bo.size(); ++i) {
        sb += bo[i];
        st += bt[i];
        ratios.push_back(bt[i] / bo[i]);
        all_agree = all_agree && agree[i] == 1;
    }
    std::sort(ratios.begin(), ratios.end());
    const double aggregate = st / sb;
    return {all_agree && aggregate >= 5,
            fmt("%zu cDBG-like graphs, alpha1=1000: aggregate speedup x%.1f (per graph min x%.1f, median x%.1f); "
                "outputs %s",
                bo.size(), aggregate, ratios.front(), ratios[ratios.size() / 2], all_agree ? "agree" : "DIFFER")};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"cascade memory", cascade_memory},
        {"query distribution", query_mix},
        {"cascade exactness", cascade_exactness},
        {"bubble oracle equivalence", bubble_oracle},
        {"linear delay", linear_delay},
        {"cycle/path optimality", cycle_optimality},
        {"bounded-path equivalence and ordering", bounded_paths},
        {"lcp correctness", lcp_fold},
        {"pipeline biology shapes", pipeline_shapes},
        {"bounded-bubble speed", bounded_speed},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%s %2zu %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str(), seconds_since(t0));
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
