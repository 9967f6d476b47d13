#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "bubblekit/bubbles.hpp"
#include "bubblekit/classify.hpp"
#include "bubblekit/config.hpp"
#include "bubblekit/dbg.hpp"
#include "bubblekit/errors.hpp"
#include "bubblekit/kmer_count.hpp"
#include "bubblekit/pipeline.hpp"
#include "bubblekit/simple_bubbles.hpp"
#include "oracles.hpp"

using namespace bk;
using oracle::PathPair;

namespace {

Digraph from_arcs(uint32_t n, std::initializer_list<std::pair<uint32_t, uint32_t>> arcs) {
    Digraph g(n);
    for (auto [u, v] : arcs) g.add_arc(u, v, 1);
    g.sort_adjacency();
    return g;
}

// Runs an enumerator and collects keys; fails on duplicates or malformed bubbles.
template <class Enum>
std::set<PathPair> collect(const Digraph& g, Enum&& run) {
    std::set<PathPair> got;
    uint64_t emitted = 0;
    run([&](const Bubble& b) {
        ++emitted;
        CHECK(is_bubble(g, b));
        CHECK(b.len1 >= b.len2);
        CHECK(path_weight(g, b.path1) == b.len1);
        got.insert(oracle::key(b));
        return true;
    });
    CHECK(emitted == got.size());
    return got;
}

std::set<PathPair> linear(const Digraph& g, uint32_t s) {
    return collect(g, [&](const BubbleSink& k) { list_bubbles_linear_delay(g, s, k); });
}

// Weights of the best s1->t and s2->t paths, straight from exhaustive path lists.
std::vector<Weight> min_path_weights(const Digraph& g, uint32_t s) {
    auto w = oracle::matrix(g);
    std::vector<Weight> best(g.n(), kInf);
    best[s] = 0;
    for (uint32_t t = 0; t < g.n(); ++t)
        if (t != s)
            for (auto& [p, pw] : oracle::all_paths(w, s, t)) best[t] = std::min(best[t], pw);
    return best;
}

bool compatible_oracle(const Digraph& g, uint32_t s1, Weight a1, uint32_t s2, Weight a2) {
    if (a1 < 0 || a2 < 0) return false;
    auto d1 = min_path_weights(g, s1), d2 = min_path_weights(g, s2);
    for (uint32_t t = 0; t < g.n(); ++t)
        if (d1[t] <= a1 && d2[t] <= a2) return true;
    return false;
}

Digraph without_vertex(const Digraph& g, uint32_t x) {
    Digraph h(g.n());
    for (uint32_t u = 0; u < g.n(); ++u)
        for (const Arc& a : g.out(u))
            if (u != x && a.to != x) h.add_arc(u, a.to, a.w);
    return h;
}

// Largest family of pairwise internally disjoint s-t paths, by exhaustive search.
uint32_t disjoint_oracle(const Digraph& g, uint32_t s, uint32_t t) {
    auto ps = oracle::all_paths(oracle::matrix(g), s, t);
    uint32_t best = 0;
    std::vector<size_t> chosen;
    std::function<void(size_t)> go = [&](size_t from) {
        best = std::max<uint32_t>(best, static_cast<uint32_t>(chosen.size()));
        for (size_t i = from; i < ps.size(); ++i) {
            bool ok = true;
            for (size_t c : chosen) ok = ok && oracle::internally_disjoint(ps[c].first, ps[i].first);
            if (!ok) continue;
            chosen.push_back(i);
            go(i + 1);
            chosen.pop_back();
        }
    };
    go(0);
    return best;
}

// The cycle-view graph built from its definition.
std::set<std::tuple<uint32_t, uint32_t>> transformed_oracle(const Digraph& g, uint32_t s) {
    const uint32_t n = g.n();
    std::set<std::tuple<uint32_t, uint32_t>> r;
    for (uint32_t u = 0; u < n; ++u)
        for (const Arc& a : g.out(u)) {
            if (a.to == s) continue;
            r.insert({u, a.to});
            r.insert({a.to + n, u + n});
        }
    for (uint32_t v = 0; v < n; ++v)
        if (v != s) r.insert({v, v + n});
    r.insert({s + n, s});
    return r;
}

std::set<std::tuple<uint32_t, uint32_t>> arcs_of(const Digraph& g) {
    std::set<std::tuple<uint32_t, uint32_t>> r;
    for (uint32_t u = 0; u < g.n(); ++u)
        for (const Arc& a : g.out(u)) r.insert({u, a.to});
    return r;
}

std::vector<std::string> both_haplotypes(const std::string& a, const std::string& b) { return {a, b, a, b, a, b}; }

std::string random_dna(std::mt19937_64& rng, size_t n) {
    std::string s(n, 'A');
    for (auto& c : s) c = "ACGT"[rng() % 4];
    return s;
}

}  // namespace

TEST_CASE("bubble predicates") {
    Digraph g = from_arcs(4, {{0, 1}, {1, 3}, {0, 2}, {2, 3}, {1, 2}});
    Bubble b = make_bubble(g, {0, 1, 3}, {0, 2, 3});
    CHECK(is_bubble(g, b));
    CHECK(b.s == 0);
    CHECK(b.t == 3);
    CHECK_FALSE(is_bubble(g, make_bubble(g, {0, 1, 2, 3}, {0, 2, 3})));  // shares vertex 2
    CHECK_FALSE(is_bubble(g, make_bubble(g, {0, 1, 3}, {0, 1, 3})));
    CHECK(to_string(BubbleClass::Indel) == "indel");
}

TEST_CASE("transformed graph matches its definition; re-rooting is equivalent to rebuilding") {
    // Six vertices s,a,b,c,d,e = 0..5.
    Digraph g = from_arcs(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 5}, {2, 5}, {5, 4}, {5, 3}, {2, 0}});
    TransformedGraph t(g, 0);
    Digraph m = t.materialize();
    CHECK(m.n() == 12);
    CHECK(m.m() == 22);
    CHECK(arcs_of(m) == transformed_oracle(g, 0));
    for (uint32_t x = 0; x < t.n(); ++x) {
        auto nb = t.out_neighbors(x);
        if (x < 6 && x != 0) CHECK(nb.back() == t.twin(x));  // twin arc explored last
    }
    // The (s,e)-bubble <s,e> / <s,a,b,e> is found.
    CHECK(linear(g, 0).count(PathPair{{0, 1, 2, 5}, {0, 5}}));

    Digraph iso(1);
    TransformedGraph ti(iso, 0);
    CHECK(ti.materialize().n() == 2);
    CHECK(ti.materialize().m() == 1);

    std::mt19937_64 rng(3);
    for (int it = 0; it < 100; ++it) {
        Digraph r = oracle::random_digraph(rng, 2 + static_cast<uint32_t>(rng() % 7), 0.3);
        TransformedGraph tr(r, 0);
        for (uint32_t s = 0; s < r.n(); ++s) {
            tr.reroot(s);
            CHECK(arcs_of(tr.materialize()) == transformed_oracle(r, s));
            // Four-vertex cycles s, v, twin(v), twin(s) exist once per distinct out-neighbour.
            std::set<uint32_t> outs;
            for (const Arc& a : r.out(s)) outs.insert(a.to);
            const Digraph mm = tr.materialize();
            uint64_t four = 0;
            for (const Arc& a : mm.out(s))
                if (a.to < r.n() && mm.has_arc(a.to, tr.twin(a.to)) && mm.has_arc(tr.twin(a.to), tr.twin(s))) ++four;
            CHECK(four == outs.size());
        }
    }
}

TEST_CASE("linear-delay listing equals the exhaustive oracle") {
    std::mt19937_64 rng(10);
    for (int it = 0; it < 600; ++it) {
        const uint32_t n = 1 + static_cast<uint32_t>(rng() % 7);
        Digraph g = oracle::random_digraph(rng, n, 0.15 + 0.6 * static_cast<double>(rng() % 100) / 100.0);
        std::set<PathPair> all;
        for (uint32_t s = 0; s < n; ++s) {
            auto got = linear(g, s);
            REQUIRE(got == oracle::bubbles(g, s));
            all.insert(got.begin(), got.end());
        }
        CHECK(collect(g, [&](const BubbleSink& k) { list_all_bubbles_linear_delay(g, k); }) == all);
    }
}

TEST_CASE("exploration-order regression graphs") {
    // s, a, b, c = 0..3
    Digraph a = from_arcs(4, {{0, 1}, {1, 2}, {2, 3}, {1, 3}});
    Digraph b = from_arcs(4, {{0, 1}, {1, 2}, {2, 3}, {0, 2}, {1, 3}});
    for (const Digraph* g : {&a, &b})
        for (uint32_t s = 0; s < 4; ++s) CHECK(linear(*g, s) == oracle::bubbles(*g, s));
    CHECK(linear(b, 0).count(PathPair{{0, 1, 3}, {0, 2, 3}}));
    CHECK(linear(from_arcs(3, {{0, 1}, {1, 2}, {0, 2}}), 0).size() == 1);
}

TEST_CASE("compatible pairs agree with exhaustive shortest paths") {
    Digraph path = from_arcs(4, {{0, 1}, {1, 2}, {2, 3}});
    CHECK(compatible_pair_exists(path, 0, 10, 1, 10));
    CHECK_FALSE(compatible_pair_exists(path, 0, 0, 1, 0));
    std::mt19937_64 rng(4);
    for (int it = 0; it < 400; ++it) {
        const uint32_t n = 2 + static_cast<uint32_t>(rng() % 8);
        Digraph g = oracle::random_digraph(rng, n, 0.3, 0, 6);
        const uint32_t s1 = static_cast<uint32_t>(rng() % n);
        uint32_t s2 = static_cast<uint32_t>(rng() % n);
        if (s2 == s1) s2 = (s1 + 1) % n;
        const Weight a1 = static_cast<Weight>(rng() % 12), a2 = static_cast<Weight>(rng() % 12);
        CHECK(compatible_pair_exists(g, s1, a1, s2, a2) == compatible_oracle(g, s1, a1, s2, a2));
        const auto batch = compatible_batch(g, s1, a1, s2, a2);
        REQUIRE(batch.size() == g.out(s1).size());
        const Digraph h = without_vertex(g, s1);
        for (size_t i = 0; i < batch.size(); ++i) {
            const Arc& arc = g.out(s1)[i];
            const bool want = arc.to != s2 ? compatible_oracle(h, s2, a2, arc.to, a1 - arc.w)
                                           : a1 - arc.w >= 0 && a2 >= 0;
            CHECK(static_cast<bool>(batch[i]) == want);
        }
    }
    Digraph neg(2);
    neg.add_arc(0, 1, -1);
    CHECK_THROWS_AS(compatible_pair_exists(neg, 0, 5, 1, 5), NegativeWeight);
}

TEST_CASE("bounded listing and the backtracking baseline equal the filtered oracle") {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 300; ++it) {
        const uint32_t n = 2 + static_cast<uint32_t>(rng() % 8);
        Digraph g = oracle::random_digraph(rng, n, 0.35, 0, 5);
        BubbleConstraints c;
        c.alpha1 = static_cast<Weight>(rng() % 15);
        c.alpha2 = static_cast<Weight>(rng() % (c.alpha1 + 1));  // alpha2 <= alpha1
        c.beta = rng() % 3 == 0 ? static_cast<Weight>(rng() % 4) : 0;
        for (uint32_t s = 0; s < n; ++s) {
            const auto want = oracle::bubbles(g, s, c.alpha1, c.alpha2, c.beta);
            CHECK(collect(g, [&](const BubbleSink& k) { list_bounded_bubbles(g, s, c, k); }) == want);
            CHECK(collect(g, [&](const BubbleSink& k) { enumerate_as_bubbles(g, s, c, k); }) == want);
        }
    }
    Digraph d = from_arcs(4, {{0, 1}, {1, 3}, {0, 2}, {2, 3}});
    BubbleConstraints tight;
    tight.alpha1 = 1;
    CHECK(collect(d, [&](const BubbleSink& k) { list_bounded_bubbles(d, 0, tight, k); }).empty());
}

TEST_CASE("caps stop enumeration and report truncation") {
    UGraph k6(6);
    for (uint32_t u = 0; u < 6; ++u)
        for (uint32_t v = u + 1; v < 6; ++v) k6.add_edge(u, v);
    Digraph g = as_digraph(k6);
    BubbleConstraints c;
    c.max_bubbles = 5;
    uint64_t seen = 0;
    auto count = [&](const Bubble&) { return ++seen, true; };
    EnumResult r = list_bounded_bubbles(g, 0, c, count);
    CHECK(r.truncated);
    CHECK(r.emitted == 5);
    CHECK(seen == 5);
    seen = 0;
    r = enumerate_as_bubbles(g, 0, c, count);
    CHECK(r.truncated);
    CHECK(seen == 5);
    seen = 0;
    r = list_bubbles_linear_delay(g, 0, [&](const Bubble&) { return ++seen < 3; });
    CHECK(r.truncated);
    CHECK(seen == 3);
    EnumGuard guard(2, 0);
    CHECK_FALSE(guard.cap_reached(1));
    CHECK(guard.cap_reached(2));
    CHECK_FALSE(guard.time_up());
}

TEST_CASE("d disjoint paths") {
    Digraph par = from_arcs(5, {{0, 1}, {1, 4}, {0, 2}, {2, 4}, {0, 3}, {3, 4}});
    CHECK(d_bubble_exists(par, 0, 4, 3));
    CHECK_FALSE(d_bubble_exists(par, 0, 4, 4));
    UGraph k5(5);
    for (uint32_t u = 0; u < 5; ++u)
        for (uint32_t v = u + 1; v < 5; ++v) k5.add_edge(u, v);
    CHECK(max_disjoint_paths(as_digraph(k5), 0, 4) == 4);

    std::mt19937_64 rng(6);
    for (int it = 0; it < 300; ++it) {
        const uint32_t n = 2 + static_cast<uint32_t>(rng() % 7);
        Digraph g = oracle::random_digraph(rng, n, 0.4);
        const uint32_t s = 0, t = n - 1;
        const uint32_t want = disjoint_oracle(g, s, t);
        CHECK(max_disjoint_paths(g, s, t) == want);
        for (uint32_t d = 1; d <= want + 1; ++d) {
            std::vector<std::vector<uint32_t>> paths;
            const bool ok = d_bubble_exists(g, s, t, d, &paths);
            CHECK(ok == (d <= want));
            if (!ok) continue;
            REQUIRE(paths.size() == d);
            for (size_t i = 0; i < paths.size(); ++i) {
                CHECK(paths[i].front() == s);
                CHECK(paths[i].back() == t);
                CHECK(path_weight(g, paths[i]) != kInf);
                for (size_t j = 0; j < i; ++j) CHECK(oracle::internally_disjoint(paths[i], paths[j]));
            }
        }
    }
}

TEST_CASE("classification rules") {
    const int k = 31;
    const std::string snp1(61, 'A'), snp2 = std::string(30, 'A') + "C" + std::string(30, 'A');
    CHECK(classify_sequences(snp1, snp2, k) == BubbleClass::SNP);
    std::mt19937_64 rng(1);
    const std::string shorter = random_dna(rng, 40);
    // Difference of 3 with unrelated content: alternative splicing.
    CHECK(classify_sequences(random_dna(rng, 43), shorter, k) == BubbleClass::AS);
    CHECK(classify_sequences(random_dna(rng, 42), shorter, k) == BubbleClass::Indel);
    CHECK(classify_sequences(random_dna(rng, 45), shorter, k) == BubbleClass::Indel);
    // The shorter side sits almost unchanged against the end of the longer one.
    std::string rep = random_dna(rng, 30) + shorter;
    rep[35] = rep[35] == 'A' ? 'C' : 'A';
    CHECK(classify_sequences(rep, shorter, k) == BubbleClass::Repeat);
    CHECK(classify_sequences(random_dna(rng, 90), random_dna(rng, 70), k) == BubbleClass::Unclassified);
    CHECK(end_anchored_identity("ACGTAC", "TAC") == doctest::Approx(1.0));
    CHECK(end_anchored_identity("ACGTAC", "ACG") == doctest::Approx(1.0));
    CHECK(end_anchored_identity("AAAA", "") == 0.0);
    ClassifyOptions strict;
    strict.repeat_identity = 1.01;
    CHECK(classify_sequences(rep, shorter, k, strict) != BubbleClass::Repeat);
}

TEST_CASE("substitution bubbles collapse into one node carrying N") {
    std::mt19937_64 rng(9);
    for (int it = 0; it < 20; ++it) {
        const int k = 11;
        const std::string a = random_dna(rng, 200);
        std::string b = a;
        b[100] = b[100] == 'A' ? 'G' : 'A';
        CountOptions o;
        o.k = k;
        BidirectedDBG c = compress(build_dbg(count_kmers(both_haplotypes(a, b), o)));
        // Skip a chance repeat or a self-complementary overlap in the random sequence.
        if (c.nodes.size() != 4 || c.arcs.size() != 8) continue;
        std::vector<SnpCandidate> snps;
        BidirectedDBG simp = compress_simple_bubbles(c, &snps);
        REQUIRE(snps.size() == 1);
        CHECK(snps[0].allele1.size() == 2 * k - 1);
        CHECK(snps[0].position == static_cast<size_t>(k - 1));
        REQUIRE(simp.nodes.size() == 1);
        std::string want = a;
        want[100] = 'N';
        CHECK((simp.nodes[0].seq == want || simp.nodes[0].seq == reverse_complement(want)));
        CHECK(compress_simple_bubbles(simp).nodes.size() == 1);
    }
}

TEST_CASE("exon skipping at k = 5: one bubble whose shorter side spells 2k-2") {
    PipelineConfig cfg;
    cfg.k = 5;
    CountOptions o;
    o.k = 5;
    BidirectedDBG c = compress(build_dbg(count_kmers({"CATCTACGCA", "CATCTGCTCGACGCA"}, o)));
    RunReport rep;
    auto bubbles = call_bubbles(c, cfg, rep);
    REQUIRE(bubbles.size() == 1);
    CHECK(bubbles[0].len2 == 8);
    CHECK(bubbles[0].len1 == 13);
}

TEST_CASE("forward 3-mer graph of ACTGGAGCG / ACTGCG: one bubble with 1 and 4 inner vertices") {
    std::map<std::string, uint32_t> id;
    for (const char* s : {"ACTGGAGCG", "ACTGCG"})
        for (size_t i = 0; i + 3 <= std::string(s).size(); ++i) id.emplace(std::string(s).substr(i, 3), 0);
    uint32_t next = 0;
    for (auto& [key, v] : id) v = next++;
    Digraph g(next);
    for (auto& [x, u] : id)
        for (auto& [y, v] : id)
            if (x.substr(1) == y.substr(0, 2)) g.add_arc(u, v, 1);
    g.sort_adjacency();
    BubbleConstraints c;
    std::vector<Bubble> out;
    list_bounded_bubbles(g, id.at("CTG"), c, [&](const Bubble& b) { return out.push_back(b), true; });
    REQUIRE(out.size() == 1);
    CHECK(out[0].t == id.at("GCG"));
    CHECK(out[0].path1.size() - 2 == 4);
    CHECK(out[0].path2.size() - 2 == 1);
}
