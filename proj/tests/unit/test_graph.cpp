#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <map>
#include <numeric>
#include <queue>
#include <random>

#include "bubblekit/bcc.hpp"
#include "bubblekit/edgelist_io.hpp"
#include "bubblekit/errors.hpp"
#include "bubblekit/shortest_path.hpp"
#include "oracles.hpp"

using namespace bk;

namespace {

struct Dsu {
    std::vector<uint32_t> p;
    explicit Dsu(uint32_t n) : p(n) { std::iota(p.begin(), p.end(), 0u); }
    uint32_t find(uint32_t x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(uint32_t a, uint32_t b) { p[find(a)] = find(b); }
};

// Two edges share a block exactly when some simple cycle contains both.
std::vector<uint32_t> oracle_edge_blocks(const UGraph& g) {
    std::map<std::pair<uint32_t, uint32_t>, uint32_t> id;
    for (uint32_t e = 0; e < g.m(); ++e) id[std::minmax(g.edge(e).u, g.edge(e).v)] = e;
    Dsu d(g.m());
    for (const auto& c : oracle::cycles(g))
        for (size_t i = 0; i < c.size(); ++i)
            d.unite(id.at(std::minmax(c[i], c[(i + 1) % c.size()])), id.at(std::minmax(c[0], c[1])));
    std::vector<uint32_t> r(g.m());
    for (uint32_t e = 0; e < g.m(); ++e) r[e] = d.find(e);
    return r;
}

uint32_t components_without(const UGraph& g, uint32_t skip) {
    Dsu d(g.n());
    for (const auto& e : g.edges())
        if (e.u != skip && e.v != skip) d.unite(e.u, e.v);
    uint32_t c = 0;
    for (uint32_t v = 0; v < g.n(); ++v) c += v != skip && d.find(v) == v;
    return c;
}

std::vector<Weight> bfs(const Digraph& g, uint32_t s) {
    std::vector<Weight> d(g.n(), kInf);
    std::queue<uint32_t> q;
    d[s] = 0;
    q.push(s);
    while (!q.empty()) {
        uint32_t u = q.front();
        q.pop();
        for (const Arc& a : g.out(u))
            if (d[a.to] == kInf) {
                d[a.to] = d[u] + 1;
                q.push(a.to);
            }
    }
    return d;
}

Weight tree_path_weight(const Digraph& g, const std::vector<uint32_t>& p) {
    Weight w = 0;
    for (size_t i = 1; i < p.size(); ++i) w += g.arc_weight(p[i - 1], p[i]);
    return w;
}

}  // namespace

TEST_CASE("saturating addition") {
    CHECK(sat_add(kInf, 5) == kInf);
    CHECK(sat_add(-3, kInf) == kInf);
    CHECK(sat_add(kInf - 1, 10) == kInf);
    CHECK(sat_add(4, -6) == -2);
    CHECK(sat_add(std::numeric_limits<Weight>::min(), -1) == std::numeric_limits<Weight>::min());
}

TEST_CASE("graph construction rejects self-loops and bad ids") {
    Digraph d(3);
    CHECK_THROWS_AS(d.add_arc(1, 1), Error);
    CHECK_THROWS_AS(d.add_arc(0, 7), VertexNotFound);
    d.add_arc(0, 1, 5);
    d.add_arc(0, 1, 2);
    CHECK(d.arc_weight(0, 1) == 2);
    CHECK(d.arc_weight(1, 0) == kInf);
    CHECK(d.reversed().has_arc(1, 0));
    UGraph u(2);
    CHECK_THROWS_AS(u.add_edge(0, 0), Error);
    CHECK(as_digraph(UGraph(0)).n() == 0);
}

TEST_CASE("blocks agree with the common-cycle definition on random graphs") {
    std::mt19937_64 rng(1);
    for (int it = 0; it < 400; ++it) {
        const uint32_t n = 2 + static_cast<uint32_t>(rng() % 8);
        UGraph g = oracle::random_ugraph(rng, n, 0.2 + 0.5 * static_cast<double>(rng() % 100) / 100.0);
        BlockDecomposition d = bcc_decompose(g);
        const auto want = oracle_edge_blocks(g);
        REQUIRE(d.edge_block.size() == g.m());
        for (uint32_t e = 0; e < g.m(); ++e)
            for (uint32_t f = 0; f < g.m(); ++f) CHECK((d.edge_block[e] == d.edge_block[f]) == (want[e] == want[f]));
        uint64_t total = 0;
        for (size_t b = 0; b < d.count(); ++b) {
            total += d.block_edges[b].size();
            std::set<uint32_t> vs;
            for (uint32_t e : d.block_edges[b]) {
                CHECK(d.edge_block[e] == b);
                vs.insert(g.edge(e).u);
                vs.insert(g.edge(e).v);
            }
            CHECK(std::vector<uint32_t>(vs.begin(), vs.end()) == d.block_vertices[b]);
        }
        CHECK(total == g.m());
        const uint32_t base = components_without(g, kNoVertex);
        for (uint32_t v = 0; v < n; ++v) {
            // Removing v drops it from the count, so a leaf or isolated vertex leaves c - 1 or c.
            const bool cut = components_without(g, v) > base - (g.adj(v).empty() ? 1 : 0);
            CHECK(static_cast<bool>(d.is_articulation[v]) == cut);
            CHECK((std::find(d.articulation_points.begin(), d.articulation_points.end(), v) !=
                   d.articulation_points.end()) == cut);
        }
    }
}

TEST_CASE("trees, cycles and a figure-eight") {
    UGraph path(5);
    for (uint32_t v = 0; v + 1 < 5; ++v) path.add_edge(v, v + 1);
    BlockDecomposition a = bcc_decompose(path);
    CHECK(a.count() == 4);
    CHECK(a.articulation_points == std::vector<uint32_t>{1, 2, 3});

    UGraph ring(6);
    for (uint32_t v = 0; v < 6; ++v) ring.add_edge(v, (v + 1) % 6);
    BlockDecomposition b = bcc_decompose(ring);
    CHECK(b.count() == 1);
    CHECK(b.articulation_points.empty());

    UGraph eight(5);  // two triangles sharing vertex 2
    for (auto [u, v] : std::vector<std::pair<uint32_t, uint32_t>>{{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}})
        eight.add_edge(u, v);
    BlockDecomposition c = bcc_decompose(eight);
    CHECK(c.count() == 2);
    CHECK(c.articulation_points == std::vector<uint32_t>{2});
    auto beads = bead_string(c, 0, 4);
    REQUIRE(beads.size() == 2);
    CHECK(beads[0].entry == 0);
    CHECK(beads[0].exit == 2);
    CHECK(beads[1].entry == 2);
    CHECK(beads[1].exit == 4);
    CHECK(bcc_decompose(UGraph(3)).count() == 0);
}

TEST_CASE("bead strings contain every s-t path") {
    std::mt19937_64 rng(2);
    for (int it = 0; it < 200; ++it) {
        const uint32_t n = 3 + static_cast<uint32_t>(rng() % 6);
        UGraph g = oracle::random_connected_ugraph(rng, n, 0.15);
        const uint32_t s = static_cast<uint32_t>(rng() % n);
        uint32_t t = static_cast<uint32_t>(rng() % n);
        if (t == s) t = (s + 1) % n;
        BlockDecomposition d = bcc_decompose(g);
        auto beads = bead_string(d, s, t);
        REQUIRE_FALSE(beads.empty());
        CHECK(beads.front().entry == s);
        CHECK(beads.back().exit == t);
        std::set<uint32_t> blocks;
        for (size_t i = 0; i < beads.size(); ++i) {
            blocks.insert(beads[i].block);
            if (i) CHECK(beads[i].entry == beads[i - 1].exit);
        }
        std::map<std::pair<uint32_t, uint32_t>, uint32_t> id;
        for (uint32_t e = 0; e < g.m(); ++e) id[std::minmax(g.edge(e).u, g.edge(e).v)] = e;
        for (const auto& p : oracle::st_paths(g, s, t)) {
            for (size_t i = 1; i < p.size(); ++i) CHECK(blocks.count(d.edge_block[id.at(std::minmax(p[i - 1], p[i]))]));
            for (const auto& bd : beads) CHECK(std::find(p.begin(), p.end(), bd.entry) != p.end());
        }
    }
    UGraph two(4);
    two.add_edge(0, 1);
    two.add_edge(2, 3);
    CHECK(bead_string(bcc_decompose(two), 0, 3).empty());
}

TEST_CASE("Dijkstra agrees with Bellman-Ford, with BFS on unit weights, and across heaps") {
    std::mt19937_64 rng(3);
    for (int it = 0; it < 400; ++it) {
        const uint32_t n = 1 + static_cast<uint32_t>(rng() % 25);
        Digraph g = oracle::random_digraph(rng, n, 0.2, 0, 9);
        const uint32_t s = static_cast<uint32_t>(rng() % n);
        const auto bf = bellman_ford(g, s);
        const auto a = shortest_path_tree(g, s, kInf, HeapVariant::Binary);
        const auto b = shortest_path_tree(g, s, kInf, HeapVariant::BinaryNoDecreaseKey);
        CHECK(a.dist == bf.dist);
        CHECK(a.dist == b.dist);
        CHECK(a.parent == b.parent);
        for (uint32_t v = 0; v < n; ++v)
            if (a.reached(v)) {
                auto p = a.path_to(v);
                CHECK(p.front() == s);
                CHECK(p.back() == v);
                CHECK(tree_path_weight(g, p) == a.dist[v]);
            } else {
                CHECK(a.path_to(v).empty());
            }
        const Weight bound = static_cast<Weight>(rng() % 20);
        const auto c = shortest_path_tree(g, s, bound);
        for (uint32_t v = 0; v < n; ++v) CHECK(c.dist[v] == (bf.dist[v] <= bound ? bf.dist[v] : kInf));

        const auto rev = shortest_path_tree(g, s, kInf, HeapVariant::Binary, nullptr, true);
        CHECK(rev.dist == shortest_path_tree(g.reversed(), s).dist);
        CHECK(rev.dist == bellman_ford(g, s, nullptr, true).dist);

        Digraph unit = oracle::random_digraph(rng, n, 0.25);
        CHECK(shortest_path_tree(unit, s).dist == bfs(unit, s));

        UGraph u = oracle::random_ugraph(rng, n, 0.25, 0, 7);
        CHECK(shortest_path_tree(u, s).dist == bellman_ford(as_digraph(u), s).dist);
    }
}

TEST_CASE("bound zero reaches only the zero-distance ball") {
    Digraph g(4);
    g.add_arc(0, 1, 0);
    g.add_arc(1, 2, 1);
    g.add_arc(0, 3, 2);
    auto t = shortest_path_tree(g, 0, 0);
    CHECK(t.dist == std::vector<Weight>{0, 0, kInf, kInf});
}

TEST_CASE("negative weights") {
    Digraph g(3);
    g.add_arc(0, 1, 4);
    g.add_arc(1, 2, -2);
    CHECK_THROWS_AS(shortest_path_tree(g, 0), NegativeWeight);
    CHECK(bellman_ford(g, 0).dist == std::vector<Weight>{0, 4, 2});
    g.add_arc(2, 1, 1);
    CHECK_THROWS_AS(bellman_ford(g, 0), NegativeCycle);
    CHECK_THROWS_AS(shortest_path_tree(g, 9), VertexNotFound);
}

TEST_CASE("edge lists round trip and reject malformed input") {
    std::mt19937_64 rng(4);
    Digraph g = oracle::random_digraph(rng, 9, 0.3, 1, 50);
    g.sort_adjacency();
    const auto path = (std::filesystem::temp_directory_path() / "bk_graph_el.txt").string();
    write_edge_list(path, to_edge_list(g));
    EdgeList back = read_edge_list(path);
    std::filesystem::remove(path);
    CHECK(back.directed);
    CHECK(back.weighted);
    Digraph h = back.to_digraph();
    h.sort_adjacency();
    REQUIRE(h.n() == g.n());
    for (uint32_t u = 0; u < g.n(); ++u)
        for (uint32_t v = 0; v < g.n(); ++v) CHECK(h.arc_weight(u, v) == g.arc_weight(u, v));

    EdgeList un = parse_edge_list("3 2 undirected unit\n0 1\n1 2\n");
    CHECK_FALSE(un.directed);
    CHECK(un.to_digraph().m() == 4);
    CHECK(un.to_ugraph().m() == 2);
    CHECK(un.edges[0].w == 1);
    CHECK_THROWS_AS(parse_edge_list(""), IoError);
    CHECK_THROWS_AS(parse_edge_list("3 2 directed unit\n0 1\n"), IoError);
    CHECK_THROWS_AS(parse_edge_list("3 1 directed unit\n0 x\n"), IoError);
    CHECK_THROWS_AS(read_edge_list("/nonexistent/edges.txt"), IoError);
}
