#include "bubblekit/bcc.hpp"

#include <algorithm>
#include <queue>

namespace bk {

BlockDecomposition bcc_decompose(const UGraph& g, OpCounter* ops) {
    const uint32_t n = g.n();
    BlockDecomposition d;
    d.edge_block.assign(g.m(), kNoVertex);
    d.is_articulation.assign(n, 0);
    d.vertex_blocks.assign(n, {});

    std::vector<uint32_t> disc(n, 0), low(n, 0), parent_edge(n, kNoVertex), it(n, 0);
    std::vector<uint32_t> edge_stack, call;
    std::vector<uint32_t> stamp(n, kNoVertex);
    uint32_t timer = 0;
    OpCounter local;
    OpCounter& op = ops ? *ops : local;

    auto pop_block = [&](uint32_t until_edge) {
        uint32_t b = static_cast<uint32_t>(d.block_edges.size());
        d.block_edges.emplace_back();
        d.block_vertices.emplace_back();
        auto& be = d.block_edges.back();
        auto& bv = d.block_vertices.back();
        while (true) {
            uint32_t e = edge_stack.back();
            edge_stack.pop_back();
            op.tick();
            be.push_back(e);
            d.edge_block[e] = b;
            for (uint32_t x : {g.edge(e).u, g.edge(e).v})
                if (stamp[x] != b) {
                    stamp[x] = b;
                    bv.push_back(x);
                }
            if (e == until_edge) break;
        }
        std::sort(be.begin(), be.end());
        std::sort(bv.begin(), bv.end());
        for (uint32_t x : bv) d.vertex_blocks[x].push_back(b);
    };

    for (uint32_t root = 0; root < n; ++root) {
        if (disc[root]) continue;
        disc[root] = low[root] = ++timer;
        call.push_back(root);
        uint32_t root_children = 0;
        while (!call.empty()) {
            uint32_t v = call.back();
            const auto& adj = g.adj(v);
            if (it[v] < adj.size()) {
                const Incidence inc = adj[it[v]++];
                op.tick();
                if (inc.edge == parent_edge[v]) continue;
                if (!disc[inc.to]) {
                    edge_stack.push_back(inc.edge);
                    parent_edge[inc.to] = inc.edge;
                    disc[inc.to] = low[inc.to] = ++timer;
                    call.push_back(inc.to);
                    if (v == root) ++root_children;
                } else if (disc[inc.to] < disc[v]) {
                    edge_stack.push_back(inc.edge);
                    low[v] = std::min(low[v], disc[inc.to]);
                }
            } else {
                call.pop_back();
                if (call.empty()) break;
                uint32_t p = call.back();
                low[p] = std::min(low[p], low[v]);
                if (low[v] >= disc[p]) {
                    if (p != root) d.is_articulation[p] = 1;
                    pop_block(parent_edge[v]);
                }
            }
        }
        if (root_children >= 2) d.is_articulation[root] = 1;
    }
    for (uint32_t v = 0; v < n; ++v)
        if (d.is_articulation[v]) d.articulation_points.push_back(v);
    return d;
}

std::vector<Bead> bead_string(const BlockDecomposition& d, uint32_t s, uint32_t t) {
    if (s == t || s >= d.vertex_blocks.size() || t >= d.vertex_blocks.size()) return {};
    // BFS over the bipartite block-cut tree; node ids: vertices [0,n), blocks n + b.
    const uint32_t n = static_cast<uint32_t>(d.vertex_blocks.size());
    std::vector<uint32_t> from(n + d.count(), kNoVertex);
    std::queue<uint32_t> q;
    q.push(s);
    from[s] = s;
    while (!q.empty()) {
        uint32_t x = q.front();
        q.pop();
        if (x == t) break;
        if (x < n) {
            for (uint32_t b : d.vertex_blocks[x])
                if (from[n + b] == kNoVertex) {
                    from[n + b] = x;
                    q.push(n + b);
                }
        } else {
            for (uint32_t v : d.block_vertices[x - n])
                if (from[v] == kNoVertex && (v == t || d.is_articulation[v])) {
                    from[v] = x;
                    q.push(v);
                }
        }
    }
    if (from[t] == kNoVertex) return {};
    std::vector<Bead> out;
    uint32_t v = t;
    while (v != s) {
        uint32_t b = from[v];
        uint32_t u = from[b];
        out.push_back({b - n, u, v});
        v = u;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace bk
