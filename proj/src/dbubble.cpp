#include <algorithm>
#include <queue>

#include "bubblekit/bubbles.hpp"
#include "bubblekit/errors.hpp"

namespace bk {

namespace {

// Residual network with unit capacities after splitting every vertex v into
// v_in = 2v and v_out = 2v + 1.
struct FlowNet {
    struct E {
        uint32_t to;
        int cap;
        uint32_t rev;
        bool fwd;
    };
    std::vector<std::vector<E>> adj;
    explicit FlowNet(uint32_t n) : adj(n) {}
    void add(uint32_t u, uint32_t v, int cap) {
        adj[u].push_back({v, cap, static_cast<uint32_t>(adj[v].size()), true});
        adj[v].push_back({u, 0, static_cast<uint32_t>(adj[u].size() - 1), false});
    }
    bool augment(uint32_t src, uint32_t dst) {
        std::vector<std::pair<uint32_t, uint32_t>> from(adj.size(), {kNoVertex, 0});
        std::queue<uint32_t> q;
        q.push(src);
        from[src] = {src, 0};
        while (!q.empty() && from[dst].first == kNoVertex) {
            uint32_t x = q.front();
            q.pop();
            for (uint32_t i = 0; i < adj[x].size(); ++i) {
                const E& e = adj[x][i];
                if (e.cap > 0 && from[e.to].first == kNoVertex) {
                    from[e.to] = {x, i};
                    q.push(e.to);
                }
            }
        }
        if (from[dst].first == kNoVertex) return false;
        for (uint32_t v = dst; v != src;) {
            auto [u, i] = from[v];
            E& e = adj[u][i];
            e.cap -= 1;
            adj[v][e.rev].cap += 1;
            v = u;
        }
        return true;
    }
};

FlowNet build_net(const Digraph& g, uint32_t s, uint32_t t) {
    FlowNet net(2 * g.n());
    for (uint32_t v = 0; v < g.n(); ++v)
        if (v != s && v != t) net.add(2 * v, 2 * v + 1, 1);
    for (uint32_t u = 0; u < g.n(); ++u)
        for (const Arc& a : g.out(u)) net.add(2 * u + 1, 2 * a.to, 1);
    return net;
}

}  // namespace

bool d_bubble_exists(const Digraph& g, uint32_t s, uint32_t t, uint32_t d, std::vector<std::vector<uint32_t>>* paths) {
    if (s >= g.n() || t >= g.n()) throw VertexNotFound("endpoint out of range");
    if (s == t) throw SameEndpoints("s and t must differ");
    if (d < 1) throw ConfigError("d must be at least 1");
    FlowNet net = build_net(g, s, t);
    uint32_t flow = 0;
    while (flow < d && net.augment(2 * s + 1, 2 * t)) ++flow;
    if (flow < d) return false;
    if (paths) {
        paths->clear();
        // Decompose: follow saturated original arcs out of s_out.
        for (uint32_t k = 0; k < d; ++k) {
            std::vector<uint32_t> p{s};
            uint32_t x = 2 * s + 1;
            while (x != 2 * t) {
                bool moved = false;
                for (auto& e : net.adj[x]) {
                    // A used forward arc has cap 0 and its reverse carries the unit.
                    if (e.fwd && e.cap == 0 && net.adj[e.to][e.rev].cap == 1) {
                        net.adj[e.to][e.rev].cap = 0;  // consume for the decomposition
                        p.push_back(e.to / 2);
                        x = e.to == 2 * t ? e.to : e.to + 1;
                        moved = true;
                        break;
                    }
                }
                if (!moved) break;
            }
            paths->push_back(std::move(p));
        }
    }
    return true;
}

uint32_t max_disjoint_paths(const Digraph& g, uint32_t s, uint32_t t) {
    if (s >= g.n() || t >= g.n()) throw VertexNotFound("endpoint out of range");
    if (s == t) throw SameEndpoints("s and t must differ");
    FlowNet net = build_net(g, s, t);
    uint32_t flow = 0;
    while (net.augment(2 * s + 1, 2 * t)) ++flow;
    return flow;
}

}  // namespace bk
