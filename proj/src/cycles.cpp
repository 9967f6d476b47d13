#include <algorithm>
#include <deque>

#include "bubblekit/bcc.hpp"
#include "bubblekit/paths.hpp"
#include "paths_internal.hpp"

namespace bk {

VertexPath normalize_cycle(VertexPath c) {
    if (c.size() < 2) return c;
    auto mn = std::min_element(c.begin(), c.end());
    std::rotate(c.begin(), mn, c.end());
    if (c.size() > 2 && c.back() < c[1]) std::reverse(c.begin() + 1, c.end());
    return c;
}

namespace {

using EdgeList = std::vector<std::pair<uint32_t, uint32_t>>;

// Compact local graph over the endpoints of an edge list.
struct LocalGraph {
    std::vector<uint32_t> l2g;
    UGraph g;
};

LocalGraph localize(const EdgeList& edges, std::vector<int32_t>& g2l) {
    LocalGraph L;
    auto id = [&](uint32_t x) {
        if (g2l[x] < 0) {
            g2l[x] = static_cast<int32_t>(L.l2g.size());
            L.l2g.push_back(x);
        }
        return static_cast<uint32_t>(g2l[x]);
    };
    std::vector<std::pair<uint32_t, uint32_t>> le;
    le.reserve(edges.size());
    for (auto [a, b] : edges) le.emplace_back(id(a), id(b));
    L.g = UGraph(static_cast<uint32_t>(L.l2g.size()));
    for (auto [a, b] : le) L.g.add_edge(a, b);
    for (uint32_t x : L.l2g) g2l[x] = -1;
    return L;
}

// Any non-tree edge of a DFS of a connected graph.
uint32_t find_back_edge(const UGraph& g, OpCounter& op) {
    std::vector<char> seen(g.n(), 0);
    std::vector<uint32_t> pe(g.n(), kNoVertex), it(g.n(), 0), stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        const uint32_t v = stack.back();
        if (it[v] < g.adj(v).size()) {
            const Incidence inc = g.adj(v)[it[v]++];
            op.tick();
            if (inc.edge == pe[v]) continue;
            if (seen[inc.to]) return inc.edge;
            seen[inc.to] = 1;
            pe[inc.to] = inc.edge;
            stack.push_back(inc.to);
        } else {
            stack.pop_back();
        }
    }
    return kNoVertex;
}

void push_blocks(const UGraph& g, const std::vector<uint32_t>& l2g, std::deque<EdgeList>& work, OpCounter& op) {
    BlockDecomposition d = bcc_decompose(g, &op);
    for (const auto& be : d.block_edges) {
        if (be.size() < 3) continue;  // a bridge; simple graphs have no 2-edge blocks
        EdgeList el;
        el.reserve(be.size());
        for (uint32_t e : be) el.emplace_back(l2g[g.edge(e).u], l2g[g.edge(e).v]);
        work.push_back(std::move(el));
    }
}

}  // namespace

PathEnumStats list_cycles(const UGraph& g, StPathMode mode, const PathSink& sink, OpCounter* ops) {
    OpCounter local;
    OpCounter& op = ops ? *ops : local;
    PathEnumStats stats;
    UGraph simple = detail::to_ugraph(detail::simple_from(g));
    std::vector<uint32_t> ident(g.n());
    for (uint32_t v = 0; v < g.n(); ++v) ident[v] = v;
    std::deque<EdgeList> work;
    push_blocks(simple, ident, work, op);
    std::vector<int32_t> g2l(g.n(), -1);
    bool stop = false;

    while (!work.empty() && !stop) {
        EdgeList comp = std::move(work.front());
        work.pop_front();
        LocalGraph L = localize(comp, g2l);
        op.tick(comp.size());
        const uint32_t b = find_back_edge(L.g, op);
        if (b == kNoVertex) continue;
        const uint32_t s = L.g.edge(b).u, t = L.g.edge(b).v;
        std::vector<char> keep(L.g.m(), 1);
        keep[b] = 0;
        UGraph rest = L.g.filter_edges(keep);
        VertexPath cyc;
        PathSink inner = [&](const VertexPath& p) {
            cyc.clear();
            for (uint32_t x : p) cyc.push_back(L.l2g[x]);
            ++stats.emitted;
            if (!sink(cyc)) {
                stop = true;
                return false;
            }
            return true;
        };
        list_st_paths(rest, s, t, mode, inner, &op);
        if (stop) break;
        push_blocks(rest, L.l2g, work, op);
    }
    stats.truncated = stop;
    stats.ops = op.ops;
    return stats;
}

namespace {

class Johnson {
public:
    Johnson(const detail::SimpleAdj& g, const PathSink& sink, OpCounter& op)
        : g_(g), sink_(sink), op_(op), blocked_(g.n, 0), B_(g.n) {}

    PathEnumStats run() {
        for (s_ = 0; s_ < g_.n && !stop_; ++s_) {
            for (uint32_t v = s_; v < g_.n; ++v) {
                blocked_[v] = 0;
                B_[v].clear();
                op_.tick();
            }
            circuit(s_);
        }
        stats_.truncated = stop_;
        stats_.ops = op_.ops;
        return stats_;
    }

private:
    void unblock(uint32_t u) {
        std::vector<uint32_t> todo{u};
        while (!todo.empty()) {
            const uint32_t x = todo.back();
            todo.pop_back();
            op_.tick();
            if (!blocked_[x]) continue;
            blocked_[x] = 0;
            for (uint32_t w : B_[x]) {
                op_.tick();
                todo.push_back(w);
            }
            B_[x].clear();
        }
    }

    bool circuit(uint32_t v) {
        bool found = false;
        stack_.push_back(v);
        blocked_[v] = 1;
        for (const Arc& a : g_.adj[v]) {
            if (stop_) break;
            op_.tick();
            const uint32_t w = a.to;
            if (w < s_) continue;
            if (w == s_) {
                found = true;
                // Directed circuits of the symmetric digraph: drop 2-cycles and one orientation.
                if (stack_.size() >= 3 && stack_[1] < stack_.back()) {
                    ++stats_.emitted;
                    if (!sink_(stack_)) stop_ = true;
                }
            } else if (!blocked_[w]) {
                if (circuit(w)) found = true;
            }
        }
        if (found) {
            unblock(v);
        } else {
            for (const Arc& a : g_.adj[v]) {
                op_.tick();
                if (a.to < s_) continue;
                auto& lst = B_[a.to];
                if (std::find(lst.begin(), lst.end(), v) == lst.end()) lst.push_back(v);
            }
        }
        stack_.pop_back();
        return found;
    }

    const detail::SimpleAdj& g_;
    const PathSink& sink_;
    OpCounter& op_;
    std::vector<char> blocked_;
    std::vector<std::vector<uint32_t>> B_;
    VertexPath stack_;
    uint32_t s_ = 0;
    PathEnumStats stats_;
    bool stop_ = false;
};

}  // namespace

PathEnumStats list_cycles_johnson(const UGraph& g, const PathSink& sink, OpCounter* ops) {
    OpCounter local;
    OpCounter& op = ops ? *ops : local;
    detail::SimpleAdj a = detail::simple_from(g);
    return Johnson(a, sink, op).run();
}

}  // namespace bk
