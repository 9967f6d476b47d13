#include <algorithm>
#include <memory>
#include <queue>

#include "bubblekit/errors.hpp"
#include "bubblekit/paths.hpp"
#include "bubblekit/shortest_path.hpp"
#include "paths_internal.hpp"

namespace bk {
namespace {

using detail::SimpleAdj;

bool any_negative(const SimpleAdj& a) {
    for (const auto& row : a.adj)
        for (const Arc& x : row)
            if (x.w < 0) return true;
    return false;
}

// Distances to t in the graph minus `removed`, computed over the reverse adjacency.
void dist_to_target(const SimpleAdj& rev, uint32_t t, const std::vector<char>& removed, bool negative,
                    std::vector<Weight>& dist, OpCounter& op) {
    std::vector<uint32_t> parent;
    auto nbrs = [&](uint32_t u, auto&& relax) {
        for (const Arc& a : rev.adj[u])
            if (!removed[a.to]) relax(a.to, a.w);
    };
    std::vector<std::pair<uint32_t, Weight>> src{{t, 0}};
    if (negative)
        bellman_ford_core(rev.n, src, nbrs, dist, parent, &op);
    else
        dijkstra_core(rev.n, src, nbrs, kInf, HeapVariant::BinaryNoDecreaseKey, dist, parent, &op);
}

bool within(Weight sofar, Weight w, Weight rest, Weight alpha) {
    if (rest == kInf) return false;
    return sat_add(sat_add(sofar, w), rest) <= alpha;
}

class BoundedRec {
public:
    BoundedRec(const SimpleAdj& fwd, const SimpleAdj& rev, uint32_t t, Weight alpha, const WeightedPathSink& sink,
               OpCounter& op)
        : fwd_(fwd), rev_(rev), t_(t), alpha_(alpha), sink_(sink), op_(op), removed_(fwd.n, 0),
          negative_(any_negative(fwd)) {}

    PathEnumStats run(uint32_t s) {
        std::vector<Weight> d;
        dist_to_target(rev_, t_, removed_, negative_, d, op_);  // rejects negative cycles up front
        if (d[s] != kInf && d[s] <= alpha_) rec(s, 0);
        stats_.ops = op_.ops;
        return stats_;
    }

private:
    void rec(uint32_t u, Weight sofar) {
        if (stop_) return;
        cur_.vertices.push_back(u);
        op_.tick();
        if (u == t_) {
            cur_.weight = sofar;
            ++stats_.emitted;
            if (!sink_(cur_)) stop_ = stats_.truncated = true;
            cur_.vertices.pop_back();
            return;
        }
        removed_[u] = 1;
        std::vector<Weight> d;
        dist_to_target(rev_, t_, removed_, negative_, d, op_);
        std::vector<Arc> kids;
        for (const Arc& a : fwd_.adj[u]) {
            op_.tick();
            if (!removed_[a.to] && within(sofar, a.w, d[a.to], alpha_)) kids.push_back(a);
        }
        d.clear();
        d.shrink_to_fit();
        for (const Arc& a : kids) rec(a.to, sofar + a.w);
        removed_[u] = 0;
        cur_.vertices.pop_back();
    }

    const SimpleAdj& fwd_;
    const SimpleAdj& rev_;
    uint32_t t_;
    Weight alpha_;
    const WeightedPathSink& sink_;
    OpCounter& op_;
    std::vector<char> removed_;
    bool negative_;
    WeightedPath cur_;
    PathEnumStats stats_;
    bool stop_ = false;
};

// Prefix shared by all alpha-bounded s-t paths of the undirected graph minus `removed`.
// Returns the vertices of the prefix (starting at s) and its weight.
std::pair<VertexPath, Weight> lcp_core(const SimpleAdj& g, const std::vector<char>& removed, uint32_t s, uint32_t t,
                                       Weight alpha, OpCounter& op) {
    auto nbrs = [&](uint32_t u, auto&& relax) {
        for (const Arc& a : g.adj[u])
            if (!removed[a.to]) relax(a.to, a.w);
    };
    std::vector<Weight> ds, dt;
    std::vector<uint32_t> ps, pt;
    dijkstra_core(g.n, {{s, 0}}, nbrs, kInf, HeapVariant::BinaryNoDecreaseKey, ds, ps, &op);
    dijkstra_core(g.n, {{t, 0}}, nbrs, kInf, HeapVariant::BinaryNoDecreaseKey, dt, pt, &op);
    if (ds[t] == kInf || ds[t] > alpha) throw NoPathWithinBound("no s-t path within the bound");

    // Euler intervals of the tree rooted at s.
    std::vector<std::vector<uint32_t>> kids(g.n);
    for (uint32_t v = 0; v < g.n; ++v)
        if (ps[v] != kNoVertex) kids[ps[v]].push_back(v);
    std::vector<uint32_t> tin(g.n, 0), tout(g.n, 0), order;
    {
        std::vector<std::pair<uint32_t, size_t>> st{{s, 0}};
        tin[s] = 0;
        order.push_back(s);
        while (!st.empty()) {
            auto& [v, i] = st.back();
            if (i < kids[v].size()) {
                const uint32_t c = kids[v][i++];
                tin[c] = static_cast<uint32_t>(order.size());
                order.push_back(c);
                st.emplace_back(c, 0);
            } else {
                tout[v] = static_cast<uint32_t>(order.size());
                st.pop_back();
            }
            op.tick();
        }
    }
    auto in_sub = [&](uint32_t z, uint32_t v) { return ds[z] != kInf && tin[v] <= tin[z] && tin[z] < tout[v]; };

    VertexPath path;
    for (uint32_t v = t; v != kNoVertex; v = ps[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());

    for (size_t i = 0; i + 1 < path.size(); ++i) {
        const uint32_t u = path[i], v = path[i + 1];
        auto crosses = [&](uint32_t x) {
            for (const Arc& a : g.adj[x]) {
                op.tick();
                if (removed[a.to] || (x == u && a.to == v)) continue;
                if (in_sub(a.to, v) && within(ds[x], a.w, dt[a.to], alpha)) return true;
            }
            return false;
        };
        bool branch = crosses(u);
        for (size_t c = 0; c < kids[u].size() && !branch; ++c) {
            const uint32_t w = kids[u][c];
            if (w == v) continue;
            for (uint32_t j = tin[w]; j < tout[w] && !branch; ++j) branch = crosses(order[j]);
        }
        if (branch) {
            path.resize(i + 1);
            return {path, ds[u]};
        }
    }
    return {path, ds[t]};
}

class ImprovedUndirected {
public:
    ImprovedUndirected(const SimpleAdj& g, uint32_t t, Weight alpha, const WeightedPathSink& sink, OpCounter& op)
        : g_(g), t_(t), alpha_(alpha), sink_(sink), op_(op), removed_(g.n, 0) {}

    PathEnumStats run(uint32_t s) {
        std::vector<Weight> d;
        dist_to_target(g_, t_, removed_, false, d, op_);
        if (d[s] != kInf && d[s] <= alpha_) rec(s, 0);
        stats_.ops = op_.ops;
        return stats_;
    }

private:
    void rec(uint32_t u, Weight sofar) {
        if (stop_) return;
        op_.tick();
        auto [prefix, pw] = lcp_core(g_, removed_, u, t_, alpha_ - sofar, op_);
        for (uint32_t x : prefix) {
            cur_.vertices.push_back(x);
            removed_[x] = 1;
        }
        const uint32_t end = prefix.back();
        const Weight w0 = sofar + pw;
        if (end == t_) {
            cur_.weight = w0;
            ++stats_.emitted;
            if (!sink_(cur_)) stop_ = stats_.truncated = true;
        } else {
            std::vector<Weight> d;
            dist_to_target(g_, t_, removed_, false, d, op_);
            std::vector<Arc> kids;
            for (const Arc& a : g_.adj[end]) {
                op_.tick();
                if (!removed_[a.to] && within(w0, a.w, d[a.to], alpha_)) kids.push_back(a);
            }
            if (kids.size() < 2) throw Error("bounded paths: recursion node below the common prefix is unary");
            for (const Arc& a : kids) rec(a.to, w0 + a.w);
        }
        for (uint32_t x : prefix) removed_[x] = 0;
        cur_.vertices.resize(cur_.vertices.size() - prefix.size());
    }

    const SimpleAdj& g_;
    uint32_t t_;
    Weight alpha_;
    const WeightedPathSink& sink_;
    OpCounter& op_;
    std::vector<char> removed_;
    WeightedPath cur_;
    PathEnumStats stats_;
    bool stop_ = false;
};

void check_non_negative(const SimpleAdj& a) {
    if (any_negative(a)) throw NegativeWeight("negative edge weight");
}

}  // namespace

PathEnumStats list_bounded_st_paths(const Digraph& g, uint32_t s, uint32_t t, Weight alpha,
                                    const WeightedPathSink& sink, OpCounter* ops) {
    detail::check_endpoints(g.n(), s, t);
    OpCounter local;
    OpCounter& op = ops ? *ops : local;
    SimpleAdj fwd = detail::simple_from(g), rev = detail::simple_from(g, true);
    return BoundedRec(fwd, rev, t, alpha, sink, op).run(s);
}

VertexPath longest_common_prefix(const UGraph& g, uint32_t s, uint32_t t, Weight alpha, OpCounter* ops) {
    detail::check_endpoints(g.n(), s, t);
    OpCounter local;
    OpCounter& op = ops ? *ops : local;
    SimpleAdj a = detail::simple_from(g);
    check_non_negative(a);
    std::vector<char> removed(a.n, 0);
    return lcp_core(a, removed, s, t, alpha, op).first;
}

PathEnumStats list_bounded_st_paths_undirected(const UGraph& g, uint32_t s, uint32_t t, Weight alpha,
                                               const WeightedPathSink& sink, OpCounter* ops) {
    detail::check_endpoints(g.n(), s, t);
    OpCounter local;
    OpCounter& op = ops ? *ops : local;
    SimpleAdj a = detail::simple_from(g);
    check_non_negative(a);
    return ImprovedUndirected(a, t, alpha, sink, op).run(s);
}

namespace {

// Search-tree node; children share their parent's prefix.
struct PNode {
    uint32_t v;
    Weight w;  // weight of the prefix ending at v
    std::shared_ptr<const PNode> parent;
};
using PNodePtr = std::shared_ptr<const PNode>;

VertexPath unwind(const PNode* n) {
    VertexPath p;
    for (; n; n = n->parent.get()) p.push_back(n->v);
    std::reverse(p.begin(), p.end());
    return p;
}

}  // namespace

PathEnumStats list_paths_ordered(const Digraph& g, uint32_t s, uint32_t t, Weight alpha, OrderContainer container,
                                 std::optional<uint64_t> K, const WeightedPathSink& sink, OpCounter* ops) {
    detail::check_endpoints(g.n(), s, t);
    OpCounter local;
    OpCounter& op = ops ? *ops : local;
    SimpleAdj fwd = detail::simple_from(g), rev = detail::simple_from(g, true);
    const bool negative = any_negative(fwd);
    if (container == OrderContainer::Heap && negative) throw NegativeWeight("heap ordering needs non-negative weights");
    PathEnumStats stats;
    std::vector<char> removed(fwd.n, 0);
    std::vector<Weight> d;
    dist_to_target(rev, t, removed, negative, d, op);
    if (d[s] == kInf || d[s] > alpha || (K && *K == 0)) {
        stats.ops = op.ops;
        return stats;
    }

    struct Entry {
        Weight key;
        uint64_t seq;
        PNodePtr node;
    };
    auto later = [](const Entry& a, const Entry& b) { return a.key != b.key ? a.key > b.key : a.seq > b.seq; };
    std::vector<Entry> box;  // stack, or binary heap under `later`
    uint64_t seq = 0;
    auto push = [&](Weight key, PNodePtr n) {
        box.push_back({key, seq++, std::move(n)});
        if (container == OrderContainer::Heap) std::push_heap(box.begin(), box.end(), later);
        stats.peak_container = std::max(stats.peak_container, box.size());
        op.tick();
    };
    auto pop = [&]() {
        if (container == OrderContainer::Heap) std::pop_heap(box.begin(), box.end(), later);
        Entry e = std::move(box.back());
        box.pop_back();
        op.tick();
        return e;
    };

    push(d[s], std::make_shared<PNode>(PNode{s, 0, nullptr}));
    while (!box.empty()) {
        Entry e = pop();
        const PNode* n = e.node.get();
        if (n->v == t) {
            ++stats.emitted;
            if (!sink(WeightedPath{unwind(n), n->w})) {
                stats.truncated = true;
                break;
            }
            if (K && stats.emitted >= *K) {
                stats.truncated = !box.empty();
                break;
            }
            continue;
        }
        for (const PNode* x = n; x; x = x->parent.get()) removed[x->v] = 1;
        dist_to_target(rev, t, removed, negative, d, op);
        for (const Arc& a : fwd.adj[n->v]) {
            op.tick();
            if (removed[a.to] || !within(n->w, a.w, d[a.to], alpha)) continue;
            push(sat_add(sat_add(n->w, a.w), d[a.to]), std::make_shared<PNode>(PNode{a.to, n->w + a.w, e.node}));
        }
        for (const PNode* x = n; x; x = x->parent.get()) removed[x->v] = 0;
    }
    stats.ops = op.ops;
    return stats;
}

}  // namespace bk
