#include "bubblekit/shortest_path.hpp"

namespace bk {

std::vector<uint32_t> ShortestPathTree::path_to(uint32_t v) const {
    if (v >= dist.size() || dist[v] == kInf) return {};
    std::vector<uint32_t> p;
    for (uint32_t x = v; x != kNoVertex; x = parent[x]) p.push_back(x);
    std::reverse(p.begin(), p.end());
    return p;
}

namespace detail {

void IndexedHeap::swap_at(size_t a, size_t b) {
    std::swap(heap_[a], heap_[b]);
    pos_[heap_[a].first] = static_cast<uint32_t>(a);
    pos_[heap_[b].first] = static_cast<uint32_t>(b);
}

void IndexedHeap::up(size_t i) {
    while (i > 0) {
        size_t p = (i - 1) / 2;
        if (!less(i, p)) break;
        swap_at(i, p);
        i = p;
    }
}

void IndexedHeap::down(size_t i) {
    while (true) {
        size_t l = 2 * i + 1, r = l + 1, best = i;
        if (l < heap_.size() && less(l, best)) best = l;
        if (r < heap_.size() && less(r, best)) best = r;
        if (best == i) break;
        swap_at(i, best);
        i = best;
    }
}

void IndexedHeap::push_or_decrease(uint32_t v, Weight key) {
    if (pos_[v] == kNoVertex) {
        heap_.emplace_back(v, key);
        pos_[v] = static_cast<uint32_t>(heap_.size() - 1);
        up(heap_.size() - 1);
    } else if (key < heap_[pos_[v]].second) {
        heap_[pos_[v]].second = key;
        up(pos_[v]);
    }
}

std::pair<uint32_t, Weight> IndexedHeap::pop() {
    auto top = heap_.front();
    swap_at(0, heap_.size() - 1);
    heap_.pop_back();
    pos_[top.first] = kNoVertex;
    if (!heap_.empty()) down(0);
    return top;
}

}  // namespace detail

ShortestPathTree shortest_path_tree(const Digraph& g, uint32_t source, Weight bound, HeapVariant hv, OpCounter* ops,
                                    bool reverse) {
    if (source >= g.n()) throw VertexNotFound("source out of range");
    ShortestPathTree t;
    t.source = source;
    t.bound = bound;
    auto nbrs = [&](uint32_t u, auto&& relax) {
        for (const Arc& a : reverse ? g.in(u) : g.out(u)) relax(a.to, a.w);
    };
    dijkstra_core(g.n(), {{source, 0}}, nbrs, bound, hv, t.dist, t.parent, ops);
    return t;
}

ShortestPathTree shortest_path_tree(const UGraph& g, uint32_t source, Weight bound, HeapVariant hv, OpCounter* ops) {
    if (source >= g.n()) throw VertexNotFound("source out of range");
    ShortestPathTree t;
    t.source = source;
    t.bound = bound;
    auto nbrs = [&](uint32_t u, auto&& relax) {
        for (const Incidence& inc : g.adj(u)) relax(inc.to, g.edge(inc.edge).w);
    };
    dijkstra_core(g.n(), {{source, 0}}, nbrs, bound, hv, t.dist, t.parent, ops);
    return t;
}

ShortestPathTree bellman_ford(const Digraph& g, uint32_t source, OpCounter* ops, bool reverse) {
    if (source >= g.n()) throw VertexNotFound("source out of range");
    ShortestPathTree t;
    t.source = source;
    auto nbrs = [&](uint32_t u, auto&& relax) {
        for (const Arc& a : reverse ? g.in(u) : g.out(u)) relax(a.to, a.w);
    };
    bellman_ford_core(g.n(), {{source, 0}}, nbrs, t.dist, t.parent, ops);
    return t;
}

}  // namespace bk
