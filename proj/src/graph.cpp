#include "bubblekit/graph.hpp"

#include <algorithm>

#include "bubblekit/errors.hpp"

namespace bk {

uint32_t Digraph::add_vertex() {
    out_.emplace_back();
    in_.emplace_back();
    return n() - 1;
}

void Digraph::add_arc(uint32_t u, uint32_t v, Weight w) {
    if (u >= n() || v >= n()) throw VertexNotFound("arc endpoint out of range");
    if (u == v) throw Error("self-loops are not allowed");
    out_[u].push_back({v, w});
    in_[v].push_back({u, w});
    ++m_;
}

bool Digraph::has_arc(uint32_t u, uint32_t v) const {
    for (const Arc& a : out_[u])
        if (a.to == v) return true;
    return false;
}

Weight Digraph::arc_weight(uint32_t u, uint32_t v) const {
    Weight best = kInf;
    for (const Arc& a : out_[u])
        if (a.to == v) best = std::min(best, a.w);
    return best;
}

bool Digraph::has_negative_weight() const {
    for (const auto& l : out_)
        for (const Arc& a : l)
            if (a.w < 0) return true;
    return false;
}

Digraph Digraph::reversed() const {
    Digraph r(n());
    for (uint32_t u = 0; u < n(); ++u)
        for (const Arc& a : out_[u]) r.add_arc(a.to, u, a.w);
    return r;
}

void Digraph::sort_adjacency() {
    auto lt = [](const Arc& a, const Arc& b) { return a.to != b.to ? a.to < b.to : a.w < b.w; };
    for (auto& l : out_) std::sort(l.begin(), l.end(), lt);
    for (auto& l : in_) std::sort(l.begin(), l.end(), lt);
}

uint32_t UGraph::add_edge(uint32_t u, uint32_t v, Weight w) {
    if (u >= n() || v >= n()) throw VertexNotFound("edge endpoint out of range");
    if (u == v) throw Error("self-loops are not allowed");
    uint32_t id = m();
    edges_.push_back({u, v, w});
    adj_[u].push_back({v, id});
    adj_[v].push_back({u, id});
    return id;
}

bool UGraph::has_negative_weight() const {
    for (const auto& e : edges_)
        if (e.w < 0) return true;
    return false;
}

void UGraph::sort_adjacency() {
    for (auto& l : adj_)
        std::sort(l.begin(), l.end(), [](const Incidence& a, const Incidence& b) {
            return a.to != b.to ? a.to < b.to : a.edge < b.edge;
        });
}

UGraph UGraph::filter_edges(const std::vector<char>& keep) const {
    UGraph g(n());
    for (uint32_t e = 0; e < m(); ++e)
        if (keep[e]) g.add_edge(edges_[e].u, edges_[e].v, edges_[e].w);
    return g;
}

UGraph underlying_undirected(const Digraph& g) {
    std::vector<std::pair<uint32_t, uint32_t>> pairs;
    for (uint32_t u = 0; u < g.n(); ++u)
        for (const Arc& a : g.out(u)) pairs.emplace_back(std::min(u, a.to), std::max(u, a.to));
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    UGraph h(g.n());
    for (auto [u, v] : pairs) h.add_edge(u, v, 1);
    return h;
}

Digraph as_digraph(const UGraph& g) {
    Digraph d(g.n());
    for (const auto& e : g.edges()) {
        d.add_arc(e.u, e.v, e.w);
        d.add_arc(e.v, e.u, e.w);
    }
    return d;
}

}  // namespace bk
