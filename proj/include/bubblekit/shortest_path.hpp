#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "bubblekit/errors.hpp"
#include "bubblekit/graph.hpp"

namespace bk {

enum class HeapVariant { Binary, BinaryNoDecreaseKey };

struct ShortestPathTree {
    uint32_t source = kNoVertex;
    Weight bound = kInf;
    std::vector<Weight> dist;
    std::vector<uint32_t> parent;

    bool reached(uint32_t v) const { return dist[v] != kInf; }
    std::vector<uint32_t> path_to(uint32_t v) const;  // source..v, empty if unreached
};

namespace detail {

// Binary heap over vertex ids keyed by (dist, id) with decrease-key.
class IndexedHeap {
public:
    explicit IndexedHeap(uint32_t n) : pos_(n, kNoVertex) {}
    bool empty() const { return heap_.empty(); }
    size_t size() const { return heap_.size(); }
    void push_or_decrease(uint32_t v, Weight key);
    std::pair<uint32_t, Weight> pop();

private:
    bool less(size_t a, size_t b) const {
        return heap_[a].second != heap_[b].second ? heap_[a].second < heap_[b].second
                                                  : heap_[a].first < heap_[b].first;
    }
    void up(size_t i);
    void down(size_t i);
    void swap_at(size_t a, size_t b);
    std::vector<std::pair<uint32_t, Weight>> heap_;
    std::vector<uint32_t> pos_;
};

}  // namespace detail

// Dijkstra over an implicit graph. nbrs(u, relax) must call relax(v, w) for every arc u->v.
// Vertices are settled in (distance, id) order in both heap variants, so trees coincide.
// Vertices farther than `bound` keep dist = kInf.
template <class Nbrs>
void dijkstra_core(uint32_t n, const std::vector<std::pair<uint32_t, Weight>>& sources, Nbrs&& nbrs, Weight bound,
                   HeapVariant hv, std::vector<Weight>& dist, std::vector<uint32_t>& parent, OpCounter* ops) {
    dist.assign(n, kInf);
    parent.assign(n, kNoVertex);
    OpCounter local;
    OpCounter& op = ops ? *ops : local;
    std::vector<char> done(n, 0);
    auto relax_from = [&](uint32_t u, auto&& push) {
        nbrs(u, [&](uint32_t v, Weight w) {
            op.tick();
            if (w < 0) throw NegativeWeight("negative arc weight in Dijkstra");
            if (done[v]) return;
            Weight nd = sat_add(dist[u], w);
            if (nd > bound) return;
            if (nd < dist[v]) {
                dist[v] = nd;
                parent[v] = u;
                push(v, nd);
            }
        });
    };
    if (hv == HeapVariant::Binary) {
        detail::IndexedHeap h(n);
        for (auto [s, d0] : sources)
            if (d0 <= bound && d0 < dist[s]) {
                dist[s] = d0;
                h.push_or_decrease(s, d0);
            }
        while (!h.empty()) {
            auto [u, d] = h.pop();
            op.tick();
            done[u] = 1;
            relax_from(u, [&](uint32_t v, Weight nd) { h.push_or_decrease(v, nd); });
        }
    } else {
        using E = std::pair<Weight, uint32_t>;
        std::vector<E> h;
        auto cmp = [](const E& a, const E& b) { return a > b; };
        for (auto [s, d0] : sources)
            if (d0 <= bound && d0 < dist[s]) {
                dist[s] = d0;
                h.emplace_back(d0, s);
                std::push_heap(h.begin(), h.end(), cmp);
            }
        while (!h.empty()) {
            std::pop_heap(h.begin(), h.end(), cmp);
            auto [d, u] = h.back();
            h.pop_back();
            op.tick();
            if (done[u] || d != dist[u]) continue;
            done[u] = 1;
            relax_from(u, [&](uint32_t v, Weight nd) {
                h.emplace_back(nd, v);
                std::push_heap(h.begin(), h.end(), cmp);
            });
        }
    }
}

// Label-correcting single-source distances for general weights; throws NegativeCycle
// if a negative cycle is reachable from a source.
template <class Nbrs>
void bellman_ford_core(uint32_t n, const std::vector<std::pair<uint32_t, Weight>>& sources, Nbrs&& nbrs,
                       std::vector<Weight>& dist, std::vector<uint32_t>& parent, OpCounter* ops) {
    dist.assign(n, kInf);
    parent.assign(n, kNoVertex);
    OpCounter local;
    OpCounter& op = ops ? *ops : local;
    for (auto [s, d0] : sources) dist[s] = std::min(dist[s], d0);
    for (uint32_t round = 0; round <= n; ++round) {
        bool changed = false;
        for (uint32_t u = 0; u < n; ++u) {
            if (dist[u] == kInf) continue;
            nbrs(u, [&](uint32_t v, Weight w) {
                op.tick();
                Weight nd = sat_add(dist[u], w);
                if (nd < dist[v]) {
                    dist[v] = nd;
                    parent[v] = u;
                    changed = true;
                }
            });
        }
        if (!changed) return;
    }
    throw NegativeCycle("negative cycle reachable from source");
}

ShortestPathTree shortest_path_tree(const Digraph& g, uint32_t source, Weight bound = kInf,
                                    HeapVariant hv = HeapVariant::BinaryNoDecreaseKey, OpCounter* ops = nullptr,
                                    bool reverse = false);
ShortestPathTree shortest_path_tree(const UGraph& g, uint32_t source, Weight bound = kInf,
                                    HeapVariant hv = HeapVariant::BinaryNoDecreaseKey, OpCounter* ops = nullptr);
ShortestPathTree bellman_ford(const Digraph& g, uint32_t source, OpCounter* ops = nullptr, bool reverse = false);

}  // namespace bk
