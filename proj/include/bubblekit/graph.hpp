#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace bk {

using Weight = int64_t;
inline constexpr Weight kInf = std::numeric_limits<Weight>::max();
inline constexpr uint32_t kNoVertex = std::numeric_limits<uint32_t>::max();

// Saturating addition: anything involving kInf stays kInf, overflow clamps.
inline Weight sat_add(Weight a, Weight b) noexcept {
    if (a == kInf || b == kInf) return kInf;
    Weight r;
    if (__builtin_add_overflow(a, b, &r)) return b > 0 ? kInf : std::numeric_limits<Weight>::min();
    return r;
}

// Elementary-step counter: arc touches, queue operations, stack pushes.
struct OpCounter {
    uint64_t ops = 0;
    void tick(uint64_t n = 1) noexcept { ops += n; }
};

struct Arc {
    uint32_t to;  // for in-lists: the arc's origin
    Weight w;
};

class Digraph {
public:
    explicit Digraph(uint32_t n = 0) : out_(n), in_(n) {}

    uint32_t add_vertex();
    void add_arc(uint32_t u, uint32_t v, Weight w = 1);  // self-loops are rejected

    uint32_t n() const { return static_cast<uint32_t>(out_.size()); }
    uint64_t m() const { return m_; }
    const std::vector<Arc>& out(uint32_t u) const { return out_[u]; }
    const std::vector<Arc>& in(uint32_t u) const { return in_[u]; }
    bool has_arc(uint32_t u, uint32_t v) const;
    Weight arc_weight(uint32_t u, uint32_t v) const;  // minimum over parallel arcs, kInf if none
    bool has_negative_weight() const;
    Digraph reversed() const;
    void sort_adjacency();  // ascending by endpoint id, then weight

private:
    std::vector<std::vector<Arc>> out_, in_;
    uint64_t m_ = 0;
};

struct UEdge {
    uint32_t u, v;
    Weight w = 1;
};

struct Incidence {
    uint32_t to;
    uint32_t edge;
};

class UGraph {
public:
    explicit UGraph(uint32_t n = 0) : adj_(n) {}

    uint32_t add_edge(uint32_t u, uint32_t v, Weight w = 1);  // returns edge id; self-loops rejected
    uint32_t n() const { return static_cast<uint32_t>(adj_.size()); }
    uint32_t m() const { return static_cast<uint32_t>(edges_.size()); }
    const std::vector<Incidence>& adj(uint32_t v) const { return adj_[v]; }
    const UEdge& edge(uint32_t e) const { return edges_[e]; }
    const std::vector<UEdge>& edges() const { return edges_; }
    uint32_t other(uint32_t e, uint32_t v) const { return edges_[e].u == v ? edges_[e].v : edges_[e].u; }
    bool has_negative_weight() const;
    void sort_adjacency();

    // Copy keeping only edges with keep[e]; vertex ids are unchanged.
    UGraph filter_edges(const std::vector<char>& keep) const;

private:
    std::vector<std::vector<Incidence>> adj_;
    std::vector<UEdge> edges_;
};

// Underlying undirected simple graph of a digraph (antiparallel and parallel arcs collapse).
UGraph underlying_undirected(const Digraph& g);

Digraph as_digraph(const UGraph& g);  // both orientations of every edge

}  // namespace bk
