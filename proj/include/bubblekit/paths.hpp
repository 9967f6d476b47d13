#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bubblekit/graph.hpp"

namespace bk {

// A path is its vertex sequence; the sink returns false to stop the enumeration.
using VertexPath = std::vector<uint32_t>;
using PathSink = std::function<bool(const VertexPath&)>;

struct WeightedPath {
    VertexPath vertices;
    Weight weight = 0;
};
using WeightedPathSink = std::function<bool(const WeightedPath&)>;

struct PathEnumStats {
    uint64_t emitted = 0;
    bool truncated = false;  // the sink asked to stop or K was reached
    uint64_t ops = 0;
    size_t peak_container = 0;  // only set by list_paths_ordered
};

enum class StPathMode { Baseline, Certificate };
StPathMode parse_st_path_mode(const std::string& s);

// Every simple s-t path of a simple undirected graph, each exactly once. Parallel
// edges are collapsed first; weights are ignored.
PathEnumStats list_st_paths(const UGraph& g, uint32_t s, uint32_t t, StPathMode mode, const PathSink& sink,
                            OpCounter* ops = nullptr);

// Every simple cycle (length >= 3) exactly once, as a vertex sequence without the closing repeat.
PathEnumStats list_cycles(const UGraph& g, StPathMode mode, const PathSink& sink, OpCounter* ops = nullptr);

// Johnson's circuit search on the symmetric digraph of g, reported as undirected cycles.
PathEnumStats list_cycles_johnson(const UGraph& g, const PathSink& sink, OpCounter* ops = nullptr);

// Rotates a cycle so it starts at its minimum vertex and runs towards the smaller neighbour.
VertexPath normalize_cycle(VertexPath c);

// alpha-bounded simple s-t paths in a weighted digraph (negative arcs allowed, negative
// cycles rejected). Parallel arcs collapse to their minimum weight.
PathEnumStats list_bounded_st_paths(const Digraph& g, uint32_t s, uint32_t t, Weight alpha,
                                    const WeightedPathSink& sink, OpCounter* ops = nullptr);

// Longest prefix shared by every alpha-bounded s-t path (non-negative weights).
VertexPath longest_common_prefix(const UGraph& g, uint32_t s, uint32_t t, Weight alpha, OpCounter* ops = nullptr);

// Same output set as list_bounded_st_paths on the symmetric digraph, but every recursion
// first jumps along the longest common prefix.
PathEnumStats list_bounded_st_paths_undirected(const UGraph& g, uint32_t s, uint32_t t, Weight alpha,
                                               const WeightedPathSink& sink, OpCounter* ops = nullptr);

enum class OrderContainer { Stack, Heap };

// Iterative bounded listing. Stack: exact reverse of list_bounded_st_paths. Heap: paths in
// non-decreasing weight, optionally only the first K.
PathEnumStats list_paths_ordered(const Digraph& g, uint32_t s, uint32_t t, Weight alpha, OrderContainer container,
                                 std::optional<uint64_t> K, const WeightedPathSink& sink, OpCounter* ops = nullptr);

// Diamond family: n = 2k+3 vertices a=0, b=1, c=2, v_i = 3+i, u_i = 3+k+i.
UGraph diamond_graph(uint32_t k);

}  // namespace bk
