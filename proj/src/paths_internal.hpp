#pragma once

#include <cstdint>
#include <vector>

#include "bubblekit/graph.hpp"
#include "bubblekit/paths.hpp"

namespace bk::detail {

// Simple weighted adjacency, neighbours ascending; parallel edges keep the minimum weight.
struct SimpleAdj {
    uint32_t n = 0;
    std::vector<std::vector<Arc>> adj;
    uint64_t m = 0;  // number of adjacency entries
};

SimpleAdj simple_from(const UGraph& g);
SimpleAdj simple_from(const Digraph& g, bool reverse = false);
UGraph to_ugraph(const SimpleAdj& a);  // undirected adjacency only

void check_endpoints(uint32_t n, uint32_t s, uint32_t t);

// Certificate-based enumeration on a simple undirected graph.
PathEnumStats list_st_paths_certificate(const SimpleAdj& g, uint32_t s, uint32_t t, const PathSink& sink,
                                        OpCounter& op);

}  // namespace bk::detail
