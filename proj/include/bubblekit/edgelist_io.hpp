#pragma once

#include <string>
#include <vector>

#include "bubblekit/graph.hpp"

namespace bk {

// Text format: header "n m directed|undirected weighted|unit", then m lines "u v [w]", 0-based ids.
struct EdgeList {
    uint32_t n = 0;
    bool directed = true;
    bool weighted = false;
    std::vector<UEdge> edges;

    Digraph to_digraph() const;  // undirected lists yield both orientations
    UGraph to_ugraph() const;    // directed lists drop orientation
};

EdgeList read_edge_list(const std::string& path);
EdgeList parse_edge_list(const std::string& text);
void write_edge_list(const std::string& path, const EdgeList& el);
EdgeList to_edge_list(const Digraph& g, bool weighted = true);
EdgeList to_edge_list(const UGraph& g, bool weighted = true);

}  // namespace bk
