#pragma once

#include <cstdint>
#include <vector>

#include "bubblekit/graph.hpp"

namespace bk {

struct BlockDecomposition {
    std::vector<std::vector<uint32_t>> block_edges;     // edge ids per block
    std::vector<std::vector<uint32_t>> block_vertices;  // ascending vertex ids per block
    std::vector<uint32_t> edge_block;                   // block id of each edge
    std::vector<char> is_articulation;
    std::vector<uint32_t> articulation_points;          // ascending
    std::vector<std::vector<uint32_t>> vertex_blocks;   // block-cut tree adjacency, vertex side

    size_t count() const { return block_edges.size(); }
};

// Tarjan lowpoint decomposition, iterative, one DFS per connected component.
BlockDecomposition bcc_decompose(const UGraph& g, OpCounter* ops = nullptr);

struct Bead {
    uint32_t block;
    uint32_t entry;
    uint32_t exit;
};

// Chain of blocks every s-t path traverses; empty when s and t are disconnected.
std::vector<Bead> bead_string(const BlockDecomposition& d, uint32_t s, uint32_t t);

}  // namespace bk
