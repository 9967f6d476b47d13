#pragma once

#include <string>
#include <vector>

#include "bubblekit/dbg.hpp"

namespace bk {

// A collapsed pair of parallel nodes that differ at a single position.
struct SnpCandidate {
    std::string allele1, allele2;  // the two node labels, oriented alike
    size_t position = 0;           // index of the differing base
    double coverage1 = 0, coverage2 = 0;
};

// Replace every four-node bubble a -> {x, y} -> b whose middle nodes are non-branching,
// equally long and one substitution apart by a single node carrying N at that position,
// recompressing after each round until nothing changes.
BidirectedDBG compress_simple_bubbles(const BidirectedDBG& g, std::vector<SnpCandidate>* snps = nullptr);

}  // namespace bk
