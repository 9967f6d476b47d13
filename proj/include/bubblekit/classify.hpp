#pragma once

#include <string>

#include "bubblekit/bubbles.hpp"
#include "bubblekit/dbg.hpp"

namespace bk {

struct ClassifyOptions {
    double repeat_identity = 0.80;  // minimum ungapped identity for the repeat test
};

// Sequence spelled by the internal part of a split-graph path: the walk's spelling
// without the private parts of its two endpoints. A direct arc yields the (k-1)-overlap.
std::string internal_sequence(const BidirectedDBG& g, const std::vector<uint32_t>& walk);

// Fraction of matching positions of `shorter` laid against the start or the end of
// `longer`, whichever is higher.
double end_anchored_identity(const std::string& longer, const std::string& shorter);

// Decision order: SNP, repeat, indel, AS, unclassified.
BubbleClass classify_sequences(const std::string& upper, const std::string& lower, int k,
                               const ClassifyOptions& opts = {});

BubbleClass classify_bubble(const Bubble& b, const BidirectedDBG& g, const ClassifyOptions& opts = {});

}  // namespace bk
