#include "bubblekit/classify.hpp"

#include <algorithm>

namespace bk {

std::string internal_sequence(const BidirectedDBG& g, const std::vector<uint32_t>& walk) {
    if (walk.size() < 2) return {};
    std::string full = spell_walk(g, walk);
    const size_t k1 = static_cast<size_t>(g.k - 1);
    size_t head = g.nodes[SplitGraph::node_of(walk.front())].seq.size() - k1;
    size_t tail = g.nodes[SplitGraph::node_of(walk.back())].seq.size() - k1;
    return full.substr(head, full.size() - head - tail);
}

double end_anchored_identity(const std::string& longer, const std::string& shorter) {
    if (shorter.empty()) return 0.0;
    if (shorter.size() > longer.size()) return end_anchored_identity(shorter, longer);
    size_t front = 0, back = 0;
    const size_t off = longer.size() - shorter.size();
    for (size_t i = 0; i < shorter.size(); ++i) {
        front += shorter[i] == longer[i];
        back += shorter[i] == longer[off + i];
    }
    return static_cast<double>(std::max(front, back)) / static_cast<double>(shorter.size());
}

BubbleClass classify_sequences(const std::string& upper, const std::string& lower, int k, const ClassifyOptions& opts) {
    const std::string& longer = upper.size() >= lower.size() ? upper : lower;
    const std::string& shorter = upper.size() >= lower.size() ? lower : upper;
    const size_t l1 = longer.size(), l2 = shorter.size();
    const size_t two_k = 2 * static_cast<size_t>(k);
    if (l1 == two_k - 1 && l2 == two_k - 1) return BubbleClass::SNP;
    if (l1 > l2 && end_anchored_identity(longer, shorter) >= opts.repeat_identity) return BubbleClass::Repeat;
    const size_t diff = l1 - l2;
    if (diff == 1 || diff == 2 || diff == 4 || diff == 5) return BubbleClass::Indel;
    if (l2 <= two_k - 2) return BubbleClass::AS;
    return BubbleClass::Unclassified;
}

BubbleClass classify_bubble(const Bubble& b, const BidirectedDBG& g, const ClassifyOptions& opts) {
    return classify_sequences(internal_sequence(g, b.path1), internal_sequence(g, b.path2), g.k, opts);
}

}  // namespace bk
