#include "bubblekit/simple_bubbles.hpp"

#include <algorithm>

namespace bk {

namespace {

struct Side {
    uint32_t node;
    Strand s;
};

// Unique successor of (v, s), if any.
bool unique_next(const BidirectedDBG& g, uint32_t v, Strand s, Side& out) {
    uint32_t d = 0;
    for (uint32_t a : g.out_arcs(v))
        if (label_from(g.arcs[a].label) == s) {
            ++d;
            out = {g.arcs[a].to, label_to(g.arcs[a].label)};
        }
    return d == 1;
}

bool one_round(const BidirectedDBG& g, BidirectedDBG& next, std::vector<SnpCandidate>* snps) {
    const uint32_t n = static_cast<uint32_t>(g.nodes.size());
    std::vector<char> used(n, 0), drop(n, 0);
    std::vector<std::string> relabel(n);
    bool changed = false;
    for (uint32_t a = 0; a < n; ++a) {
        for (Strand sa : {Strand::F, Strand::R}) {
            std::vector<Side> mids;
            for (uint32_t id : g.out_arcs(a))
                if (label_from(g.arcs[id].label) == sa) mids.push_back({g.arcs[id].to, label_to(g.arcs[id].label)});
            for (size_t i = 0; i < mids.size(); ++i) {
                for (size_t j = i + 1; j < mids.size(); ++j) {
                    Side x = mids[i], y = mids[j];
                    if (x.node == y.node || x.node == a || y.node == a || used[x.node] || used[y.node] || used[a]) continue;
                    if (g.in_degree(x.node, x.s) != 1 || g.in_degree(y.node, y.s) != 1) continue;
                    Side bx, by;
                    if (!unique_next(g, x.node, x.s, bx) || !unique_next(g, y.node, y.s, by)) continue;
                    if (bx.node != by.node || bx.s != by.s || bx.node == a || bx.node == x.node || bx.node == y.node)
                        continue;
                    if (used[bx.node]) continue;
                    std::string sx = g.oriented(x.node, x.s), sy = g.oriented(y.node, y.s);
                    if (sx.size() != sy.size()) continue;
                    size_t diffs = 0, pos = 0;
                    for (size_t p = 0; p < sx.size() && diffs < 2; ++p)
                        if (sx[p] != sy[p]) {
                            ++diffs;
                            pos = p;
                        }
                    if (diffs != 1) continue;
                    if (snps) snps->push_back({sx, sy, pos, g.nodes[x.node].coverage, g.nodes[y.node].coverage});
                    std::string consensus = g.nodes[x.node].seq;
                    size_t fpos = x.s == Strand::F ? pos : consensus.size() - 1 - pos;
                    consensus[fpos] = 'N';
                    relabel[x.node] = consensus;
                    drop[y.node] = 1;
                    used[a] = used[x.node] = used[y.node] = used[bx.node] = 1;
                    changed = true;
                }
            }
        }
    }
    if (!changed) return false;
    std::vector<uint32_t> remap(n, kNoVertex);
    next = BidirectedDBG{};
    next.k = g.k;
    for (uint32_t v = 0; v < n; ++v) {
        if (drop[v]) continue;
        remap[v] = static_cast<uint32_t>(next.nodes.size());
        BiNode nd = g.nodes[v];
        if (!relabel[v].empty()) nd.seq = relabel[v];
        next.nodes.push_back(nd);
    }
    for (const BiArc& a : g.arcs)
        if (!drop[a.from] && !drop[a.to]) next.arcs.push_back({remap[a.from], remap[a.to], a.label});
    next.index();
    return true;
}

}  // namespace

BidirectedDBG compress_simple_bubbles(const BidirectedDBG& g, std::vector<SnpCandidate>* snps) {
    BidirectedDBG cur = g;
    while (true) {
        BidirectedDBG next;
        if (!one_round(cur, next, snps)) return cur;
        cur = compress(next);
    }
}

}  // namespace bk
