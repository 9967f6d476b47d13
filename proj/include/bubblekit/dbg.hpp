#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bubblekit/graph.hpp"
#include "bubblekit/kmer.hpp"
#include "bubblekit/kmer_count.hpp"

namespace bk {

class CascadingBloom;

enum class Strand : uint8_t { F = 0, R = 1 };
inline Strand flip(Strand s) { return s == Strand::F ? Strand::R : Strand::F; }

// Arc label L1L2 packed as (L1 << 1) | L2, so FF=0, FR=1, RF=2, RR=3.
using ArcLabel = uint8_t;
inline ArcLabel make_label(Strand a, Strand b) {
    return static_cast<ArcLabel>((static_cast<int>(a) << 1) | static_cast<int>(b));
}
inline Strand label_from(ArcLabel l) { return static_cast<Strand>((l >> 1) & 1); }
inline Strand label_to(ArcLabel l) { return static_cast<Strand>(l & 1); }
inline ArcLabel twin_label(ArcLabel l) { return make_label(flip(label_to(l)), flip(label_from(l))); }
std::string label_name(ArcLabel l);
ArcLabel parse_label(const std::string& s);

struct BiNode {
    std::string seq;        // forward sequence F(v); R(v) is its reverse complement
    double coverage = 0;    // mean count of member k-mers
    uint32_t kmers = 1;     // number of k-mers merged into this node
    bool palindrome = false;
};

struct BiArc {
    uint32_t from, to;
    ArcLabel label;
    friend bool operator==(const BiArc&, const BiArc&) = default;
};

class BidirectedDBG {
public:
    int k = 0;
    std::vector<BiNode> nodes;
    std::vector<BiArc> arcs;

    void index();  // sorts arcs and rebuilds the adjacency lists
    std::string oriented(uint32_t v, Strand s) const;
    const std::vector<uint32_t>& out_arcs(uint32_t v) const { return out_[v]; }
    const std::vector<uint32_t>& in_arcs(uint32_t v) const { return in_[v]; }
    uint32_t out_degree(uint32_t v, Strand s) const;  // arcs leaving the s-side of v
    uint32_t in_degree(uint32_t v, Strand s) const;   // arcs entering v with label target s
    int64_t find_arc(uint32_t u, uint32_t v, ArcLabel l) const;  // arc id or -1
    uint64_t total_kmers() const;

private:
    std::vector<std::vector<uint32_t>> out_, in_;
};

struct DbgBuildOptions {
    bool confirm_with_kplus1 = true;  // require the spanning (k+1)-mer when a (k+1)-mer set is given
};

// One node per solid k-mer (node id = rank in the sorted set). When kplus1 is non-null
// every arc must be witnessed by a solid (k+1)-mer.
BidirectedDBG build_dbg(const SolidSet& solid, const SolidSet* kplus1 = nullptr, const DbgBuildOptions& opts = {});

// Neighbourhood queries answered by the cascade; nodes must be its sorted T_0.
BidirectedDBG build_dbg(const CascadingBloom& c, const std::vector<u128>& nodes,
                        const std::vector<uint32_t>* counts = nullptr);

// Consecutive arcs must chain: the target letter of one equals the source letter of the next.
bool is_valid_path(const BidirectedDBG& g, const std::vector<uint32_t>& arc_ids);

// Sequence spelled by a valid path given as arc ids (non-empty).
std::string spell_path(const BidirectedDBG& g, const std::vector<uint32_t>& arc_ids);

// Reverse the path and replace each arc by its twin.
std::vector<uint32_t> flip_path(const BidirectedDBG& g, const std::vector<uint32_t>& arc_ids);

BidirectedDBG compress(const BidirectedDBG& g);

// Canonical packed k-mers spelled by all node labels (with multiplicity), sorted.
std::vector<u128> spelled_kmers(const BidirectedDBG& g);

enum class WeightMode {
    Target,  // weight of (u,v) = new nucleotides contributed by v
    Source,  // weight of (u,v) = new nucleotides contributed by u
};

// Vertex 2v is the forward copy of node v, 2v+1 the reverse copy.
struct SplitGraph {
    Digraph g;
    int k = 0;
    WeightMode mode = WeightMode::Target;
    std::vector<uint32_t> seq_len;  // label length per split vertex

    static uint32_t vertex(uint32_t node, Strand s) { return 2 * node + static_cast<uint32_t>(s); }
    static uint32_t node_of(uint32_t x) { return x >> 1; }
    static Strand strand_of(uint32_t x) { return static_cast<Strand>(x & 1); }
};

SplitGraph split_bidirected(const BidirectedDBG& g, WeightMode mode = WeightMode::Target);

// Sequence spelled by a walk of split vertices.
std::string spell_walk(const BidirectedDBG& g, const std::vector<uint32_t>& walk);

void write_dbg_tsv(const BidirectedDBG& g, const std::string& nodes_path, const std::string& arcs_path);
// Node table carries k in its "# k=<k>" header line.
BidirectedDBG read_dbg_tsv(const std::string& nodes_path, const std::string& arcs_path);

}  // namespace bk
