#include "bubblekit/dbg.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "bubblekit/cascade.hpp"
#include "bubblekit/errors.hpp"

namespace bk {

std::string label_name(ArcLabel l) {
    std::string s;
    s += label_from(l) == Strand::F ? 'F' : 'R';
    s += label_to(l) == Strand::F ? 'F' : 'R';
    return s;
}

ArcLabel parse_label(const std::string& s) {
    if (s.size() != 2) throw ConfigError("bad arc label: " + s);
    auto one = [&](char c) {
        if (c == 'F') return Strand::F;
        if (c == 'R') return Strand::R;
        throw ConfigError("bad arc label: " + s);
    };
    return make_label(one(s[0]), one(s[1]));
}

void BidirectedDBG::index() {
    std::sort(arcs.begin(), arcs.end(), [](const BiArc& a, const BiArc& b) {
        if (a.from != b.from) return a.from < b.from;
        if (a.label != b.label) return a.label < b.label;
        return a.to < b.to;
    });
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    out_.assign(nodes.size(), {});
    in_.assign(nodes.size(), {});
    for (uint32_t i = 0; i < arcs.size(); ++i) {
        out_[arcs[i].from].push_back(i);
        in_[arcs[i].to].push_back(i);
    }
}

std::string BidirectedDBG::oriented(uint32_t v, Strand s) const {
    return s == Strand::F ? nodes[v].seq : reverse_complement(nodes[v].seq);
}

uint32_t BidirectedDBG::out_degree(uint32_t v, Strand s) const {
    uint32_t d = 0;
    for (uint32_t a : out_[v]) d += label_from(arcs[a].label) == s;
    return d;
}

uint32_t BidirectedDBG::in_degree(uint32_t v, Strand s) const {
    uint32_t d = 0;
    for (uint32_t a : in_[v]) d += label_to(arcs[a].label) == s;
    return d;
}

int64_t BidirectedDBG::find_arc(uint32_t u, uint32_t v, ArcLabel l) const {
    for (uint32_t a : out_[u])
        if (arcs[a].to == v && arcs[a].label == l) return a;
    return -1;
}

uint64_t BidirectedDBG::total_kmers() const {
    uint64_t s = 0;
    for (const auto& n : nodes) s += n.kmers;
    return s;
}

namespace {

// Node lookup among sorted canonical k-mers.
int64_t rank_of(const std::vector<u128>& sorted, u128 x) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
    if (it == sorted.end() || *it != x) return -1;
    return it - sorted.begin();
}

template <class Accept>
BidirectedDBG build_generic(int k, const std::vector<u128>& keys, const std::vector<uint32_t>& counts, Accept&& accept) {
    BidirectedDBG g;
    g.k = k;
    g.nodes.resize(keys.size());
    const u128 mask = kmer_mask(k);
    for (size_t i = 0; i < keys.size(); ++i) {
        g.nodes[i].seq = decode_packed(keys[i], k);
        g.nodes[i].coverage = counts.empty() ? 1.0 : counts[i];
        g.nodes[i].kmers = 1;
        g.nodes[i].palindrome = revcomp_packed(keys[i], k) == keys[i];
    }
    for (uint32_t u = 0; u < keys.size(); ++u) {
        for (Strand s1 : {Strand::F, Strand::R}) {
            if (s1 == Strand::R && g.nodes[u].palindrome) continue;
            u128 seq = s1 == Strand::F ? keys[u] : revcomp_packed(keys[u], k);
            for (int b = 0; b < 4; ++b) {
                u128 next = ((seq << 2) | static_cast<u128>(b)) & mask;
                u128 canon = canonical_packed(next, k);
                if (!accept(seq, b, canon)) continue;
                int64_t v = rank_of(keys, canon);
                if (v < 0) continue;
                Strand s2 = next == canon ? Strand::F : Strand::R;
                g.arcs.push_back({u, static_cast<uint32_t>(v), make_label(s1, s2)});
            }
        }
    }
    g.index();
    return g;
}

}  // namespace

BidirectedDBG build_dbg(const SolidSet& solid, const SolidSet* kplus1, const DbgBuildOptions& opts) {
    const int k = solid.k;
    if (k < 1 || k > kMaxK) throw InconsistentK("k out of range");
    const bool confirm = kplus1 && opts.confirm_with_kplus1;
    if (confirm && (kplus1->k != k + 1 || k + 1 > kMaxK))
        throw InconsistentK("(k+1)-mer set has k=" + std::to_string(kplus1->k) + ", expected " + std::to_string(k + 1));
    std::vector<u128> keys = solid.keys();
    std::vector<uint32_t> counts;
    counts.reserve(keys.size());
    for (const auto& r : solid.records) counts.push_back(r.count);
    return build_generic(k, keys, counts, [&](u128 seq, int b, u128 canon) {
        if (!confirm) return solid.contains(canon);
        u128 span = (seq << 2) | static_cast<u128>(b);
        return kplus1->contains(canonical_packed(span, k + 1));
    });
}

BidirectedDBG build_dbg(const CascadingBloom& c, const std::vector<u128>& nodes, const std::vector<uint32_t>* counts) {
    if (nodes.size() != c.N) throw InconsistentK("node list does not match the cascade's T0 size");
    std::vector<uint32_t> cnt = counts ? *counts : std::vector<uint32_t>{};
    return build_generic(c.k, nodes, cnt, [&](u128, int, u128 canon) { return c.contains(canon); });
}

bool is_valid_path(const BidirectedDBG& g, const std::vector<uint32_t>& p) {
    for (uint32_t a : p)
        if (a >= g.arcs.size()) throw NotAPath("arc id out of range");
    for (size_t i = 1; i < p.size(); ++i)
        if (g.arcs[p[i - 1]].to != g.arcs[p[i]].from) throw NotAPath("arcs are not adjacent");
    for (size_t i = 1; i < p.size(); ++i)
        if (label_to(g.arcs[p[i - 1]].label) != label_from(g.arcs[p[i]].label)) return false;
    return true;
}

std::string spell_path(const BidirectedDBG& g, const std::vector<uint32_t>& p) {
    if (p.empty()) throw NotAPath("empty path has no spelling");
    if (!is_valid_path(g, p)) throw NotAPath("path is not valid");
    const BiArc& a0 = g.arcs[p[0]];
    std::string s = g.oriented(a0.from, label_from(a0.label));
    for (uint32_t a : p) {
        std::string next = g.oriented(g.arcs[a].to, label_to(g.arcs[a].label));
        s.append(next, static_cast<size_t>(g.k - 1), std::string::npos);
    }
    return s;
}

std::vector<uint32_t> flip_path(const BidirectedDBG& g, const std::vector<uint32_t>& p) {
    std::vector<uint32_t> out;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        const BiArc& a = g.arcs[*it];
        int64_t t = g.find_arc(a.to, a.from, twin_label(a.label));
        if (t < 0) throw NotAPath("arc has no twin");
        out.push_back(static_cast<uint32_t>(t));
    }
    return out;
}

BidirectedDBG compress(const BidirectedDBG& g) {
    const uint32_t n = static_cast<uint32_t>(g.nodes.size());
    struct Step {
        uint32_t node;
        Strand s;
    };
    auto unique_out = [&](uint32_t v, Strand s, const BiArc*& arc) {
        arc = nullptr;
        uint32_t d = 0;
        for (uint32_t a : g.out_arcs(v))
            if (label_from(g.arcs[a].label) == s) {
                ++d;
                arc = &g.arcs[a];
            }
        return d == 1;
    };
    std::vector<char> visited(n, 0);
    // Walk forward from (v,s) while the extension is forced on both sides.
    auto extend = [&](uint32_t v, Strand s, std::vector<Step>& out) {
        const BiArc* a;
        Step cur{v, s};
        while (unique_out(cur.node, cur.s, a)) {
            uint32_t y = a->to;
            Strand d = label_to(a->label);
            if (visited[y] || g.nodes[y].palindrome || g.in_degree(y, d) != 1) break;
            visited[y] = 1;
            out.push_back({y, d});
            cur = {y, d};
        }
    };

    struct Unitig {
        std::vector<Step> chain;
        std::string seq;
    };
    std::vector<Unitig> units;
    for (uint32_t v = 0; v < n; ++v) {
        if (visited[v]) continue;
        visited[v] = 1;
        std::vector<Step> fwd, back;
        if (!g.nodes[v].palindrome) {
            extend(v, Strand::F, fwd);
            extend(v, Strand::R, back);
        }
        Unitig u;
        for (auto it = back.rbegin(); it != back.rend(); ++it) u.chain.push_back({it->node, flip(it->s)});
        u.chain.push_back({v, Strand::F});
        u.chain.insert(u.chain.end(), fwd.begin(), fwd.end());
        u.seq = g.oriented(u.chain[0].node, u.chain[0].s);
        for (size_t i = 1; i < u.chain.size(); ++i) {
            std::string o = g.oriented(u.chain[i].node, u.chain[i].s);
            u.seq.append(o, static_cast<size_t>(g.k - 1), std::string::npos);
        }
        std::string rc = reverse_complement(u.seq);
        if (rc < u.seq) {
            u.seq = rc;
            std::reverse(u.chain.begin(), u.chain.end());
            for (auto& st : u.chain) st.s = flip(st.s);
        }
        units.push_back(std::move(u));
    }
    // Deterministic node order: by label.
    std::vector<uint32_t> order(units.size());
    for (uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) { return units[a].seq < units[b].seq; });

    std::vector<uint32_t> unit_of(n), pos_of(n);
    std::vector<Strand> strand_of(n);
    BidirectedDBG c;
    c.k = g.k;
    c.nodes.resize(units.size());
    for (uint32_t id = 0; id < order.size(); ++id) {
        const Unitig& u = units[order[id]];
        double sum = 0;
        uint32_t kmers = 0;
        for (uint32_t i = 0; i < u.chain.size(); ++i) {
            const auto& st = u.chain[i];
            unit_of[st.node] = id;
            pos_of[st.node] = i;
            strand_of[st.node] = st.s;
            sum += g.nodes[st.node].coverage * g.nodes[st.node].kmers;
            kmers += g.nodes[st.node].kmers;
        }
        c.nodes[id].seq = u.seq;
        c.nodes[id].kmers = kmers;
        c.nodes[id].coverage = kmers ? sum / kmers : 0;
        c.nodes[id].palindrome = u.chain.size() == 1 && g.nodes[u.chain[0].node].palindrome;
    }
    for (const BiArc& a : g.arcs) {
        uint32_t U = unit_of[a.from], V = unit_of[a.to];
        uint32_t lastU = static_cast<uint32_t>(units[order[U]].chain.size()) - 1;
        uint32_t lastV = static_cast<uint32_t>(units[order[V]].chain.size()) - 1;
        Strand su = label_from(a.label) == strand_of[a.from] ? Strand::F : Strand::R;
        Strand sv = label_to(a.label) == strand_of[a.to] ? Strand::F : Strand::R;
        bool leaves_end = su == Strand::F ? pos_of[a.from] == lastU : pos_of[a.from] == 0;
        bool enters_start = sv == Strand::F ? pos_of[a.to] == 0 : pos_of[a.to] == lastV;
        if (!leaves_end || !enters_start) continue;
        // Arcs between consecutive chain members are absorbed into the unitig.
        if (U == V && pos_of[a.from] != pos_of[a.to]) {
            int64_t d = static_cast<int64_t>(pos_of[a.to]) - static_cast<int64_t>(pos_of[a.from]);
            if ((su == Strand::F && d == 1) || (su == Strand::R && d == -1)) continue;
        }
        c.arcs.push_back({U, V, make_label(su, sv)});
    }
    c.index();
    return c;
}

std::vector<u128> spelled_kmers(const BidirectedDBG& g) {
    std::vector<u128> out;
    for (const auto& nd : g.nodes) for_each_canonical_kmer(nd.seq, g.k, [&](u128 x) { out.push_back(x); });
    std::sort(out.begin(), out.end());
    return out;
}

SplitGraph split_bidirected(const BidirectedDBG& g, WeightMode mode) {
    SplitGraph sg;
    sg.k = g.k;
    sg.mode = mode;
    const uint32_t n = static_cast<uint32_t>(g.nodes.size());
    sg.g = Digraph(2 * n);
    sg.seq_len.resize(2 * n);
    for (uint32_t v = 0; v < n; ++v) sg.seq_len[2 * v] = sg.seq_len[2 * v + 1] = static_cast<uint32_t>(g.nodes[v].seq.size());
    for (const BiArc& a : g.arcs) {
        uint32_t x = SplitGraph::vertex(a.from, label_from(a.label));
        uint32_t y = SplitGraph::vertex(a.to, label_to(a.label));
        if (x == y) continue;
        uint32_t contributor = mode == WeightMode::Target ? a.to : a.from;
        Weight w = static_cast<Weight>(g.nodes[contributor].seq.size()) - (g.k - 1);
        sg.g.add_arc(x, y, w);
    }
    sg.g.sort_adjacency();
    return sg;
}

std::string spell_walk(const BidirectedDBG& g, const std::vector<uint32_t>& walk) {
    if (walk.empty()) return {};
    std::string s = g.oriented(SplitGraph::node_of(walk[0]), SplitGraph::strand_of(walk[0]));
    for (size_t i = 1; i < walk.size(); ++i) {
        std::string o = g.oriented(SplitGraph::node_of(walk[i]), SplitGraph::strand_of(walk[i]));
        s.append(o, static_cast<size_t>(g.k - 1), std::string::npos);
    }
    return s;
}

void write_dbg_tsv(const BidirectedDBG& g, const std::string& nodes_path, const std::string& arcs_path) {
    std::ofstream nodes(nodes_path), arcs(arcs_path);
    if (!nodes || !arcs) throw IoError("cannot write graph tables");
    nodes << "# k=" << g.k << "\n#id\tlabel_sequence\tcoverage\n";
    for (uint32_t v = 0; v < g.nodes.size(); ++v) nodes << v << '\t' << g.nodes[v].seq << '\t' << g.nodes[v].coverage << '\n';
    // head_id is the node the arc leaves, tail_id the node it enters.
    arcs << "#head_id\ttail_id\tlabel\tweight\n";
    for (const BiArc& a : g.arcs)
        arcs << a.from << '\t' << a.to << '\t' << label_name(a.label) << '\t'
             << (static_cast<int64_t>(g.nodes[a.to].seq.size()) - (g.k - 1)) << '\n';
}

BidirectedDBG read_dbg_tsv(const std::string& nodes_path, const std::string& arcs_path) {
    std::ifstream nodes(nodes_path), arcs(arcs_path);
    if (!nodes || !arcs) throw IoError("cannot read graph tables");
    BidirectedDBG g;
    std::string line;
    while (std::getline(nodes, line)) {
        if (line.rfind("# k=", 0) == 0) {
            g.k = std::stoi(line.substr(4));
            continue;
        }
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        uint32_t id;
        BiNode nd;
        if (!(ls >> id >> nd.seq >> nd.coverage) || id != g.nodes.size()) throw IoError("bad node line: " + line);
        g.nodes.push_back(nd);
    }
    if (g.k < 1) throw IoError("node table lacks the k header");
    for (auto& nd : g.nodes) {
        if (static_cast<int>(nd.seq.size()) < g.k) throw InconsistentK("node label shorter than k");
        nd.kmers = static_cast<uint32_t>(nd.seq.size()) - static_cast<uint32_t>(g.k) + 1;
        nd.palindrome = reverse_complement(nd.seq) == nd.seq;
    }
    while (std::getline(arcs, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        uint32_t u, v;
        std::string lab;
        if (!(ls >> u >> v >> lab) || u >= g.nodes.size() || v >= g.nodes.size()) throw IoError("bad arc line: " + line);
        g.arcs.push_back({u, v, parse_label(lab)});
    }
    g.index();
    return g;
}

}  // namespace bk
