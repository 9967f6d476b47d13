#include "bubblekit/edgelist_io.hpp"

#include <fstream>
#include <sstream>

#include "bubblekit/errors.hpp"

namespace bk {

Digraph EdgeList::to_digraph() const {
    Digraph g(n);
    for (const auto& e : edges) {
        g.add_arc(e.u, e.v, e.w);
        if (!directed) g.add_arc(e.v, e.u, e.w);
    }
    return g;
}

UGraph EdgeList::to_ugraph() const {
    UGraph g(n);
    for (const auto& e : edges) g.add_edge(e.u, e.v, e.w);
    return g;
}

EdgeList parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    EdgeList el;
    uint64_t m = 0;
    bool header = false;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        auto fail = [&](const std::string& what) {
            throw IoError("edge list line " + std::to_string(lineno) + ": " + what);
        };
        if (!header) {
            std::string dir, wt;
            uint64_t n = 0;
            try {
                n = std::stoull(first);
            } catch (...) {
                fail("bad header");
            }
            if (!(ls >> m >> dir >> wt)) fail("header needs 'n m directed|undirected weighted|unit'");
            if (dir != "directed" && dir != "undirected") fail("expected directed|undirected");
            if (wt != "weighted" && wt != "unit") fail("expected weighted|unit");
            el.n = static_cast<uint32_t>(n);
            el.directed = dir == "directed";
            el.weighted = wt == "weighted";
            header = true;
            continue;
        }
        UEdge e{};
        long long u = -1, v = -1, w = 1;
        try {
            u = std::stoll(first);
        } catch (...) {
            fail("bad vertex id");
        }
        if (!(ls >> v)) fail("missing endpoint");
        if (el.weighted && !(ls >> w)) fail("missing weight");
        if (u < 0 || v < 0 || u >= el.n || v >= el.n) fail("vertex id out of range");
        e.u = static_cast<uint32_t>(u);
        e.v = static_cast<uint32_t>(v);
        e.w = w;
        el.edges.push_back(e);
    }
    if (!header) throw IoError("edge list: missing header");
    if (el.edges.size() != m) throw IoError("edge list: header announces " + std::to_string(m) + " edges, found " +
                                            std::to_string(el.edges.size()));
    return el;
}

EdgeList read_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_edge_list(ss.str());
}

void write_edge_list(const std::string& path, const EdgeList& el) {
    std::ofstream o(path);
    if (!o) throw IoError("cannot write " + path);
    o << el.n << ' ' << el.edges.size() << ' ' << (el.directed ? "directed" : "undirected") << ' '
      << (el.weighted ? "weighted" : "unit") << '\n';
    for (const auto& e : el.edges) {
        o << e.u << ' ' << e.v;
        if (el.weighted) o << ' ' << e.w;
        o << '\n';
    }
}

EdgeList to_edge_list(const Digraph& g, bool weighted) {
    EdgeList el;
    el.n = g.n();
    el.directed = true;
    el.weighted = weighted;
    for (uint32_t u = 0; u < g.n(); ++u)
        for (const Arc& a : g.out(u)) el.edges.push_back({u, a.to, a.w});
    return el;
}

EdgeList to_edge_list(const UGraph& g, bool weighted) {
    EdgeList el;
    el.n = g.n();
    el.directed = false;
    el.weighted = weighted;
    el.edges = g.edges();
    return el;
}

}  // namespace bk
