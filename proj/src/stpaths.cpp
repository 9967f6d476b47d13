#include <algorithm>
#include <map>

#include "bubblekit/errors.hpp"
#include "bubblekit/paths.hpp"
#include "paths_internal.hpp"

namespace bk {
namespace detail {

namespace {

void collapse(std::vector<Arc>& row) {
    std::sort(row.begin(), row.end(), [](const Arc& a, const Arc& b) { return a.to != b.to ? a.to < b.to : a.w < b.w; });
    row.erase(std::unique(row.begin(), row.end(), [](const Arc& a, const Arc& b) { return a.to == b.to; }), row.end());
}

}  // namespace

SimpleAdj simple_from(const UGraph& g) {
    SimpleAdj a;
    a.n = g.n();
    a.adj.resize(a.n);
    for (const UEdge& e : g.edges()) {
        a.adj[e.u].push_back({e.v, e.w});
        a.adj[e.v].push_back({e.u, e.w});
    }
    for (auto& row : a.adj) {
        collapse(row);
        a.m += row.size();
    }
    return a;
}

SimpleAdj simple_from(const Digraph& g, bool reverse) {
    SimpleAdj a;
    a.n = g.n();
    a.adj.resize(a.n);
    for (uint32_t u = 0; u < g.n(); ++u)
        for (const Arc& x : g.out(u)) {
            if (reverse)
                a.adj[x.to].push_back({u, x.w});
            else
                a.adj[u].push_back(x);
        }
    for (auto& row : a.adj) {
        collapse(row);
        a.m += row.size();
    }
    return a;
}

UGraph to_ugraph(const SimpleAdj& a) {
    UGraph g(a.n);
    for (uint32_t u = 0; u < a.n; ++u)
        for (const Arc& x : a.adj[u])
            if (u < x.to) g.add_edge(u, x.to, x.w);
    return g;
}

void check_endpoints(uint32_t n, uint32_t s, uint32_t t) {
    if (s >= n) throw VertexNotFound("source vertex " + std::to_string(s) + " not in graph");
    if (t >= n) throw VertexNotFound("target vertex " + std::to_string(t) + " not in graph");
    if (s == t) throw SameEndpoints("source and target coincide");
}

}  // namespace detail

StPathMode parse_st_path_mode(const std::string& s) {
    if (s == "baseline") return StPathMode::Baseline;
    if (s == "certificate") return StPathMode::Certificate;
    throw ConfigError("unknown path mode '" + s + "' (expected baseline|certificate)");
}

namespace {

// Binary partition with one reachability sweep per recursion node: the neighbours of u
// that still reach t once the current prefix is deleted are exactly the non-empty branches.
class BaselineStPaths {
public:
    BaselineStPaths(const detail::SimpleAdj& g, uint32_t t, const PathSink& sink, OpCounter& op)
        : g_(g), t_(t), sink_(sink), op_(op), on_path_(g.n, 0), seen_(g.n, 0) {}

    PathEnumStats run(uint32_t s) {
        rec(s);
        stats_.ops = op_.ops;
        return stats_;
    }

private:
    void reach_from_t() {
        ++stamp_;
        queue_.clear();
        queue_.push_back(t_);
        seen_[t_] = stamp_;
        for (size_t h = 0; h < queue_.size(); ++h) {
            uint32_t x = queue_[h];
            op_.tick();
            for (const Arc& a : g_.adj[x]) {
                op_.tick();
                if (!on_path_[a.to] && seen_[a.to] != stamp_) {
                    seen_[a.to] = stamp_;
                    queue_.push_back(a.to);
                }
            }
        }
    }

    void rec(uint32_t u) {
        if (stop_) return;
        path_.push_back(u);
        op_.tick();
        if (u == t_) {
            ++stats_.emitted;
            if (!sink_(path_)) stop_ = stats_.truncated = true;
            path_.pop_back();
            return;
        }
        on_path_[u] = 1;
        reach_from_t();
        std::vector<uint32_t> branches;
        for (const Arc& a : g_.adj[u]) {
            op_.tick();
            if (!on_path_[a.to] && seen_[a.to] == stamp_) branches.push_back(a.to);
        }
        for (uint32_t v : branches) rec(v);
        on_path_[u] = 0;
        path_.pop_back();
    }

    const detail::SimpleAdj& g_;
    uint32_t t_;
    const PathSink& sink_;
    OpCounter& op_;
    std::vector<char> on_path_;
    std::vector<uint32_t> seen_;
    std::vector<uint32_t> queue_;
    uint32_t stamp_ = 0;
    VertexPath path_;
    PathEnumStats stats_;
    bool stop_ = false;
};

}  // namespace

PathEnumStats list_st_paths(const UGraph& g, uint32_t s, uint32_t t, StPathMode mode, const PathSink& sink,
                            OpCounter* ops) {
    detail::check_endpoints(g.n(), s, t);
    OpCounter local;
    OpCounter& op = ops ? *ops : local;
    detail::SimpleAdj a = detail::simple_from(g);
    if (mode == StPathMode::Certificate) return detail::list_st_paths_certificate(a, s, t, sink, op);
    return BaselineStPaths(a, t, sink, op).run(s);
}

UGraph diamond_graph(uint32_t k) {
    UGraph g(2 * k + 3);
    const uint32_t a = 0, b = 1, c = 2;
    g.add_edge(a, c);
    for (uint32_t i = 0; i < k; ++i) {
        const uint32_t v = 3 + i, u = 3 + k + i;
        g.add_edge(a, v);
        g.add_edge(v, b);
        g.add_edge(b, u);
        g.add_edge(u, c);
    }
    return g;
}

}  // namespace bk
