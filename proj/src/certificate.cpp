// st-path listing driven by an augmented DFS tree of the current bead string.
//
// The bead string from the current endpoint u to t is kept as a stack of segments. The top
// segment holds a DFS tree rooted at u whose root-to-exit path is the "lp" path; every other
// segment is a raw block that gets its own tree when it reaches the top. Each recursion node
// asks the top tree for a branching edge:
//   * a back edge (u,z): left branch walks it, right branch deletes it;
//   * otherwise the single tree edge out of u (unary node).
// All structural edits are int writes recorded in a journal and replayed backwards on return.

#include <algorithm>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "bubblekit/bcc.hpp"
#include "bubblekit/errors.hpp"
#include "paths_internal.hpp"

namespace bk::detail {
namespace {

using EdgeVec = std::vector<std::pair<uint32_t, uint32_t>>;

class Journal {
public:
    void set(int32_t& slot, int32_t v) {
        log_.emplace_back(&slot, slot);
        slot = v;
    }
    size_t mark() const { return log_.size(); }
    void rollback(size_t m) {
        while (log_.size() > m) {
            *log_.back().first = log_.back().second;
            log_.pop_back();
        }
    }

private:
    std::vector<std::pair<int32_t*, int32_t>> log_;
};

struct Segment {
    const EdgeVec* edges = nullptr;
    uint32_t entry = 0, exit = 0;  // global ids
    bool built = false;

    // Tree over local ids; local 0 is the entry. pre doubles as the ordering number.
    std::vector<uint32_t> l2g;
    int32_t root = 0, exit_l = -1;
    std::vector<int32_t> parent, pre, size, low, lp_child, on_lp, dead;
    std::vector<int32_t> child_head, next_sib, prev_sib;
    std::vector<int32_t> ab, ab_off, ab_head;  // ancestor ends of back edges, ascending pre
    std::vector<int32_t> lb, lb_off, lb_len;   // descendant ends, ascending postorder
    std::vector<int32_t> nroot, nroot_stamp;

    bool in_subtree(int32_t z, int32_t c) const { return pre[c] <= pre[z] && pre[z] < pre[c] + size[c]; }
    int32_t ab_front(int32_t v) const {
        const int32_t i = ab_off[v] + ab_head[v];
        return i < ab_off[v + 1] ? ab[i] : -1;
    }
};

// Blocks of H - u, where H is the head block of the spine root u.
struct SpineCtx {
    int32_t id = 0;
    int32_t xh = -1;                                   // last lp vertex of H
    std::vector<EdgeVec> blocks;                       // global endpoints
    std::vector<int32_t> top;                          // block vertex nearest to xh
    std::vector<std::pair<int32_t, int32_t>> blk_of;   // (local vertex, block), sorted

    int32_t block_of(int32_t x) const {
        auto it = std::lower_bound(blk_of.begin(), blk_of.end(), std::make_pair(x, INT32_MIN));
        if (it == blk_of.end() || it->first != x) throw Error("certificate: vertex outside head blocks");
        return it->second;
    }
};

class CertificateStPaths {
public:
    CertificateStPaths(const SimpleAdj& g, uint32_t t, const PathSink& sink, OpCounter& op)
        : g_(g), t_(t), sink_(sink), op_(op), g2l_(g.n, -1), on_path_(g.n, 0) {}

    PathEnumStats run(uint32_t s) {
        UGraph ug = to_ugraph(g_);
        BlockDecomposition d = bcc_decompose(ug, &op_);
        std::vector<Bead> beads = bead_string(d, s, t_);
        if (beads.empty()) {
            stats_.ops = op_.ops;
            return stats_;
        }
        initial_.resize(beads.size());
        for (size_t i = 0; i < beads.size(); ++i)
            for (uint32_t e : d.block_edges[beads[i].block]) initial_[i].emplace_back(ug.edge(e).u, ug.edge(e).v);
        for (size_t i = beads.size(); i-- > 0;) push_segment(&initial_[i], beads[i].entry, beads[i].exit);
        path_.push_back(s);
        rec();
        stats_.ops = op_.ops;
        return stats_;
    }

private:
    void push_segment(const EdgeVec* edges, uint32_t entry, uint32_t exit) {
        auto seg = std::make_unique<Segment>();
        seg->edges = edges;
        seg->entry = entry;
        seg->exit = exit;
        segs_.push_back(std::move(seg));
    }

    void build(Segment& S) {
        auto local = [&](uint32_t x) {
            if (g2l_[x] < 0) {
                g2l_[x] = static_cast<int32_t>(S.l2g.size());
                S.l2g.push_back(x);
            }
            return g2l_[x];
        };
        local(S.entry);
        const EdgeVec& E = *S.edges;
        std::vector<std::pair<int32_t, int32_t>> el;
        el.reserve(E.size());
        for (auto [a, b] : E) el.emplace_back(local(a), local(b));
        const int32_t n = static_cast<int32_t>(S.l2g.size());
        S.exit_l = g2l_[S.exit];
        for (uint32_t x : S.l2g) g2l_[x] = -1;
        if (S.exit_l < 0) throw Error("certificate: segment exit outside its block");
        op_.tick(n + el.size());

        std::vector<int32_t> off(n + 1, 0), adj(2 * el.size());
        for (auto [a, b] : el) ++off[a + 1], ++off[b + 1];
        for (int32_t v = 0; v < n; ++v) off[v + 1] += off[v];
        {
            std::vector<int32_t> fill(off.begin(), off.end() - 1);
            for (size_t e = 0; e < el.size(); ++e) {
                adj[fill[el[e].first]++] = static_cast<int32_t>(e);
                adj[fill[el[e].second]++] = static_cast<int32_t>(e);
            }
        }
        auto other = [&](int32_t e, int32_t v) { return el[e].first == v ? el[e].second : el[e].first; };

        S.parent.assign(n, -1);
        S.pre.assign(n, -1);
        S.size.assign(n, 1);
        S.low.assign(n, 0);
        S.lp_child.assign(n, -1);
        S.on_lp.assign(n, 0);
        S.dead.assign(n, 0);
        S.child_head.assign(n, -1);
        S.next_sib.assign(n, -1);
        S.prev_sib.assign(n, -1);
        S.nroot.assign(n, 0);
        S.nroot_stamp.assign(n, -1);
        std::vector<int32_t> post(n, -1), parent_edge(n, -1), it(n, 0), tail(n, -1);
        std::vector<std::pair<int32_t, int32_t>> back;  // (descendant, ancestor)

        int32_t pre_t = 0, post_t = 0;
        std::vector<int32_t> stack{0};
        S.pre[0] = pre_t++;
        while (!stack.empty()) {
            const int32_t v = stack.back();
            if (off[v] + it[v] < off[v + 1]) {
                const int32_t e = adj[off[v] + it[v]++];
                if (e == parent_edge[v]) continue;
                const int32_t w = other(e, v);
                if (S.pre[w] < 0) {
                    S.pre[w] = pre_t++;
                    S.parent[w] = v;
                    parent_edge[w] = e;
                    if (tail[v] < 0)
                        S.child_head[v] = w;
                    else {
                        S.next_sib[tail[v]] = w;
                        S.prev_sib[w] = tail[v];
                    }
                    tail[v] = w;
                    stack.push_back(w);
                } else if (S.pre[w] < S.pre[v]) {
                    back.emplace_back(v, w);
                }
            } else {
                stack.pop_back();
                post[v] = post_t++;
                if (S.parent[v] >= 0) S.size[S.parent[v]] += S.size[v];
            }
        }
        if (pre_t != n) throw Error("certificate: segment block is disconnected");

        S.ab_off.assign(n + 1, 0);
        S.lb_off.assign(n + 1, 0);
        for (auto [x, y] : back) ++S.ab_off[x + 1], ++S.lb_off[y + 1];
        for (int32_t v = 0; v < n; ++v) {
            S.ab_off[v + 1] += S.ab_off[v];
            S.lb_off[v + 1] += S.lb_off[v];
        }
        S.ab.assign(back.size(), 0);
        S.lb.assign(back.size(), 0);
        {
            std::vector<int32_t> fa(S.ab_off.begin(), S.ab_off.end() - 1), fl(S.lb_off.begin(), S.lb_off.end() - 1);
            for (auto [x, y] : back) {
                S.ab[fa[x]++] = y;
                S.lb[fl[y]++] = x;
            }
        }
        S.ab_head.assign(n, 0);
        S.lb_len.assign(n, 0);
        for (int32_t v = 0; v < n; ++v) {
            std::sort(S.ab.begin() + S.ab_off[v], S.ab.begin() + S.ab_off[v + 1],
                      [&](int32_t a, int32_t b) { return S.pre[a] < S.pre[b]; });
            std::sort(S.lb.begin() + S.lb_off[v], S.lb.begin() + S.lb_off[v + 1],
                      [&](int32_t a, int32_t b) { return post[a] < post[b]; });
            S.lb_len[v] = S.lb_off[v + 1] - S.lb_off[v];
        }

        // Lowpoints bottom-up: children finish before parents in postorder.
        std::vector<int32_t> by_post(n);
        for (int32_t v = 0; v < n; ++v) by_post[post[v]] = v;
        for (int32_t v : by_post) {
            int32_t lw = S.pre[v];
            if (S.ab_off[v] < S.ab_off[v + 1]) lw = std::min(lw, S.pre[S.ab[S.ab_off[v]]]);
            for (int32_t c = S.child_head[v]; c >= 0; c = S.next_sib[c]) lw = std::min(lw, S.low[c]);
            S.low[v] = lw;
        }
        for (int32_t x = S.exit_l; x >= 0; x = S.parent[x]) {
            S.on_lp[x] = 1;
            if (S.parent[x] >= 0) S.lp_child[S.parent[x]] = x;
        }
        S.root = 0;
        S.built = true;
    }

    // Last live back edge into the root from the lp subtree, or -1 for a unary node.
    int32_t choose(Segment& S, int32_t u) {
        const int32_t c = S.lp_child[u];
        while (S.lb_len[u] > 0) {
            op_.tick();
            const int32_t z = S.lb[S.lb_off[u] + S.lb_len[u] - 1];
            if (!S.dead[z] && S.in_subtree(z, c)) return z;
            J_.set(S.lb_len[u], S.lb_len[u] - 1);
        }
        return -1;
    }

    void cut(Segment& S, int32_t w) {
        const int32_t p = S.parent[w];
        if (S.prev_sib[w] >= 0)
            J_.set(S.next_sib[S.prev_sib[w]], S.next_sib[w]);
        else
            J_.set(S.child_head[p], S.next_sib[w]);
        if (S.next_sib[w] >= 0) J_.set(S.prev_sib[S.next_sib[w]], S.prev_sib[w]);
        J_.set(S.dead[w], 1);
    }

    // Deletes back edge (u,z) and repairs lowpoints on the tree path z..u, pruning subtrees
    // that no longer reach above their parent.
    void right_op(Segment& S, int32_t u, int32_t z, int32_t spine) {
        J_.set(S.lb_len[u], S.lb_len[u] - 1);
        if (S.ab_front(z) != u) throw Error("certificate: ancestor list out of order");
        J_.set(S.ab_head[z], S.ab_head[z] + 1);
        const int32_t root_pre = S.pre[u];
        for (int32_t w = z; w != u;) {
            op_.tick();
            int32_t cnt;
            if (S.nroot_stamp[w] == spine) {
                cnt = S.nroot[w] - 1;
            } else {
                cnt = S.ab_front(w) == u ? 1 : 0;
                for (int32_t c = S.child_head[w]; c >= 0; c = S.next_sib[c]) {
                    op_.tick();
                    cnt += S.low[c] == root_pre;
                }
                J_.set(S.nroot_stamp[w], spine);
            }
            J_.set(S.nroot[w], cnt);
            if (cnt > 0) break;
            int32_t lw = S.pre[w];
            if (const int32_t f = S.ab_front(w); f >= 0) lw = std::min(lw, S.pre[f]);
            for (int32_t c = S.child_head[w]; c >= 0; c = S.next_sib[c]) {
                op_.tick();
                lw = std::min(lw, S.low[c]);
            }
            J_.set(S.low[w], lw);
            const int32_t p = S.parent[w];
            if (!S.on_lp[w] && lw >= S.pre[p]) cut(S, w);
            w = p;
        }
    }

    void spine_start(Segment& S, int32_t u, SpineCtx& C) {
        C.id = next_spine_++;
        const int32_t c1 = S.lp_child[u];
        std::vector<int32_t> H{c1};
        for (size_t i = 0; i < H.size(); ++i) {
            const int32_t x = H[i];
            for (int32_t c = S.child_head[x]; c >= 0; c = S.next_sib[c]) {
                op_.tick();
                if (S.low[c] < S.pre[x]) H.push_back(c);
            }
        }
        int32_t x = c1;
        while (x != S.exit_l && S.low[S.lp_child[x]] < S.pre[x]) x = S.lp_child[x];
        C.xh = x;

        // Compact ids for H - u, xh first so the block tree is rooted there.
        std::vector<std::pair<int32_t, int32_t>> idx;
        idx.reserve(H.size());
        for (size_t i = 0; i < H.size(); ++i) idx.emplace_back(H[i], static_cast<int32_t>(i));
        std::sort(idx.begin(), idx.end());
        auto hid = [&](int32_t v) {
            return std::lower_bound(idx.begin(), idx.end(), std::make_pair(v, INT32_MIN))->second;
        };
        const int32_t h = static_cast<int32_t>(H.size());
        std::vector<std::pair<int32_t, int32_t>> el;
        for (int32_t w : H) {
            const int32_t p = S.parent[w];
            if (p != u) el.emplace_back(hid(w), hid(p));
            for (int32_t i = S.ab_off[w] + S.ab_head[w]; i < S.ab_off[w + 1]; ++i) {
                op_.tick();
                if (S.ab[i] != u) el.emplace_back(hid(w), hid(S.ab[i]));
            }
        }
        std::vector<int32_t> off(h + 1, 0), adj(2 * el.size());
        for (auto [a, b] : el) ++off[a + 1], ++off[b + 1];
        for (int32_t v = 0; v < h; ++v) off[v + 1] += off[v];
        {
            std::vector<int32_t> fill(off.begin(), off.end() - 1);
            for (size_t e = 0; e < el.size(); ++e) {
                adj[fill[el[e].first]++] = static_cast<int32_t>(e);
                adj[fill[el[e].second]++] = static_cast<int32_t>(e);
            }
        }
        op_.tick(h + el.size());

        std::vector<int32_t> disc(h, -1), low(h, 0), pe(h, -1), it(h, 0), estack;
        const int32_t r = hid(C.xh);
        int32_t timer = 0;
        std::vector<int32_t> stack{r};
        disc[r] = low[r] = timer++;
        while (!stack.empty()) {
            const int32_t v = stack.back();
            if (off[v] + it[v] < off[v + 1]) {
                const int32_t e = adj[off[v] + it[v]++];
                if (e == pe[v]) continue;
                const int32_t w = el[e].first == v ? el[e].second : el[e].first;
                if (disc[w] < 0) {
                    disc[w] = low[w] = timer++;
                    pe[w] = e;
                    estack.push_back(e);
                    stack.push_back(w);
                } else if (disc[w] < disc[v]) {
                    estack.push_back(e);
                    low[v] = std::min(low[v], disc[w]);
                }
            } else {
                stack.pop_back();
                if (stack.empty()) break;
                const int32_t p = stack.back();
                low[p] = std::min(low[p], low[v]);
                if (low[v] >= disc[p]) {
                    const int32_t b = static_cast<int32_t>(C.blocks.size());
                    C.blocks.emplace_back();
                    C.top.push_back(H[p]);
                    while (true) {
                        const int32_t f = estack.back();
                        estack.pop_back();
                        const int32_t a = el[f].first, bb = el[f].second;
                        C.blocks[b].emplace_back(S.l2g[H[a]], S.l2g[H[bb]]);
                        if (a != p) C.blk_of.emplace_back(H[a], b);
                        if (bb != p) C.blk_of.emplace_back(H[bb], b);
                        if (f == pe[v]) break;
                    }
                }
            }
        }
        std::sort(C.blk_of.begin(), C.blk_of.end());
        C.blk_of.erase(std::unique(C.blk_of.begin(), C.blk_of.end()), C.blk_of.end());
    }

    // Walks back edge (u,z): u leaves the graph, the blocks of H - u between z and xh go on
    // top of the stack and the current tree continues below xh.
    void binary_left(Segment& S, int32_t z, const SpineCtx& C) {
        std::vector<std::pair<int32_t, int32_t>> chain;  // (block, entry)
        for (int32_t x = z; x != C.xh;) {
            op_.tick();
            const int32_t b = C.block_of(x);
            chain.emplace_back(b, x);
            x = C.top[b];
        }
        const size_t base = segs_.size();
        for (size_t i = chain.size(); i-- > 0;) {
            auto [b, entry] = chain[i];
            push_segment(&C.blocks[b], S.l2g[entry], S.l2g[C.top[b]]);
        }
        J_.set(S.root, C.xh);
        path_.push_back(S.l2g[z]);
        rec();
        path_.pop_back();
        segs_.resize(base);
    }

    void emit() {
        op_.tick(path_.size());
        for (uint32_t v : path_) {
            if (on_path_[v]) throw Error("certificate: emitted path repeats a vertex");
            on_path_[v] = 1;
        }
        for (uint32_t v : path_) on_path_[v] = 0;
        ++stats_.emitted;
        if (!sink_(path_)) stop_ = stats_.truncated = true;
    }

    void rec() {
        if (stop_) return;
        op_.tick();
        const size_t frame = J_.mark();
        std::vector<std::unique_ptr<Segment>> popped;
        bool at_t = false;
        while (true) {
            Segment& S = *segs_.back();
            if (!S.built) build(S);
            if (S.root != S.exit_l) break;
            if (segs_.size() == 1) {
                at_t = true;
                break;
            }
            popped.push_back(std::move(segs_.back()));
            segs_.pop_back();
            op_.tick();
        }
        if (at_t) {
            emit();
        } else {
            Segment& S = *segs_.back();
            const int32_t u = S.root;
            std::optional<SpineCtx> ctx;
            while (!stop_) {
                op_.tick();
                const int32_t z = choose(S, u);
                if (z < 0) {
                    const int32_t c = S.lp_child[u];
                    J_.set(S.root, c);
                    path_.push_back(S.l2g[c]);
                    rec();
                    path_.pop_back();
                    break;
                }
                if (!ctx) {
                    ctx.emplace();
                    spine_start(S, u, *ctx);
                }
                const size_t m = J_.mark();
                binary_left(S, z, *ctx);
                J_.rollback(m);
                if (stop_) break;
                right_op(S, u, z, ctx->id);
            }
        }
        J_.rollback(frame);
        while (!popped.empty()) {
            segs_.push_back(std::move(popped.back()));
            popped.pop_back();
        }
    }

    const SimpleAdj& g_;
    uint32_t t_;
    const PathSink& sink_;
    OpCounter& op_;
    Journal J_;
    std::vector<std::unique_ptr<Segment>> segs_;
    std::vector<EdgeVec> initial_;
    std::vector<int32_t> g2l_;
    std::vector<char> on_path_;
    VertexPath path_;
    int32_t next_spine_ = 0;
    PathEnumStats stats_;
    bool stop_ = false;
};

}  // namespace

PathEnumStats list_st_paths_certificate(const SimpleAdj& g, uint32_t s, uint32_t t, const PathSink& sink,
                                        OpCounter& op) {
    return CertificateStPaths(g, t, sink, op).run(s);
}

}  // namespace bk::detail
