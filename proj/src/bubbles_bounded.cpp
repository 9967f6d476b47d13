#include "bubblekit/bubbles.hpp"
#include "bubblekit/errors.hpp"
#include "bubblekit/shortest_path.hpp"

namespace bk {

namespace {

// Residual graph: removed vertices, vertices whose out-arcs were cut, and the root's
// special restriction (no arcs into s, one banned first arc).
struct Residual {
    const Digraph& g;
    std::vector<char> removed, out_cut;
    uint32_t root = kNoVertex;
    bool root_in_cut = false;
    uint32_t banned = kNoVertex;  // arc (root, banned) is absent

    explicit Residual(const Digraph& g_) : g(g_), removed(g_.n(), 0), out_cut(g_.n(), 0) {}

    bool arc_live(uint32_t u, uint32_t v) const {
        if (removed[u] || removed[v] || out_cut[u]) return false;
        if (root_in_cut && v == root) return false;
        if (u == root && v == banned) return false;
        return true;
    }
    uint32_t live_out_degree(uint32_t u) const {
        uint32_t d = 0;
        for (const Arc& a : g.out(u)) d += arc_live(u, a.to);
        return d;
    }
    auto forward() const {
        return [this](uint32_t u, auto&& relax) {
            for (const Arc& a : g.out(u))
                if (arc_live(u, a.to)) relax(a.to, a.w);
        };
    }
    auto backward() const {
        return [this](uint32_t x, auto&& relax) {
            for (const Arc& a : g.in(x))
                if (arc_live(a.to, x)) relax(a.to, a.w);
        };
    }
};

bool pair_test(const Residual& R, uint32_t s1, Weight a1, uint32_t s2, Weight a2, OpCounter& op) {
    if (a1 < 0 || a2 < 0) return false;
    std::vector<Weight> d1, d2;
    std::vector<uint32_t> p;
    dijkstra_core(R.g.n(), {{s1, 0}}, R.forward(), a1, HeapVariant::BinaryNoDecreaseKey, d1, p, &op);
    dijkstra_core(R.g.n(), {{s2, 0}}, R.forward(), a2, HeapVariant::BinaryNoDecreaseKey, d2, p, &op);
    for (uint32_t v = 0; v < R.g.n(); ++v) {
        op.tick();
        if (d1[v] != kInf && d2[v] != kInf) return true;
    }
    return false;
}

// Distances d(v, r) where r collects every vertex within a_other of `other`, in R - u.
std::vector<Weight> sink_distances(Residual& R, uint32_t u, uint32_t other, Weight a_other, OpCounter& op) {
    const uint32_t n = R.g.n();
    char saved = R.removed[u];
    R.removed[u] = 1;
    std::vector<Weight> d_other, d_r;
    std::vector<uint32_t> p;
    dijkstra_core(n, {{other, 0}}, R.forward(), a_other, HeapVariant::BinaryNoDecreaseKey, d_other, p, &op);
    std::vector<std::pair<uint32_t, Weight>> sources;
    for (uint32_t y = 0; y < n; ++y)
        if (d_other[y] != kInf) sources.emplace_back(y, 0);
    op.tick(n);
    dijkstra_core(n, sources, R.backward(), kInf, HeapVariant::BinaryNoDecreaseKey, d_r, p, &op);
    R.removed[u] = saved;
    return d_r;
}

class BoundedBubbles {
public:
    BoundedBubbles(const Digraph& g, uint32_t s, const BubbleConstraints& c, const BubbleSink& sink, OpCounter& op)
        : g_(g), s_(s), c_(c), sink_(sink), op_(op), R_(g), guard_(c.max_bubbles, c.timeout_s) {}

    void run(EnumResult& res) {
        res_ = &res;
        R_.root = s_;
        R_.root_in_cut = true;
        path1_ = {s_};
        path2_ = {s_};
        for (const Arc& a : g_.out(s_)) {
            if (stop_) break;
            op_.tick();
            if (a.to == s_ || a.w > c_.alpha1) continue;
            R_.banned = a.to;
            if (!pair_test(R_, a.to, c_.alpha1 - a.w, s_, c_.alpha2, op_)) continue;
            path1_.push_back(a.to);
            rec(a.to, c_.alpha1 - a.w, s_, c_.alpha2);
            path1_.pop_back();
        }
        R_.banned = kNoVertex;
        R_.root_in_cut = false;
    }

private:
    void rec(uint32_t s1, Weight a1, uint32_t s2, Weight a2) {
        op_.tick();
        if (stop_) return;
        if (guard_.time_up()) {
            stop_ = true;
            res_->truncated = true;
            return;
        }
        if (s1 == s2) {
            emit();
            return;
        }
        uint32_t d1 = R_.live_out_degree(s1), d2 = R_.live_out_degree(s2);
        op_.tick(g_.out(s1).size() + g_.out(s2).size());
        bool pick1 = d2 == 0 || (d1 != 0 && d1 <= d2);
        uint32_t u = pick1 ? s1 : s2, other = pick1 ? s2 : s1;
        Weight a_u = pick1 ? a1 : a2, a_o = pick1 ? a2 : a1;

        std::vector<Weight> dr = sink_distances(R_, u, other, a_o, op_);
        std::vector<std::pair<uint32_t, Weight>> include;
        for (const Arc& a : g_.out(u)) {
            op_.tick();
            if (!R_.arc_live(u, a.to) || a.w > a_u) continue;
            if (dr[a.to] != kInf && dr[a.to] <= a_u - a.w) include.emplace_back(a.to, a.w);
        }
        auto& path = pick1 ? path1_ : path2_;
        for (auto [v, w] : include) {
            if (stop_) return;
            R_.removed[u] = 1;
            path.push_back(v);
            if (pick1)
                rec(v, a1 - w, s2, a2);
            else
                rec(s1, a1, v, a2 - w);
            path.pop_back();
            R_.removed[u] = 0;
        }
        if (stop_) return;
        R_.out_cut[u] = 1;
        if (pair_test(R_, s1, a1, s2, a2, op_)) rec(s1, a1, s2, a2);
        R_.out_cut[u] = 0;
    }

    void emit() {
        ++res_->raw;
        Weight w1 = path_weight(g_, path1_), w2 = path_weight(g_, path2_);
        if (w1 < c_.beta || w2 < c_.beta) return;
        // The mirrored assignment is produced in another branch; keep the lexicographically smaller form.
        bool mirror_valid = w2 <= c_.alpha1 && w1 <= c_.alpha2;
        if (mirror_valid && path2_ < path1_) return;
        ++res_->emitted;
        if (!sink_(make_bubble(g_, path1_, path2_)) || guard_.cap_reached(res_->emitted)) {
            stop_ = true;
            res_->truncated = true;
        }
    }

    const Digraph& g_;
    uint32_t s_;
    BubbleConstraints c_;
    const BubbleSink& sink_;
    OpCounter& op_;
    Residual R_;
    EnumGuard guard_;
    std::vector<uint32_t> path1_, path2_;
    EnumResult* res_ = nullptr;
    bool stop_ = false;
};

}  // namespace

bool compatible_pair_exists(const Digraph& g, uint32_t s1, Weight a1, uint32_t s2, Weight a2, OpCounter* ops) {
    if (s1 >= g.n() || s2 >= g.n()) throw VertexNotFound("endpoint out of range");
    if (s1 == s2) throw SameEndpoints("compatible-pair test needs distinct endpoints");
    if (g.has_negative_weight()) throw NegativeWeight("negative arc weight");
    OpCounter local;
    Residual R(g);
    return pair_test(R, s1, a1, s2, a2, ops ? *ops : local);
}

std::vector<char> compatible_batch(const Digraph& g, uint32_t u, Weight a_u, uint32_t other, Weight a_other,
                                   OpCounter* ops) {
    if (u >= g.n() || other >= g.n()) throw VertexNotFound("endpoint out of range");
    if (g.has_negative_weight()) throw NegativeWeight("negative arc weight");
    OpCounter local;
    Residual R(g);
    std::vector<Weight> dr = sink_distances(R, u, other, a_other, ops ? *ops : local);
    std::vector<char> out;
    for (const Arc& a : g.out(u)) {
        bool ok = a.to != u && a.w <= a_u && dr[a.to] != kInf && dr[a.to] <= a_u - a.w;
        out.push_back(ok ? 1 : 0);
    }
    return out;
}

EnumResult list_bounded_bubbles(const Digraph& g, uint32_t s, const BubbleConstraints& c, const BubbleSink& sink,
                                OpCounter* ops) {
    if (s >= g.n()) throw VertexNotFound("source out of range");
    if (g.has_negative_weight()) throw NegativeWeight("negative arc weight");
    OpCounter local;
    OpCounter& op = ops ? *ops : local;
    uint64_t start = op.ops;
    EnumResult res;
    BoundedBubbles bb(g, s, c, sink, op);
    bb.run(res);
    res.ops = op.ops - start;
    return res;
}

}  // namespace bk
