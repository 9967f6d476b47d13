#include "bubblekit/bubbles.hpp"

#include <algorithm>

#include "bubblekit/errors.hpp"

namespace bk {

std::string to_string(BubbleClass c) {
    switch (c) {
        case BubbleClass::AS: return "AS";
        case BubbleClass::SNP: return "SNP";
        case BubbleClass::Indel: return "indel";
        case BubbleClass::Repeat: return "repeat";
        default: return "unclassified";
    }
}

Weight path_weight(const Digraph& g, const std::vector<uint32_t>& p) {
    Weight w = 0;
    for (size_t i = 1; i < p.size(); ++i) w = sat_add(w, g.arc_weight(p[i - 1], p[i]));
    return w;
}

Bubble make_bubble(const Digraph& g, std::vector<uint32_t> p, std::vector<uint32_t> q) {
    Bubble b;
    b.s = p.front();
    b.t = p.back();
    Weight wp = path_weight(g, p), wq = path_weight(g, q);
    if (wp < wq || (wp == wq && q < p)) {
        std::swap(p, q);
        std::swap(wp, wq);
    }
    b.path1 = std::move(p);
    b.path2 = std::move(q);
    b.len1 = wp;
    b.len2 = wq;
    return b;
}

bool is_bubble(const Digraph& g, const Bubble& b) {
    const auto& p = b.path1;
    const auto& q = b.path2;
    if (p.size() < 2 || q.size() < 2 || p == q) return false;
    if (p.front() != b.s || q.front() != b.s || p.back() != b.t || q.back() != b.t || b.s == b.t) return false;
    std::vector<uint32_t> inner(p.begin() + 1, p.end() - 1);
    inner.insert(inner.end(), q.begin() + 1, q.end() - 1);
    inner.push_back(b.s);
    inner.push_back(b.t);
    std::sort(inner.begin(), inner.end());
    if (std::adjacent_find(inner.begin(), inner.end()) != inner.end()) return false;
    for (const auto* path : {&p, &q})
        for (size_t i = 1; i < path->size(); ++i)
            if (!g.has_arc((*path)[i - 1], (*path)[i])) return false;
    return true;
}

EnumGuard::EnumGuard(uint64_t max_outputs, double timeout_s)
    : max_(max_outputs), has_deadline_(timeout_s > 0) {
    if (has_deadline_)
        deadline_ = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(timeout_s));
}

bool EnumGuard::time_up() {
    if (!has_deadline_) return false;
    if (expired_) return true;
    if (++tick_ % 256 == 0 && std::chrono::steady_clock::now() >= deadline_) expired_ = true;
    return expired_;
}

TransformedGraph::TransformedGraph(const Digraph& g, uint32_t s)
    : g_(&g), s_(s), m_(static_cast<uint32_t>(g.m())), out_off_(g.n() + 1, 0), in_off_(g.n() + 1, 0) {
    if (s >= g.n()) throw VertexNotFound("source out of range");
    for (uint32_t v = 0; v < g.n(); ++v) {
        out_off_[v + 1] = out_off_[v] + static_cast<uint32_t>(g.out(v).size());
        in_off_[v + 1] = in_off_[v] + static_cast<uint32_t>(g.in(v).size());
    }
}

std::vector<uint32_t> TransformedGraph::out_neighbors(uint32_t x) const {
    std::vector<uint32_t> out;
    for_each_out(x, [&](uint32_t y, uint32_t) { out.push_back(y); });
    return out;
}

Digraph TransformedGraph::materialize() const {
    Digraph d(n());
    for (uint32_t x = 0; x < n(); ++x) for_each_out(x, [&](uint32_t y, uint32_t) { d.add_arc(x, y, 1); });
    return d;
}

namespace {

enum Status : uint8_t { kFree = 0, kBlocked = 1, kTwinned = 2 };

class CycleBubble {
public:
    CycleBubble(const Digraph& g, const BubbleSink& sink, OpCounter& ops)
        : g_(g), tg_(g, 0), sink_(sink), op_(ops) {}

    void run(uint32_t s, EnumResult& res) {
        tg_.reroot(s);
        const uint32_t N = tg_.n();
        status_.assign(N, kFree);
        blist_.assign(N, {});
        in_b_.assign(tg_.arc_id_bound(), 0);
        rank_.assign(tg_.base_n(), 0);
        uint32_t r = 0;
        for (const auto& a : g_.out(s))
            if (rank_[a.to] == 0) rank_[a.to] = ++r;
        op_.tick(N);
        stack_.clear();
        res_ = &res;
        stop_ = false;
        explore(s);
    }

private:
    bool explore(uint32_t v) {
        const uint32_t n = tg_.base_n();
        const uint32_t s = tg_.root();
        const uint32_t sbar = s + n;
        bool f = false;
        stack_.push_back(v);
        status_[v] = kBlocked;
        op_.tick();
        if (v < n) {
            const uint32_t vbar = v + n;
            const bool has_twin_arc = v != s;
            if (has_twin_arc && status_[vbar] == kFree) status_[vbar] = kTwinned;
            tg_.for_each_out(v, [&](uint32_t w, uint32_t) {
                op_.tick();
                if (stop_ || w >= n) return;
                if (v == s) first_ = rank_[w];
                if (status_[w] == kFree && explore(w)) f = true;
            });
            if (!stop_ && has_twin_arc && status_[vbar] == kTwinned && explore(vbar)) f = true;
        } else {
            tg_.for_each_out(v, [&](uint32_t w, uint32_t) {
                op_.tick();
                if (stop_) return;
                if (w == sbar) {
                    // Of the two cycles per bubble, keep the one whose first
                    // arc out of s comes earlier in s's list. Later root
                    // branches only lose closing arcs, so blocked marks stay valid.
                    if (rank_[v - n] > first_) {
                        emit();
                        f = true;
                    }
                } else if (status_[w] == kFree && explore(w)) {
                    f = true;
                }
            });
        }
        if (f) {
            unblock(v);
        } else {
            tg_.for_each_out(v, [&](uint32_t w, uint32_t id) {
                op_.tick();
                if (!in_b_[id]) {
                    in_b_[id] = 1;
                    blist_[w].push_back({v, id});
                }
            });
        }
        stack_.pop_back();
        op_.tick();
        return f;
    }

    void unblock(uint32_t v) {
        work_.push_back(v);
        status_[v] = kFree;
        while (!work_.empty()) {
            uint32_t x = work_.back();
            work_.pop_back();
            auto list = std::move(blist_[x]);
            blist_[x].clear();
            for (auto [w, id] : list) {
                op_.tick();
                in_b_[id] = 0;
                if (status_[w] == kBlocked) {
                    status_[w] = kFree;
                    work_.push_back(w);
                }
            }
        }
    }

    void emit() {
        const uint32_t n = tg_.base_n();
        // Stack: s .. t, t̄ .. x̄; the cycle closes through s̄.
        size_t i = 0;
        while (stack_[i] < n) ++i;
        ++res_->raw;
        std::vector<uint32_t> p(stack_.begin(), stack_.begin() + static_cast<long>(i));
        std::vector<uint32_t> q{tg_.root()};
        for (size_t j = stack_.size(); j-- > i;) q.push_back(stack_[j] - n);
        ++res_->emitted;
        if (!sink_(make_bubble(g_, std::move(p), std::move(q)))) {
            stop_ = true;
            res_->truncated = true;
        }
    }

    const Digraph& g_;
    TransformedGraph tg_;
    const BubbleSink& sink_;
    OpCounter& op_;
    std::vector<uint8_t> status_;
    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> blist_;
    std::vector<uint8_t> in_b_;
    std::vector<uint32_t> stack_, work_;
    // Position of each out-neighbour of the root in its adjacency list, 1-based.
    std::vector<uint32_t> rank_;
    uint32_t first_ = 0;
    EnumResult* res_ = nullptr;
    bool stop_ = false;
};

}  // namespace

EnumResult list_bubbles_linear_delay(const Digraph& g, uint32_t s, const BubbleSink& sink, OpCounter* ops) {
    if (s >= g.n()) throw VertexNotFound("source out of range");
    OpCounter local;
    OpCounter& op = ops ? *ops : local;
    uint64_t start = op.ops;
    EnumResult res;
    CycleBubble cb(g, sink, op);
    cb.run(s, res);
    res.ops = op.ops - start;
    return res;
}

EnumResult list_all_bubbles_linear_delay(const Digraph& g, const BubbleSink& sink, OpCounter* ops) {
    OpCounter local;
    OpCounter& op = ops ? *ops : local;
    uint64_t start = op.ops;
    EnumResult total;
    CycleBubble cb(g, sink, op);
    for (uint32_t s = 0; s < g.n() && !total.truncated; ++s) {
        EnumResult r;
        cb.run(s, r);
        total.emitted += r.emitted;
        total.raw += r.raw;
        total.truncated = r.truncated;
    }
    total.ops = op.ops - start;
    return total;
}

}  // namespace bk
