#include "bubblekit/bubbles.hpp"
#include "bubblekit/errors.hpp"

namespace bk {

namespace {

class PrunedBacktrack {
public:
    PrunedBacktrack(const Digraph& g, uint32_t s, const BubbleConstraints& c, const BubbleSink& sink, OpCounter& op)
        : g_(g), s_(s), c_(c), sink_(sink), op_(op), on1_(g.n(), 0), on2_(g.n(), 0),
          guard_(c.max_bubbles, c.timeout_s) {}

    void run(EnumResult& res) {
        res_ = &res;
        p1_ = {s_};
        on1_[s_] = 1;
        grow_first(s_, 0);
        on1_[s_] = 0;
    }

private:
    bool halted() {
        if (stop_) return true;
        if (guard_.time_up()) {
            stop_ = true;
            res_->truncated = true;
        }
        return stop_;
    }

    void grow_first(uint32_t x, Weight w1) {
        for (const Arc& a : g_.out(x)) {
            op_.tick();
            if (halted()) return;
            uint32_t y = a.to;
            if (on1_[y]) continue;
            Weight nw = w1 + a.w;
            if (nw > c_.alpha1) continue;
            p1_.push_back(y);
            on1_[y] = 1;
            if (nw >= c_.beta) close(y, nw);
            grow_first(y, nw);
            on1_[y] = 0;
            p1_.pop_back();
        }
    }

    // Second path from s to t avoiding the first path's interior.
    void close(uint32_t t, Weight w1) {
        t_ = t;
        bound2_ = w1 <= c_.alpha2 ? c_.alpha1 : c_.alpha2;
        p2_ = {s_};
        grow_second(s_, 0);
    }

    void grow_second(uint32_t x, Weight w2) {
        for (const Arc& a : g_.out(x)) {
            op_.tick();
            if (halted()) return;
            uint32_t y = a.to;
            Weight nw = w2 + a.w;
            if (nw > bound2_) continue;
            if (y == t_) {
                if (nw < c_.beta) continue;
                p2_.push_back(y);
                emit();
                p2_.pop_back();
                continue;
            }
            if (on1_[y] || on2_[y] || y == s_) continue;
            on2_[y] = 1;
            p2_.push_back(y);
            grow_second(y, nw);
            p2_.pop_back();
            on2_[y] = 0;
        }
    }

    void emit() {
        ++res_->raw;
        if (!(p1_ < p2_)) return;  // each unordered pair is met in both orders
        ++res_->emitted;
        if (!sink_(make_bubble(g_, p1_, p2_)) || guard_.cap_reached(res_->emitted)) {
            stop_ = true;
            res_->truncated = true;
        }
    }

    const Digraph& g_;
    uint32_t s_;
    BubbleConstraints c_;
    const BubbleSink& sink_;
    OpCounter& op_;
    std::vector<char> on1_, on2_;
    std::vector<uint32_t> p1_, p2_;
    uint32_t t_ = kNoVertex;
    Weight bound2_ = 0;
    EnumGuard guard_;
    EnumResult* res_ = nullptr;
    bool stop_ = false;
};

}  // namespace

EnumResult enumerate_as_bubbles(const Digraph& g, uint32_t s, const BubbleConstraints& c, const BubbleSink& sink,
                                OpCounter* ops) {
    if (s >= g.n()) throw VertexNotFound("source out of range");
    if (g.has_negative_weight()) throw NegativeWeight("negative arc weight");
    OpCounter local;
    OpCounter& op = ops ? *ops : local;
    uint64_t start = op.ops;
    EnumResult res;
    PrunedBacktrack pb(g, s, c, sink, op);
    pb.run(res);
    res.ops = op.ops - start;
    return res;
}

}  // namespace bk
