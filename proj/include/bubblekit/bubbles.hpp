#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bubblekit/graph.hpp"

namespace bk {

enum class BubbleClass { AS, SNP, Indel, Repeat, Unclassified };
std::string to_string(BubbleClass c);

struct Bubble {
    uint32_t s = kNoVertex;
    uint32_t t = kNoVertex;
    std::vector<uint32_t> path1, path2;  // vertex sequences s..t; len1 >= len2
    Weight len1 = 0, len2 = 0;
    BubbleClass cls = BubbleClass::Unclassified;
    bool strand_inconsistent = false;
};

// Path weight along consecutive vertices (minimum over parallel arcs).
Weight path_weight(const Digraph& g, const std::vector<uint32_t>& p);

// Orders the two paths so that len1 >= len2 (ties: lexicographically smaller path first).
Bubble make_bubble(const Digraph& g, std::vector<uint32_t> p, std::vector<uint32_t> q);

// True when both paths run s..t, share only their endpoints and are simple.
bool is_bubble(const Digraph& g, const Bubble& b);

struct BubbleConstraints {
    Weight alpha1 = 1000;  // bound on the longer path
    Weight alpha2 = kInf;  // bound on the shorter path
    Weight beta = 0;       // lower bound on both paths
    uint64_t max_bubbles = 0;  // 0 = unlimited
    double timeout_s = 0;      // 0 = no limit
};

struct EnumResult {
    uint64_t emitted = 0;
    bool truncated = false;
    uint64_t ops = 0;
    uint64_t raw = 0;  // candidates found before duplicate/bound filtering
};

// Return false to stop the enumeration.
using BubbleSink = std::function<bool(const Bubble&)>;

// ---- the doubled graph G'_s as an implicit view; re-rooting is O(1).
class TransformedGraph {
public:
    TransformedGraph(const Digraph& g, uint32_t s);
    void reroot(uint32_t s) { s_ = s; }
    uint32_t root() const { return s_; }
    uint32_t n() const { return 2 * g_->n(); }
    uint32_t base_n() const { return g_->n(); }
    bool is_twin_side(uint32_t x) const { return x >= g_->n(); }
    uint32_t twin(uint32_t x) const { return x < g_->n() ? x + g_->n() : x - g_->n(); }
    const Digraph& base() const { return *g_; }

    // Out-neighbours in exploration order: regular neighbours ascending, the twin arc last.
    // f(to, arc_id) with arc ids dense in [0, arc_id_bound()).
    template <class F>
    void for_each_out(uint32_t x, F&& f) const {
        const uint32_t n = g_->n();
        if (x < n) {
            const auto& out = g_->out(x);
            for (uint32_t i = 0; i < out.size(); ++i)
                if (out[i].to != s_) f(out[i].to, out_off_[x] + i);
            if (x != s_) f(x + n, m_ + x);
        } else {
            uint32_t v = x - n;
            if (v == s_) {
                f(s_, 2 * m_ + n);
                return;
            }
            const auto& in = g_->in(v);
            for (uint32_t i = 0; i < in.size(); ++i) f(in[i].to + n, m_ + n + in_off_[v] + i);
        }
    }
    uint32_t arc_id_bound() const { return 2 * m_ + g_->n() + 1; }
    std::vector<uint32_t> out_neighbors(uint32_t x) const;
    Digraph materialize() const;

private:
    const Digraph* g_;
    uint32_t s_;
    uint32_t m_;
    std::vector<uint32_t> out_off_, in_off_;
};

// Johnson-style pruned backtracking on G'_s; every (s,t)-bubble once.
EnumResult list_bubbles_linear_delay(const Digraph& g, uint32_t s, const BubbleSink& sink, OpCounter* ops = nullptr);
EnumResult list_all_bubbles_linear_delay(const Digraph& g, const BubbleSink& sink, OpCounter* ops = nullptr);

// ---- bounded bubbles
bool compatible_pair_exists(const Digraph& g, uint32_t s1, Weight a1, uint32_t s2, Weight a2,
                            OpCounter* ops = nullptr);
// For each out-neighbour v of u (in g.out(u) order): does a compatible pair exist for
// `other` (bound a_other) and v (bound a_u - w(u,v)) in g - u?
std::vector<char> compatible_batch(const Digraph& g, uint32_t u, Weight a_u, uint32_t other, Weight a_other,
                                   OpCounter* ops = nullptr);

EnumResult list_bounded_bubbles(const Digraph& g, uint32_t s, const BubbleConstraints& c, const BubbleSink& sink,
                                OpCounter* ops = nullptr);

// Pruned backtracking baseline: grow the first path by DFS, close each endpoint with a second DFS.
EnumResult enumerate_as_bubbles(const Digraph& g, uint32_t s, const BubbleConstraints& c, const BubbleSink& sink,
                                OpCounter* ops = nullptr);

// ---- d internally vertex-disjoint s-t paths via unit-capacity augmenting paths.
bool d_bubble_exists(const Digraph& g, uint32_t s, uint32_t t, uint32_t d,
                     std::vector<std::vector<uint32_t>>* paths = nullptr);
uint32_t max_disjoint_paths(const Digraph& g, uint32_t s, uint32_t t);

// Shared deadline/cap bookkeeping for enumerators.
class EnumGuard {
public:
    EnumGuard(uint64_t max_outputs, double timeout_s);
    bool time_up();  // samples the clock every few hundred calls
    bool cap_reached(uint64_t emitted) const { return max_ != 0 && emitted >= max_; }

private:
    uint64_t max_;
    bool has_deadline_;
    std::chrono::steady_clock::time_point deadline_;
    uint32_t tick_ = 0;
    bool expired_ = false;
};

}  // namespace bk
