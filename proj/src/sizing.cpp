#include "bubblekit/sizing.hpp"

#include <cmath>

#include "bubblekit/errors.hpp"
#include "bubblekit/kmer.hpp"

namespace bk {

namespace {
constexpr double kRLo = 1.0;
constexpr double kRHi = 20.0;
constexpr double kTol = 1e-4;
// Expected size of T_1 relative to N: critical false positives among ~6 fresh neighbours per k-mer.
constexpr double kNeighbourFactor = 6.0;

void check_t(int t) {
    if (t != 1 && t != 2 && t != 4 && t != 6)
        throw UnsupportedT("t must be one of 1, 2, 4, 6 (got " + std::to_string(t) + ")");
}
void check_k(int k) {
    if (k < 1 || k > kMaxK) throw ConfigError("k must be in [1, 64]");
}
}  // namespace

std::vector<double> expected_set_fractions(const std::vector<double>& r) {
    std::vector<double> T(r.size() + 1, 0.0);
    T[0] = 1.0;
    for (size_t i = 1; i <= r.size(); ++i) {
        double fp = std::pow(kFpBase, r[i - 1]);
        T[i] = (i == 1) ? kNeighbourFactor * fp : T[i - 2] * fp;
    }
    return T;
}

double cascade_cost(const std::vector<double>& r, int k) {
    auto T = expected_set_fractions(r);
    double bits = 0;
    for (size_t i = 0; i < r.size(); ++i) bits += r[i] * T[i];
    return bits + 2.0 * k * T.back();
}

double golden_section_min(const std::function<double(double)>& f, double lo, double hi, double tol) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

SizingPlan plan_sizing(int t, int k, SizingMode mode) {
    check_t(t);
    check_k(k);
    SizingPlan plan;
    plan.t = t;
    plan.k = k;
    plan.mode = mode;
    auto single = [&](double r) { return cascade_cost(std::vector<double>(t, r), k); };
    double r0 = golden_section_min(single, kRLo, kRHi, kTol);
    plan.r.assign(t, r0);
    if (mode == SizingMode::PerFilterR) {
        // Coordinate descent; each coordinate is a 1-D golden-section problem.
        double prev = cascade_cost(plan.r, k);
        for (int sweep = 0; sweep < 500; ++sweep) {
            for (int i = 0; i < t; ++i) {
                auto fi = [&](double x) {
                    auto r = plan.r;
                    r[i] = x;
                    return cascade_cost(r, k);
                };
                plan.r[i] = golden_section_min(fi, kRLo, kRHi, kTol * 1e-2);
            }
            double cur = cascade_cost(plan.r, k);
            if (prev - cur < 1e-12) break;
            prev = cur;
        }
    }
    plan.predicted_bits_per_kmer = cascade_cost(plan.r, k);
    return plan;
}

SizingPlan fixed_plan(int t, int k, double r) {
    check_t(t);
    return fixed_plan(k, std::vector<double>(t, r));
}

SizingPlan fixed_plan(int k, const std::vector<double>& r) {
    check_k(k);
    if (r.empty()) throw ConfigError("at least one filter ratio is required");
    for (double x : r)
        if (!(x > 0)) throw ConfigError("filter ratios must be positive");
    SizingPlan plan;
    plan.t = static_cast<int>(r.size());
    plan.k = k;
    plan.r = r;
    bool same = true;
    for (double x : r) same = same && x == r[0];
    plan.mode = same ? SizingMode::SingleR : SizingMode::PerFilterR;
    plan.predicted_bits_per_kmer = cascade_cost(r, k);
    return plan;
}

SizingMode parse_sizing_mode(const std::string& s) {
    if (s == "single" || s == "single-r") return SizingMode::SingleR;
    if (s == "per-filter" || s == "per-filter-r") return SizingMode::PerFilterR;
    throw ConfigError("unknown sizing mode: " + s);
}

std::string to_string(SizingMode m) { return m == SizingMode::SingleR ? "single-r" : "per-filter-r"; }

}  // namespace bk
