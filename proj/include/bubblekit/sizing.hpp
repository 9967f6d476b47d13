#pragma once

#include <functional>
#include <string>
#include <vector>

namespace bk {

// Empirical false-positive base: a filter with r bits per element errs with rate c^r.
inline constexpr double kFpBase = 0.6185;

enum class SizingMode { SingleR, PerFilterR };

struct SizingPlan {
    int t = 4;
    int k = 31;
    SizingMode mode = SizingMode::SingleR;
    std::vector<double> r;  // one entry per filter, all equal in single-r mode
    double predicted_bits_per_kmer = 0;
};

// Expected set sizes |T_0|..|T_t| relative to N for the given ratios.
std::vector<double> expected_set_fractions(const std::vector<double>& r);

// Bits per k-mer: sum_i r_i |T_{i-1}|/N plus 2k |T_t|/N.
double cascade_cost(const std::vector<double>& r, int k);

double golden_section_min(const std::function<double(double)>& f, double lo, double hi, double tol);

SizingPlan plan_sizing(int t, int k, SizingMode mode);
SizingPlan fixed_plan(int t, int k, double r);
SizingPlan fixed_plan(int k, const std::vector<double>& r);

SizingMode parse_sizing_mode(const std::string& s);
std::string to_string(SizingMode m);

}  // namespace bk
