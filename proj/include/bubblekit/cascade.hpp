#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bubblekit/bloom.hpp"
#include "bubblekit/kmer.hpp"
#include "bubblekit/kmer_count.hpp"
#include "bubblekit/sizing.hpp"

namespace bk {

// Sorted array of packed k-mers stored with exactly 2k bits per entry.
class PackedKmerArray {
public:
    PackedKmerArray() = default;
    explicit PackedKmerArray(int k) : k_(k) {}

    void push_back(u128 x);  // caller keeps the sequence ascending
    u128 get(uint64_t i) const;
    bool contains(u128 x) const;
    uint64_t size() const { return n_; }
    int k() const { return k_; }
    uint64_t storage_bits() const { return n_ * static_cast<uint64_t>(2 * k_); }
    const std::vector<uint64_t>& words() const { return words_; }

    static PackedKmerArray from_words(int k, uint64_t n, std::vector<uint64_t> words);

private:
    int k_ = 0;
    uint64_t n_ = 0;
    std::vector<uint64_t> words_;
};

struct CascadeOptions {
    std::string scratch_dir;  // empty = system temp dir
    uint64_t seed = 0x5EED5EEDULL;
    int threads = 1;
    size_t extension_buffer = size_t{1} << 22;  // candidate extensions held before a spill
    bool check_nesting = true;
};

struct CascadeQuery {
    bool member;
    int level;  // 0-based index of the resolving filter; t means the final table
};

class CascadingBloom {
public:
    int k = 0;
    int t = 0;
    uint64_t N = 0;
    std::vector<double> r;
    std::vector<BloomFilter> filters;
    PackedKmerArray final_table;
    std::vector<uint64_t> set_sizes;  // |T_0| .. |T_t| observed during construction

    CascadeQuery query(u128 canonical) const;
    bool contains(u128 canonical) const { return query(canonical).member; }
    bool contains(const Kmer& x) const { return contains(x.canonical().packed()); }

    uint64_t total_bits() const;
    double bits_per_kmer() const { return N ? static_cast<double>(total_bits()) / N : 0.0; }

    void save(const std::string& path) const;
    static CascadingBloom load(const std::string& path);
};

CascadingBloom build_cascade(const std::vector<u128>& solid_sorted, int k, const SizingPlan& plan,
                             const CascadeOptions& opts = {});
CascadingBloom build_cascade(const SolidSet& solid, const SizingPlan& plan, const CascadeOptions& opts = {});

inline bool cascade_contains(const CascadingBloom& c, const Kmer& x) { return c.contains(x); }

// Resolving-level histogram (t+1 bins) for the 8 canonical extensions of every k-mer in T_0.
std::vector<uint64_t> traversal_histogram(const CascadingBloom& c, const std::vector<u128>& solid_sorted,
                                          int threads = 1);

}  // namespace bk
