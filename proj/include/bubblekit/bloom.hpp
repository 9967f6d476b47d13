#pragma once

#include <cstdint>
#include <vector>

#include "bubblekit/kmer.hpp"

namespace bk {

struct HashSeeds {
    uint64_t s1 = 0x243F6A8885A308D3ULL;
    uint64_t s2 = 0x13198A2E03707344ULL;
};

uint64_t hash_kmer(u128 x, uint64_t seed) noexcept;
uint64_t splitmix64(uint64_t& state) noexcept;

// Plain Bloom filter with double hashing h1 + i*h2 (mod m).
class BloomFilter {
public:
    BloomFilter() = default;
    BloomFilter(uint64_t m, int p, HashSeeds seeds);

    static uint64_t bits_for(uint64_t n, double r);
    static int hashes_for(double r);
    static double predicted_fp(double r, int p);

    // An empty item set yields a 1-bit filter with nothing set, rejecting everything.
    static BloomFilter build(const std::vector<u128>& items, double r, HashSeeds seeds, int threads = 1);

    void insert(u128 x) noexcept;
    void insert_concurrent(u128 x) noexcept;  // safe when several threads insert at once
    bool query(u128 x) const noexcept;

    uint64_t m() const noexcept { return m_; }
    int p() const noexcept { return p_; }
    uint64_t inserted() const noexcept { return n_; }
    void set_inserted(uint64_t n) noexcept { n_ = n; }
    HashSeeds seeds() const noexcept { return seeds_; }
    const std::vector<uint64_t>& words() const noexcept { return words_; }
    std::vector<uint64_t>& words() noexcept { return words_; }

private:
    uint64_t m_ = 1;
    int p_ = 1;
    uint64_t n_ = 0;
    HashSeeds seeds_{};
    std::vector<uint64_t> words_ = std::vector<uint64_t>(1, 0);
};

}  // namespace bk
