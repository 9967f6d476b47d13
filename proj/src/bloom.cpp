#include "bubblekit/bloom.hpp"

#include <atomic>
#include <cmath>

#include "bubblekit/errors.hpp"

namespace bk {

namespace {
inline uint64_t fmix64(uint64_t x) noexcept {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 33;
    return x;
}
}  // namespace

uint64_t splitmix64(uint64_t& state) noexcept {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

uint64_t hash_kmer(u128 x, uint64_t seed) noexcept {
    uint64_t lo = static_cast<uint64_t>(x);
    uint64_t hi = static_cast<uint64_t>(x >> 64);
    uint64_t h = fmix64(lo ^ fmix64(seed));
    return fmix64(h ^ (hi + 0x9E3779B97F4A7C15ULL * (seed | 1)));
}

BloomFilter::BloomFilter(uint64_t m, int p, HashSeeds seeds)
    : m_(m < 1 ? 1 : m), p_(p < 1 ? 1 : p), seeds_(seeds), words_((m_ + 63) / 64, 0) {}

uint64_t BloomFilter::bits_for(uint64_t n, double r) {
    if (!(r > 0)) throw ConfigError("bits-per-element ratio must be positive");
    double m = std::ceil(r * static_cast<double>(n));
    return m < 1 ? 1 : static_cast<uint64_t>(m);
}

int BloomFilter::hashes_for(double r) {
    long p = std::lround(r * std::log(2.0));
    return p < 1 ? 1 : static_cast<int>(p);
}

double BloomFilter::predicted_fp(double r, int p) { return std::pow(1.0 - std::exp(-p / r), p); }

BloomFilter BloomFilter::build(const std::vector<u128>& items, double r, HashSeeds seeds, int threads) {
    if (items.empty()) {
        BloomFilter f(1, hashes_for(r), seeds);
        return f;
    }
    BloomFilter f(bits_for(items.size(), r), hashes_for(r), seeds);
    if (threads <= 1) {
        for (u128 x : items) f.insert(x);
    } else {
        const long n = static_cast<long>(items.size());
#pragma omp parallel for num_threads(threads) schedule(static)
        for (long i = 0; i < n; ++i) f.insert_concurrent(items[static_cast<size_t>(i)]);
    }
    f.n_ = items.size();
    return f;
}

void BloomFilter::insert(u128 x) noexcept {
    uint64_t h1 = hash_kmer(x, seeds_.s1);
    uint64_t h2 = hash_kmer(x, seeds_.s2) | 1;
    for (int i = 0; i < p_; ++i) {
        uint64_t bit = (h1 + static_cast<uint64_t>(i) * h2) % m_;
        words_[bit >> 6] |= uint64_t{1} << (bit & 63);
    }
}

void BloomFilter::insert_concurrent(u128 x) noexcept {
    uint64_t h1 = hash_kmer(x, seeds_.s1);
    uint64_t h2 = hash_kmer(x, seeds_.s2) | 1;
    for (int i = 0; i < p_; ++i) {
        uint64_t bit = (h1 + static_cast<uint64_t>(i) * h2) % m_;
        std::atomic_ref<uint64_t> w(words_[bit >> 6]);
        w.fetch_or(uint64_t{1} << (bit & 63), std::memory_order_relaxed);
    }
}

bool BloomFilter::query(u128 x) const noexcept {
    uint64_t h1 = hash_kmer(x, seeds_.s1);
    uint64_t h2 = hash_kmer(x, seeds_.s2) | 1;
    for (int i = 0; i < p_; ++i) {
        uint64_t bit = (h1 + static_cast<uint64_t>(i) * h2) % m_;
        if (!((words_[bit >> 6] >> (bit & 63)) & 1)) return false;
    }
    return true;
}

}  // namespace bk
