#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "bubblekit/kmer.hpp"

namespace bk {

struct KmerRecord {
    u128 kmer;  // canonical, packed
    uint32_t count;
};

struct SolidSet {
    int k = 0;
    uint32_t min_abundance = 1;
    std::vector<KmerRecord> records;  // strictly ascending by kmer

    size_t size() const { return records.size(); }
    const KmerRecord* find(u128 canonical) const;
    bool contains(u128 canonical) const { return find(canonical) != nullptr; }
    std::vector<u128> keys() const;
};

// Smallest run the counter accepts; memory budgets below one such run are rejected.
inline constexpr size_t kMinRunKeys = 1024;

struct CountOptions {
    int k = 31;
    uint32_t min_abundance = 1;
    size_t memory_budget = size_t{256} << 20;  // bytes for the in-memory run buffer
    std::string scratch_dir;                   // empty = system temp dir
};

class ScratchDir;

// Streams sequences into sorted runs; spills a run whenever the in-memory
// buffer reaches the budget, then merges all runs at finish().
class KmerCounter {
public:
    explicit KmerCounter(const CountOptions& opts);
    ~KmerCounter();
    void add_sequence(std::string_view seq);
    SolidSet finish();
    size_t runs_spilled() const { return runs_.size(); }

private:
    void spill();

    CountOptions opts_;
    size_t run_capacity_;
    std::vector<u128> buffer_;
    std::vector<std::string> runs_;
    std::unique_ptr<ScratchDir> scratch_;
};

SolidSet count_kmers(const std::vector<std::string>& reads, const CountOptions& opts);
SolidSet count_kmers_from_files(const std::vector<std::string>& paths, const CountOptions& opts);

// Binary "KMC1" layout, little-endian: magic, u32 k, u32 d, u64 N, then N x (16-byte kmer, u32 count).
void save_solid(const std::string& path, const SolidSet& s);
SolidSet load_solid(const std::string& path);
void save_solid_tsv(const std::string& path, const SolidSet& s);

}  // namespace bk
