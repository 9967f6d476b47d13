#pragma once
// Sorted on-disk runs of (128-bit key, count) pairs and their multiway merge.
// Shared by k-mer counting and cascade construction.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "bubblekit/kmer.hpp"

namespace bk {

struct KeyCount {
    u128 key;
    uint32_t count;
};

class ScratchDir {
public:
    // Empty base selects the system temp directory.
    explicit ScratchDir(const std::string& base = "");
    ~ScratchDir();
    ScratchDir(const ScratchDir&) = delete;
    ScratchDir& operator=(const ScratchDir&) = delete;

    std::string new_file(const std::string& stem = "run");
    const std::filesystem::path& path() const { return dir_; }

private:
    std::filesystem::path dir_;
    uint64_t counter_ = 0;
};

class RunWriter {
public:
    explicit RunWriter(const std::string& path);
    ~RunWriter();
    void put(const KeyCount& kc);
    void close();
    uint64_t written() const { return n_; }

private:
    std::FILE* fp_ = nullptr;
    std::string path_;
    uint64_t n_ = 0;
};

class RunReader {
public:
    explicit RunReader(const std::string& path);
    ~RunReader();
    RunReader(RunReader&& o) noexcept;
    RunReader(const RunReader&) = delete;
    bool next(KeyCount& kc);

private:
    std::FILE* fp_ = nullptr;
    std::string path_;
};

// Sort keys, collapse duplicates into counts and write one run file.
std::string spill_sorted_run(std::vector<u128>& keys, ScratchDir& dir);
void write_run(const std::string& path, const std::vector<KeyCount>& run);

// Merge runs (each sorted ascending, unique keys) summing counts of equal keys.
// At most fan_in files are open at once; extra passes write intermediate runs.
void merge_runs(std::vector<std::string> runs, ScratchDir& dir, size_t fan_in,
                const std::function<void(const KeyCount&)>& sink);

inline constexpr size_t kMergeFanIn = 64;

}  // namespace bk
