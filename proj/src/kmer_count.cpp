#include "bubblekit/kmer_count.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "bubblekit/errors.hpp"
#include "bubblekit/external_sort.hpp"
#include "bubblekit/seqio.hpp"

namespace bk {

const KmerRecord* SolidSet::find(u128 canonical) const {
    auto it = std::lower_bound(records.begin(), records.end(), canonical,
                               [](const KmerRecord& r, u128 v) { return r.kmer < v; });
    if (it == records.end() || it->kmer != canonical) return nullptr;
    return &*it;
}

std::vector<u128> SolidSet::keys() const {
    std::vector<u128> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back(r.kmer);
    return out;
}

KmerCounter::KmerCounter(const CountOptions& opts) : opts_(opts) {
    if (opts.k < 1 || opts.k > kMaxK) throw ConfigError("k must be in [1,64]");
    if (opts.min_abundance < 1) throw ConfigError("min abundance must be >= 1");
    run_capacity_ = opts.memory_budget / sizeof(u128);
    if (run_capacity_ < kMinRunKeys)
        throw BudgetTooSmall("memory budget of " + std::to_string(opts.memory_budget) +
                             " bytes is below one run of " + std::to_string(kMinRunKeys) + " k-mers");
    buffer_.reserve(std::min<size_t>(run_capacity_, size_t{1} << 20));
}

KmerCounter::~KmerCounter() = default;

void KmerCounter::spill() {
    if (buffer_.empty()) return;
    if (!scratch_) scratch_ = std::make_unique<ScratchDir>(opts_.scratch_dir);
    runs_.push_back(spill_sorted_run(buffer_, *scratch_));
}

void KmerCounter::add_sequence(std::string_view seq) {
    for_each_canonical_kmer(seq, opts_.k, [&](u128 x) {
        buffer_.push_back(x);
        if (buffer_.size() >= run_capacity_) spill();
    });
}

SolidSet KmerCounter::finish() {
    SolidSet out;
    out.k = opts_.k;
    out.min_abundance = opts_.min_abundance;
    const uint32_t d = opts_.min_abundance;
    if (runs_.empty()) {
        std::sort(buffer_.begin(), buffer_.end());
        for (size_t i = 0; i < buffer_.size();) {
            size_t j = i;
            while (j < buffer_.size() && buffer_[j] == buffer_[i]) ++j;
            if (j - i >= d) out.records.push_back({buffer_[i], static_cast<uint32_t>(j - i)});
            i = j;
        }
        buffer_.clear();
        return out;
    }
    spill();
    merge_runs(runs_, *scratch_, kMergeFanIn, [&](const KeyCount& kc) {
        if (kc.count >= d) out.records.push_back({kc.key, kc.count});
    });
    runs_.clear();
    return out;
}

SolidSet count_kmers(const std::vector<std::string>& reads, const CountOptions& opts) {
    KmerCounter c(opts);
    for (const auto& r : reads) c.add_sequence(r);
    return c.finish();
}

SolidSet count_kmers_from_files(const std::vector<std::string>& paths, const CountOptions& opts) {
    KmerCounter c(opts);
    for (const auto& p : paths) {
        SequenceReader reader(p);
        SeqRecord rec;
        while (reader.next(rec)) c.add_sequence(rec.seq);
    }
    return c.finish();
}

namespace {

template <class T>
void put_le(std::ostream& os, T v, int bytes) {
    for (int i = 0; i < bytes; ++i) os.put(static_cast<char>((static_cast<uint64_t>(v) >> (8 * i)) & 0xFF));
}

uint64_t get_le(std::istream& is, int bytes) {
    uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) {
        int c = is.get();
        if (c == EOF) throw IoError("unexpected end of k-mer file");
        v |= static_cast<uint64_t>(c & 0xFF) << (8 * i);
    }
    return v;
}

}  // namespace

void save_solid(const std::string& path, const SolidSet& s) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot write " + path);
    os.write("KMC1", 4);
    put_le(os, static_cast<uint32_t>(s.k), 4);
    put_le(os, s.min_abundance, 4);
    put_le(os, static_cast<uint64_t>(s.records.size()), 8);
    for (const auto& r : s.records) {
        put_le(os, static_cast<uint64_t>(r.kmer), 8);
        put_le(os, static_cast<uint64_t>(r.kmer >> 64), 8);
        put_le(os, r.count, 4);
    }
    if (!os) throw IoError("write failed for " + path);
}

SolidSet load_solid(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot read " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::string(magic, 4) != "KMC1") throw IoError(path + " is not a KMC1 file");
    SolidSet s;
    s.k = static_cast<int>(get_le(is, 4));
    s.min_abundance = static_cast<uint32_t>(get_le(is, 4));
    uint64_t n = get_le(is, 8);
    s.records.resize(n);
    for (auto& r : s.records) {
        uint64_t lo = get_le(is, 8), hi = get_le(is, 8);
        r.kmer = (static_cast<u128>(hi) << 64) | lo;
        r.count = static_cast<uint32_t>(get_le(is, 4));
    }
    return s;
}

void save_solid_tsv(const std::string& path, const SolidSet& s) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot write " + path);
    for (const auto& r : s.records) os << decode_packed(r.kmer, s.k) << '\t' << r.count << '\n';
}

}  // namespace bk
