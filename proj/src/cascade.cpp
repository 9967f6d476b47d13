#include "bubblekit/cascade.hpp"

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>

#include "bubblekit/errors.hpp"
#include "bubblekit/external_sort.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bk {

// ---------------------------------------------------------------- packed array

void PackedKmerArray::push_back(u128 x) {
    const unsigned w = 2u * static_cast<unsigned>(k_);
    const uint64_t pos = n_ * w;
    const uint64_t need = (pos + w + 63) / 64 + 2;
    if (words_.size() < need) words_.resize(std::max<uint64_t>(need, words_.size() * 2), 0);
    uint64_t word = pos >> 6;
    unsigned off = pos & 63;
    x &= kmer_mask(k_);
    words_[word] |= static_cast<uint64_t>(x << off);
    if (off + w > 64) words_[word + 1] |= static_cast<uint64_t>(x >> (64 - off));
    if (off + w > 128) words_[word + 2] |= static_cast<uint64_t>(x >> (128 - off));
    ++n_;
}

u128 PackedKmerArray::get(uint64_t i) const {
    const unsigned w = 2u * static_cast<unsigned>(k_);
    const uint64_t pos = i * w;
    uint64_t word = pos >> 6;
    unsigned off = pos & 63;
    u128 v = (static_cast<u128>(words_[word + 1]) << 64) | words_[word];
    v >>= off;
    if (off + w > 128 && off > 0) v |= static_cast<u128>(words_[word + 2]) << (128 - off);
    return v & kmer_mask(k_);
}

bool PackedKmerArray::contains(u128 x) const {
    uint64_t lo = 0, hi = n_;
    while (lo < hi) {
        uint64_t mid = lo + (hi - lo) / 2;
        u128 v = get(mid);
        if (v == x) return true;
        if (v < x)
            lo = mid + 1;
        else
            hi = mid;
    }
    return false;
}

PackedKmerArray PackedKmerArray::from_words(int k, uint64_t n, std::vector<uint64_t> words) {
    PackedKmerArray a(k);
    a.n_ = n;
    uint64_t need = (n * 2 * static_cast<uint64_t>(k) + 63) / 64 + 2;
    if (words.size() < need) words.resize(need, 0);
    a.words_ = std::move(words);
    return a;
}

// ---------------------------------------------------------------- query

CascadeQuery CascadingBloom::query(u128 x) const {
    for (int i = 0; i < t; ++i)
        if (!filters[static_cast<size_t>(i)].query(x)) return {(i % 2) == 1, i};
    bool in_final = final_table.contains(x);
    return {(t % 2 == 0) ? in_final : !in_final, t};
}

uint64_t CascadingBloom::total_bits() const {
    uint64_t b = final_table.storage_bits();
    for (const auto& f : filters) b += f.m();
    return b;
}

// ---------------------------------------------------------------- construction

namespace {

bool sorted_contains(const std::vector<u128>& v, u128 x) { return std::binary_search(v.begin(), v.end(), x); }

// Streams a sorted set either from memory (T_0) or from a scratch run.
class SetStream {
public:
    explicit SetStream(const std::vector<u128>* mem) : mem_(mem) {}
    explicit SetStream(const std::string& path) : rd_(std::make_unique<RunReader>(path)) {}
    bool next(u128& x) {
        if (mem_) {
            if (pos_ >= mem_->size()) return false;
            x = (*mem_)[pos_++];
            return true;
        }
        KeyCount kc;
        if (!rd_->next(kc)) return false;
        x = kc.key;
        return true;
    }
    // Fill up to cap items; returns count.
    size_t fill(std::vector<u128>& buf, size_t cap) {
        buf.clear();
        u128 x;
        while (buf.size() < cap && next(x)) buf.push_back(x);
        return buf.size();
    }

private:
    const std::vector<u128>* mem_ = nullptr;
    std::unique_ptr<RunReader> rd_;
    size_t pos_ = 0;
};

constexpr size_t kBlock = size_t{1} << 16;

BloomFilter filter_over(SetStream in, uint64_t n, double r, HashSeeds seeds, int threads) {
    if (n == 0) return BloomFilter(1, BloomFilter::hashes_for(r), seeds);
    BloomFilter f(BloomFilter::bits_for(n, r), BloomFilter::hashes_for(r), seeds);
    std::vector<u128> buf;
    while (in.fill(buf, kBlock)) {
        if (threads <= 1) {
            for (u128 x : buf) f.insert(x);
        } else {
            const long m = static_cast<long>(buf.size());
#pragma omp parallel for num_threads(threads) schedule(static)
            for (long i = 0; i < m; ++i) f.insert_concurrent(buf[static_cast<size_t>(i)]);
        }
    }
    f.set_inserted(n);
    return f;
}

// Writes {x in source : f accepts x} to a new run; returns the path.
std::string filter_stream(SetStream in, const BloomFilter& f, ScratchDir& dir, int threads, uint64_t& out_n) {
    std::string path = dir.new_file("T");
    RunWriter w(path);
    std::vector<u128> buf;
    std::vector<uint8_t> keep;
    while (in.fill(buf, kBlock)) {
        keep.assign(buf.size(), 0);
        const long m = static_cast<long>(buf.size());
#pragma omp parallel for num_threads(std::max(1, threads)) schedule(static) if (threads > 1)
        for (long i = 0; i < m; ++i) keep[static_cast<size_t>(i)] = f.query(buf[static_cast<size_t>(i)]) ? 1 : 0;
        for (size_t i = 0; i < buf.size(); ++i)
            if (keep[i]) w.put({buf[i], 1});
    }
    w.close();
    out_n = w.written();
    return path;
}

// T_1: canonical extensions of T_0 accepted by B_1, minus T_0.
std::string critical_false_positives(const std::vector<u128>& T0, int k, const BloomFilter& B1, ScratchDir& dir,
                                     const CascadeOptions& opts, uint64_t& out_n) {
    std::vector<std::string> runs;
    std::vector<u128> cand;
    const int threads = std::max(1, opts.threads);
    const size_t chunk = std::max<size_t>(1, opts.extension_buffer / 8);
    for (size_t base = 0; base < T0.size(); base += chunk) {
        const size_t end = std::min(T0.size(), base + chunk);
        std::vector<std::vector<u128>> local(static_cast<size_t>(threads));
#pragma omp parallel num_threads(threads) if (threads > 1)
        {
#ifdef _OPENMP
            auto& mine = local[static_cast<size_t>(omp_get_thread_num())];
#else
            auto& mine = local[0];
#endif
            u128 ext[8];
#pragma omp for schedule(static)
            for (long i = static_cast<long>(base); i < static_cast<long>(end); ++i) {
                canonical_extensions(T0[static_cast<size_t>(i)], k, ext);
                for (u128 e : ext)
                    if (B1.query(e) && !sorted_contains(T0, e)) mine.push_back(e);
            }
        }
        for (auto& l : local) cand.insert(cand.end(), l.begin(), l.end());
        if (cand.size() >= opts.extension_buffer) {
            runs.push_back(spill_sorted_run(cand, dir));
            cand.clear();
        }
    }
    if (!cand.empty()) runs.push_back(spill_sorted_run(cand, dir));
    std::string path = dir.new_file("T");
    RunWriter w(path);
    merge_runs(runs, dir, kMergeFanIn, [&](const KeyCount& kc) { w.put({kc.key, 1}); });
    w.close();
    out_n = w.written();
    return path;
}

// Every element of `sub` must occur in `super` (both sorted ascending).
void verify_subset(SetStream sub, SetStream super, const char* what) {
    u128 a, b;
    bool hb = super.next(b);
    while (sub.next(a)) {
        while (hb && b < a) hb = super.next(b);
        if (!hb || b != a) throw Error(std::string("cascade nesting violated: ") + what);
    }
}

}  // namespace

CascadingBloom build_cascade(const std::vector<u128>& T0, int k, const SizingPlan& plan, const CascadeOptions& opts) {
    if (plan.t < 1 || static_cast<int>(plan.r.size()) != plan.t) throw ConfigError("sizing plan needs t >= 1 ratios");
    if (k < 1 || k > kMaxK) throw ConfigError("k must be in [1, 64]");
    for (size_t i = 1; i < T0.size(); ++i)
        if (!(T0[i - 1] < T0[i])) throw ConfigError("solid set must be strictly ascending");

    ScratchDir dir(opts.scratch_dir);
    uint64_t seed_state = opts.seed;
    CascadingBloom c;
    c.k = k;
    c.t = plan.t;
    c.N = T0.size();
    c.r = plan.r;
    c.set_sizes.push_back(T0.size());

    // Paths of T_1..T_i on disk; index 0 is T_0 in memory.
    std::vector<std::string> paths(static_cast<size_t>(plan.t) + 1);
    auto stream_of = [&](int i) { return i == 0 ? SetStream(&T0) : SetStream(paths[static_cast<size_t>(i)]); };

    for (int i = 1; i <= plan.t; ++i) {
        HashSeeds seeds{splitmix64(seed_state), splitmix64(seed_state)};
        BloomFilter B = filter_over(stream_of(i - 1), c.set_sizes[static_cast<size_t>(i - 1)],
                                    plan.r[static_cast<size_t>(i - 1)], seeds, opts.threads);
        uint64_t n = 0;
        if (i == 1) {
            paths[1] = critical_false_positives(T0, k, B, dir, opts, n);
            if (opts.check_nesting) {
                SetStream s(paths[1]);
                u128 x;
                while (s.next(x))
                    if (sorted_contains(T0, x)) throw Error("cascade nesting violated: T0 and T1 intersect");
            }
        } else {
            paths[static_cast<size_t>(i)] = filter_stream(stream_of(i - 2), B, dir, opts.threads, n);
            if (opts.check_nesting)
                verify_subset(stream_of(i), stream_of(i - 2), i % 2 ? "odd level outside T1" : "even level outside T0");
        }
        c.set_sizes.push_back(n);
        c.filters.push_back(std::move(B));
    }

    c.final_table = PackedKmerArray(k);
    SetStream last = stream_of(plan.t);
    u128 x;
    while (last.next(x)) c.final_table.push_back(x);
    return c;
}

CascadingBloom build_cascade(const SolidSet& solid, const SizingPlan& plan, const CascadeOptions& opts) {
    return build_cascade(solid.keys(), solid.k, plan, opts);
}

std::vector<uint64_t> traversal_histogram(const CascadingBloom& c, const std::vector<u128>& T0, int threads) {
    const int nt = std::max(1, threads);
    std::vector<std::vector<uint64_t>> local(static_cast<size_t>(nt), std::vector<uint64_t>(c.t + 1, 0));
    const long n = static_cast<long>(T0.size());
#pragma omp parallel num_threads(nt) if (nt > 1)
    {
#ifdef _OPENMP
        auto& h = local[static_cast<size_t>(omp_get_thread_num())];
#else
        auto& h = local[0];
#endif
        u128 ext[8];
#pragma omp for schedule(static)
        for (long i = 0; i < n; ++i) {
            canonical_extensions(T0[static_cast<size_t>(i)], c.k, ext);
            for (u128 e : ext) ++h[static_cast<size_t>(c.query(e).level)];
        }
    }
    std::vector<uint64_t> out(static_cast<size_t>(c.t) + 1, 0);
    for (auto& h : local)
        for (size_t j = 0; j < out.size(); ++j) out[j] += h[j];
    return out;
}

// ---------------------------------------------------------------- serialization

namespace {
template <class T>
void put(std::ofstream& o, const T& v) {
    o.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <class T>
T get(std::ifstream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw IoError("truncated cascade file");
    return v;
}
void put_words(std::ofstream& o, const std::vector<uint64_t>& w) {
    put<uint64_t>(o, w.size());
    o.write(reinterpret_cast<const char*>(w.data()), static_cast<std::streamsize>(w.size() * 8));
}
std::vector<uint64_t> get_words(std::ifstream& in) {
    uint64_t n = get<uint64_t>(in);
    if (n > (uint64_t{1} << 40)) throw IoError("corrupt cascade file");
    std::vector<uint64_t> w(n);
    in.read(reinterpret_cast<char*>(w.data()), static_cast<std::streamsize>(n * 8));
    if (!in) throw IoError("truncated cascade file");
    return w;
}
}  // namespace

void CascadingBloom::save(const std::string& path) const {
    std::ofstream o(path, std::ios::binary);
    if (!o) throw IoError("cannot write " + path);
    o.write("CBF1", 4);
    put<uint32_t>(o, static_cast<uint32_t>(k));
    put<uint32_t>(o, static_cast<uint32_t>(t));
    put<uint64_t>(o, N);
    for (double x : r) put<double>(o, x);
    for (const auto& f : filters) {
        put<uint64_t>(o, f.seeds().s1);
        put<uint64_t>(o, f.seeds().s2);
    }
    for (uint64_t s : set_sizes) put<uint64_t>(o, s);
    for (const auto& f : filters) {
        put<uint64_t>(o, f.m());
        put<uint32_t>(o, static_cast<uint32_t>(f.p()));
        put<uint64_t>(o, f.inserted());
        put_words(o, f.words());
    }
    put<uint64_t>(o, final_table.size());
    put_words(o, final_table.words());
    if (!o) throw IoError("write failed: " + path);
}

CascadingBloom CascadingBloom::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "CBF1", 4) != 0) throw IoError("not a CBF1 file: " + path);
    CascadingBloom c;
    c.k = static_cast<int>(get<uint32_t>(in));
    c.t = static_cast<int>(get<uint32_t>(in));
    if (c.k < 1 || c.k > kMaxK || c.t < 1 || c.t > 64) throw IoError("corrupt cascade header");
    c.N = get<uint64_t>(in);
    for (int i = 0; i < c.t; ++i) c.r.push_back(get<double>(in));
    std::vector<HashSeeds> seeds(static_cast<size_t>(c.t));
    for (auto& s : seeds) {
        s.s1 = get<uint64_t>(in);
        s.s2 = get<uint64_t>(in);
    }
    for (int i = 0; i <= c.t; ++i) c.set_sizes.push_back(get<uint64_t>(in));
    for (int i = 0; i < c.t; ++i) {
        uint64_t m = get<uint64_t>(in);
        int p = static_cast<int>(get<uint32_t>(in));
        uint64_t n = get<uint64_t>(in);
        BloomFilter f(m, p, seeds[static_cast<size_t>(i)]);
        f.words() = get_words(in);
        if (f.words().size() != (m + 63) / 64) throw IoError("corrupt bitmap length");
        f.set_inserted(n);
        c.filters.push_back(std::move(f));
    }
    uint64_t n = get<uint64_t>(in);
    c.final_table = PackedKmerArray::from_words(c.k, n, get_words(in));
    return c;
}

}  // namespace bk
