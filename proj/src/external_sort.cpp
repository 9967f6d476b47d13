#include "bubblekit/external_sort.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <queue>

#include "bubblekit/errors.hpp"

namespace bk {

namespace {
std::atomic<uint64_t> g_scratch_serial{0};
constexpr size_t kRecordBytes = 20;

void encode_record(const KeyCount& kc, unsigned char* p) {
    uint64_t lo = static_cast<uint64_t>(kc.key);
    uint64_t hi = static_cast<uint64_t>(kc.key >> 64);
    for (int i = 0; i < 8; ++i) p[i] = static_cast<unsigned char>(lo >> (8 * i));
    for (int i = 0; i < 8; ++i) p[8 + i] = static_cast<unsigned char>(hi >> (8 * i));
    for (int i = 0; i < 4; ++i) p[16 + i] = static_cast<unsigned char>(kc.count >> (8 * i));
}

KeyCount decode_record(const unsigned char* p) {
    uint64_t lo = 0, hi = 0;
    uint32_t c = 0;
    for (int i = 7; i >= 0; --i) lo = (lo << 8) | p[i];
    for (int i = 7; i >= 0; --i) hi = (hi << 8) | p[8 + i];
    for (int i = 3; i >= 0; --i) c = (c << 8) | p[16 + i];
    return {(static_cast<u128>(hi) << 64) | lo, c};
}
}  // namespace

ScratchDir::ScratchDir(const std::string& base) {
    std::filesystem::path root = base.empty() ? std::filesystem::temp_directory_path()
                                              : std::filesystem::path(base);
    dir_ = root / ("bubblekit-" + std::to_string(::getpid()) + "-" +
                   std::to_string(g_scratch_serial.fetch_add(1)));
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create scratch directory " + dir_.string());
}

ScratchDir::~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
}

std::string ScratchDir::new_file(const std::string& stem) {
    return (dir_ / (stem + "-" + std::to_string(counter_++) + ".bin")).string();
}

RunWriter::RunWriter(const std::string& path) : path_(path) {
    fp_ = std::fopen(path.c_str(), "wb");
    if (!fp_) throw IoError("cannot write " + path);
    std::setvbuf(fp_, nullptr, _IOFBF, 1 << 16);
}

RunWriter::~RunWriter() {
    if (fp_) std::fclose(fp_);
}

void RunWriter::put(const KeyCount& kc) {
    unsigned char rec[kRecordBytes];
    encode_record(kc, rec);
    if (std::fwrite(rec, 1, kRecordBytes, fp_) != kRecordBytes) throw IoError("short write to " + path_);
    ++n_;
}

void RunWriter::close() {
    if (fp_ && std::fclose(fp_) != 0) {
        fp_ = nullptr;
        throw IoError("cannot close " + path_);
    }
    fp_ = nullptr;
}

RunReader::RunReader(const std::string& path) : path_(path) {
    fp_ = std::fopen(path.c_str(), "rb");
    if (!fp_) throw IoError("cannot read " + path);
    std::setvbuf(fp_, nullptr, _IOFBF, 1 << 16);
}

RunReader::RunReader(RunReader&& o) noexcept : fp_(o.fp_), path_(std::move(o.path_)) { o.fp_ = nullptr; }

RunReader::~RunReader() {
    if (fp_) std::fclose(fp_);
}

bool RunReader::next(KeyCount& kc) {
    unsigned char rec[kRecordBytes];
    size_t got = std::fread(rec, 1, kRecordBytes, fp_);
    if (got == 0) return false;
    if (got != kRecordBytes) throw IoError("truncated run file " + path_);
    kc = decode_record(rec);
    return true;
}

void write_run(const std::string& path, const std::vector<KeyCount>& run) {
    RunWriter w(path);
    for (const auto& kc : run) w.put(kc);
    w.close();
}

std::string spill_sorted_run(std::vector<u128>& keys, ScratchDir& dir) {
    std::sort(keys.begin(), keys.end());
    std::string path = dir.new_file();
    RunWriter w(path);
    for (size_t i = 0; i < keys.size();) {
        size_t j = i;
        while (j < keys.size() && keys[j] == keys[i]) ++j;
        w.put({keys[i], static_cast<uint32_t>(j - i)});
        i = j;
    }
    w.close();
    keys.clear();
    return path;
}

namespace {

void merge_group(const std::vector<std::string>& files, const std::function<void(const KeyCount&)>& sink) {
    std::vector<RunReader> readers;
    readers.reserve(files.size());
    for (const auto& f : files) readers.emplace_back(f);
    struct Head {
        KeyCount kc;
        size_t src;
    };
    auto cmp = [](const Head& a, const Head& b) {
        return a.kc.key != b.kc.key ? a.kc.key > b.kc.key : a.src > b.src;
    };
    std::priority_queue<Head, std::vector<Head>, decltype(cmp)> heap(cmp);
    for (size_t i = 0; i < readers.size(); ++i) {
        KeyCount kc;
        if (readers[i].next(kc)) heap.push({kc, i});
    }
    bool have = false;
    KeyCount cur{0, 0};
    while (!heap.empty()) {
        Head h = heap.top();
        heap.pop();
        if (have && h.kc.key == cur.key) {
            uint64_t sum = static_cast<uint64_t>(cur.count) + h.kc.count;
            cur.count = sum > UINT32_MAX ? UINT32_MAX : static_cast<uint32_t>(sum);
        } else {
            if (have) sink(cur);
            cur = h.kc;
            have = true;
        }
        KeyCount nx;
        if (readers[h.src].next(nx)) heap.push({nx, h.src});
    }
    if (have) sink(cur);
}

}  // namespace

void merge_runs(std::vector<std::string> runs, ScratchDir& dir, size_t fan_in,
                const std::function<void(const KeyCount&)>& sink) {
    if (fan_in < 2) fan_in = 2;
    size_t head = 0;
    while (runs.size() - head > fan_in) {
        std::vector<std::string> group(runs.begin() + static_cast<long>(head),
                                       runs.begin() + static_cast<long>(head + fan_in));
        head += fan_in;
        std::string out = dir.new_file("merge");
        RunWriter w(out);
        merge_group(group, [&](const KeyCount& kc) { w.put(kc); });
        w.close();
        for (const auto& f : group) std::filesystem::remove(f);
        runs.push_back(out);
    }
    std::vector<std::string> last(runs.begin() + static_cast<long>(head), runs.end());
    merge_group(last, sink);
}

}  // namespace bk
