#include "bubblekit/seqio.hpp"

#include <zlib.h>

#include <fstream>

#include "bubblekit/errors.hpp"

namespace bk {

struct SequenceReader::Impl {
    gzFile fp = nullptr;
    std::string path;
    std::string pending;  // header line read ahead while scanning multi-line FASTA
    bool has_pending = false;
    std::vector<char> buf = std::vector<char>(1 << 16);
};

SequenceReader::SequenceReader(const std::string& path) : impl_(std::make_unique<Impl>()) {
    impl_->path = path;
    impl_->fp = gzopen(path.c_str(), "rb");
    if (!impl_->fp) throw IoError("cannot open " + path);
    gzbuffer(impl_->fp, 1 << 17);
}

SequenceReader::~SequenceReader() {
    if (impl_ && impl_->fp) gzclose(impl_->fp);
}

bool SequenceReader::read_line(std::string& line) {
    line.clear();
    auto& buf = impl_->buf;
    bool got = false;
    while (gzgets(impl_->fp, buf.data(), static_cast<int>(buf.size())) != nullptr) {
        got = true;
        line.append(buf.data());
        if (!line.empty() && line.back() == '\n') break;
    }
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.pop_back();
    return got;
}

bool SequenceReader::next(SeqRecord& rec) {
    std::string line;
    if (impl_->has_pending) {
        line = std::move(impl_->pending);
        impl_->has_pending = false;
    } else {
        do {
            if (!read_line(line)) return false;
        } while (line.empty());
    }
    rec.seq.clear();
    if (line[0] == '>') {
        rec.name = line.substr(1);
        std::string l;
        while (read_line(l)) {
            if (!l.empty() && l[0] == '>') {
                impl_->pending = std::move(l);
                impl_->has_pending = true;
                break;
            }
            rec.seq += l;
        }
        return true;
    }
    if (line[0] == '@') {
        rec.name = line.substr(1);
        std::string plus, qual;
        if (!read_line(rec.seq) || !read_line(plus) || !read_line(qual))
            throw IoError("truncated FASTQ record in " + impl_->path);
        if (plus.empty() || plus[0] != '+') throw IoError("malformed FASTQ record in " + impl_->path);
        return true;
    }
    throw IoError("unrecognised sequence format in " + impl_->path);
}

std::vector<std::string> read_all_sequences(const std::string& path) {
    SequenceReader r(path);
    std::vector<std::string> out;
    SeqRecord rec;
    while (r.next(rec)) out.push_back(std::move(rec.seq));
    return out;
}

void write_fasta(const std::string& path, const std::vector<SeqRecord>& records) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    for (const auto& r : records) out << '>' << r.name << '\n' << r.seq << '\n';
}

}  // namespace bk
