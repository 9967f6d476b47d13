#pragma once
// FASTA / FASTQ reader; gzip input is detected transparently by zlib.

#include <memory>
#include <string>
#include <vector>

namespace bk {

struct SeqRecord {
    std::string name;
    std::string seq;
};

class SequenceReader {
public:
    explicit SequenceReader(const std::string& path);
    ~SequenceReader();
    SequenceReader(const SequenceReader&) = delete;
    SequenceReader& operator=(const SequenceReader&) = delete;

    // Returns false at end of input. Throws IoError on malformed input.
    bool next(SeqRecord& rec);

private:
    bool read_line(std::string& line);

    struct Impl;
    std::unique_ptr<Impl> impl_;
};

std::vector<std::string> read_all_sequences(const std::string& path);

void write_fasta(const std::string& path, const std::vector<SeqRecord>& records);

}  // namespace bk
