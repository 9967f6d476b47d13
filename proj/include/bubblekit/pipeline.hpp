#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bubblekit/bubbles.hpp"
#include "bubblekit/config.hpp"
#include "bubblekit/dbg.hpp"

namespace bk {

struct CalledBubble {
    uint32_t bcc = 0;    // index among the retained BCCs
    uint32_t index = 0;  // running number inside its BCC
    BubbleClass cls = BubbleClass::Unclassified;
    std::string seq1, seq2;  // internal sequences; seq1 is the longer one
    uint64_t len1 = 0, len2 = 0;
    double cov1 = 0, cov2 = 0;  // k-mer weighted mean count of each path's internal nodes
    bool strand_inconsistent = false;
    bool from_simple = false;  // produced by simple-bubble compression rather than enumeration
};

struct BccSummary {
    uint32_t index = 0;
    uint32_t nodes = 0;  // before simple-bubble compression
    uint32_t arcs = 0;
    uint64_t snps = 0;
    uint64_t enumerated = 0;
    bool truncated = false;
    double seconds = 0;
};

struct RunReport {
    // Non-deterministic measurements.
    std::map<std::string, double> stage_seconds;
    long peak_rss_kb = 0;

    uint64_t reads = 0;
    uint64_t solid_kmers = 0;
    double bits_per_kmer = 0;            // 0 when the cascade is not built
    double predicted_bits_per_kmer = 0;
    std::vector<uint64_t> cascade_set_sizes;
    std::vector<uint64_t> query_histogram;  // per resolving level, traversal mix
    uint64_t dbg_nodes = 0, dbg_arcs = 0;
    uint64_t cdbg_nodes = 0, cdbg_arcs = 0;
    std::map<uint32_t, uint64_t> bcc_size_histogram;  // vertex count -> number of BCCs (all BCCs)
    std::vector<BccSummary> bccs;                     // retained BCCs only
    std::map<std::string, uint64_t> class_counts;
    std::vector<uint32_t> truncated_bccs;
    bool truncated = false;
};

struct PipelineResult {
    RunReport report;
    std::vector<CalledBubble> bubbles;
    BidirectedDBG cdbg;
};

// Steps after the compacted graph exists: BCC split, per-BCC simple-bubble compression,
// bounded enumeration, classification and coverage. Fills the BCC parts of `report`.
std::vector<CalledBubble> call_bubbles(const BidirectedDBG& cdbg, const PipelineConfig& cfg, RunReport& report);

// In-memory sequences; writes artifacts only when cfg.out_dir is non-empty.
PipelineResult run_pipeline_sequences(const std::vector<std::string>& reads, const PipelineConfig& cfg);

// Reads cfg.reads from disk and always writes artifacts under cfg.out_dir.
PipelineResult run_pipeline(const PipelineConfig& cfg);

void write_bubbles_fasta(const std::string& path, const std::vector<CalledBubble>& bubbles);
void write_bubbles_tsv(const std::string& path, const std::vector<CalledBubble>& bubbles);

// include_timing=false drops wall times and memory so two runs can be compared byte for byte.
std::string report_json(const RunReport& r, const PipelineConfig& cfg, bool include_timing = true);

long peak_rss_kb();

}  // namespace bk
