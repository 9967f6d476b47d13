#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bubblekit/graph.hpp"
#include "bubblekit/sizing.hpp"

namespace bk {

struct PipelineConfig {
    std::vector<std::string> reads;  // FASTA/FASTQ paths (gzip allowed)
    std::string out_dir = "bubblekit_out";
    std::string scratch_dir;

    int k = 31;
    uint32_t min_abundance = 3;
    int t = 4;
    SizingMode sizing = SizingMode::SingleR;
    bool use_cascade = true;      // answer DBG neighbourhood queries with the cascade
    bool confirm_kplus1 = true;   // exact graphs only: demand a solid (k+1)-mer per arc
    bool simple_bubbles = true;   // collapse 4-node SNP patterns before enumeration

    Weight alpha1 = 1000;
    std::optional<Weight> alpha2;  // unset = 2k-2
    std::optional<Weight> beta;    // unset = max(0, 2k-8)
    uint64_t max_bubbles = 10000;  // per BCC, 0 = unlimited
    double timeout_s = 900;        // per BCC, 0 = unlimited
    double repeat_identity = 0.80;

    uint64_t seed = 0x5EED5EEDULL;
    int threads = 1;
    size_t memory_budget = size_t{256} << 20;

    Weight resolved_alpha2() const { return alpha2.value_or(2 * static_cast<Weight>(k) - 2); }
    Weight resolved_beta() const {
        return beta.value_or(std::max<Weight>(0, 2 * static_cast<Weight>(k) - 8));
    }
};

// Sets one field from its textual key (the same names the config file uses). Throws ConfigError.
void apply_config_value(PipelineConfig& cfg, const std::string& key, const std::string& value);

// Flat key=value text; blank lines and '#' comments are ignored.
void apply_config_text(PipelineConfig& cfg, const std::string& text);
void load_config_file(PipelineConfig& cfg, const std::string& path);

// Every key with its current value, loadable by apply_config_text.
std::string config_to_text(const PipelineConfig& cfg);

// Range checks plus alpha2 <= alpha1 and beta <= alpha2 after resolving the auto values.
void validate_config(const PipelineConfig& cfg);

// "auto" maps to nullopt.
std::optional<Weight> parse_auto_weight(const std::string& s);

}  // namespace bk
