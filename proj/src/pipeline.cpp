#include "bubblekit/pipeline.hpp"

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <exception>
#include <filesystem>
#include <fstream>
#include <memory>
#include <numeric>
#include <unordered_map>

#include <json.hpp>

#include "bubblekit/bcc.hpp"
#include "bubblekit/cascade.hpp"
#include "bubblekit/classify.hpp"
#include "bubblekit/errors.hpp"
#include "bubblekit/kmer_count.hpp"
#include "bubblekit/seqio.hpp"
#include "bubblekit/simple_bubbles.hpp"
#include "bubblekit/sizing.hpp"


namespace bk {
namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

uint64_t pair_key(uint32_t a, uint32_t b) {
    if (a > b) std::swap(a, b);
    return (static_cast<uint64_t>(a) << 32) | b;
}

// Underlying simple undirected graph of the node/arc structure; self arcs are skipped.
UGraph underlying(const BidirectedDBG& g, std::unordered_map<uint64_t, uint32_t>& edge_of) {
    UGraph u(static_cast<uint32_t>(g.nodes.size()));
    for (const BiArc& a : g.arcs) {
        if (a.from == a.to) continue;
        const uint64_t key = pair_key(a.from, a.to);
        if (edge_of.count(key)) continue;
        edge_of.emplace(key, u.add_edge(a.from, a.to));
    }
    return u;
}

BidirectedDBG induced_block(const BidirectedDBG& g, const std::vector<uint32_t>& verts, uint32_t block,
                            const BlockDecomposition& d, const std::unordered_map<uint64_t, uint32_t>& edge_of) {
    BidirectedDBG sub;
    sub.k = g.k;
    std::unordered_map<uint32_t, uint32_t> local;
    local.reserve(verts.size());
    for (uint32_t v : verts) {
        local.emplace(v, static_cast<uint32_t>(sub.nodes.size()));
        sub.nodes.push_back(g.nodes[v]);
    }
    for (const BiArc& a : g.arcs) {
        if (a.from == a.to) continue;
        auto it = edge_of.find(pair_key(a.from, a.to));
        if (d.edge_block[it->second] != block) continue;
        sub.arcs.push_back({local.at(a.from), local.at(a.to), a.label});
    }
    sub.index();
    return sub;
}

double path_coverage(const BidirectedDBG& g, const std::vector<uint32_t>& walk) {
    double num = 0, den = 0;
    for (size_t i = 1; i + 1 < walk.size(); ++i) {
        const BiNode& nd = g.nodes[SplitGraph::node_of(walk[i])];
        num += nd.coverage * nd.kmers;
        den += nd.kmers;
    }
    if (den > 0) return num / den;
    const BiNode& a = g.nodes[SplitGraph::node_of(walk.front())];
    const BiNode& b = g.nodes[SplitGraph::node_of(walk.back())];
    return (a.coverage + b.coverage) / 2;
}

std::vector<uint32_t> mirror_walk(const std::vector<uint32_t>& p) {
    std::vector<uint32_t> r(p.rbegin(), p.rend());
    for (auto& x : r) x ^= 1u;
    return r;
}

using WalkPair = std::pair<std::vector<uint32_t>, std::vector<uint32_t>>;

WalkPair ordered_pair(std::vector<uint32_t> a, std::vector<uint32_t> b) {
    if (b < a) std::swap(a, b);
    return {std::move(a), std::move(b)};
}

bool touches_both_strands(const Bubble& b) {
    std::vector<uint32_t> all(b.path1);
    all.insert(all.end(), b.path2.begin() + 1, b.path2.end() - 1);
    std::sort(all.begin(), all.end());
    for (size_t i = 1; i < all.size(); ++i)
        if ((all[i] >> 1) == (all[i - 1] >> 1)) return true;
    return false;
}

struct BccOutcome {
    BccSummary summary;
    std::vector<CalledBubble> bubbles;
};

BccOutcome process_bcc(const BidirectedDBG& sub, uint32_t bcc_index, const PipelineConfig& cfg) {
    const auto t0 = Clock::now();
    BccOutcome out;
    out.summary.index = bcc_index;
    out.summary.nodes = static_cast<uint32_t>(sub.nodes.size());
    out.summary.arcs = static_cast<uint32_t>(sub.arcs.size());
    const uint64_t cap = cfg.max_bubbles;
    const int k = cfg.k;
    const Weight k1 = k - 1;
    const ClassifyOptions copts{cfg.repeat_identity};
    auto full = [&] { return cap != 0 && out.bubbles.size() >= cap; };

    std::vector<SnpCandidate> snps;
    BidirectedDBG simp = cfg.simple_bubbles ? compress_simple_bubbles(sub, &snps) : sub;
    for (const SnpCandidate& c : snps) {
        if (full()) {
            out.summary.truncated = true;
            break;
        }
        CalledBubble cb;
        cb.bcc = bcc_index;
        cb.index = static_cast<uint32_t>(out.bubbles.size());
        cb.seq1 = c.allele1;
        cb.seq2 = c.allele2;
        cb.len1 = c.allele1.size();
        cb.len2 = c.allele2.size();
        cb.cls = classify_sequences(cb.seq1, cb.seq2, k, copts);
        cb.cov1 = c.coverage1;
        cb.cov2 = c.coverage2;
        cb.from_simple = true;
        out.bubbles.push_back(std::move(cb));
        ++out.summary.snps;
    }

    const SplitGraph split = split_bidirected(simp, WeightMode::Source);
    const Weight alpha1 = cfg.alpha1, alpha2 = cfg.resolved_alpha2(), beta = cfg.resolved_beta();
    const bool timed = cfg.timeout_s > 0;
    const auto deadline = t0 + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(cfg.timeout_s));

    for (uint32_t s = 0; s < split.g.n() && !out.summary.truncated; ++s) {
        if (split.g.out(s).size() < 2) continue;
        double remaining = 0;
        if (timed) {
            remaining = std::chrono::duration<double>(deadline - Clock::now()).count();
            if (remaining <= 0) {
                out.summary.truncated = true;
                break;
            }
        }
        // Internal length L = w - len(s) + 2(k-1), so bounds on L shift by the same offset.
        const Weight shift = static_cast<Weight>(split.seq_len[s]) - 2 * k1;
        BubbleConstraints c;
        c.alpha1 = alpha1 + shift;
        c.alpha2 = alpha2 + shift;
        c.beta = std::max<Weight>(0, beta + shift);
        c.timeout_s = remaining;
        bool stopped = false;
        BubbleSink sink = [&](const Bubble& b) {
            WalkPair key = ordered_pair(b.path1, b.path2);
            WalkPair mir = ordered_pair(mirror_walk(b.path1), mirror_walk(b.path2));
            if (mir < key) return true;  // reported from the reverse-complement source
            if (full()) {
                stopped = true;
                return false;
            }
            const Weight L1 = b.len1 - shift, L2 = b.len2 - shift;
            if (!is_bubble(split.g, b) || L1 > alpha1 || L2 > alpha2 || L2 < beta)
                throw Error("enumerated bubble violates its constraints");
            CalledBubble cb;
            cb.bcc = bcc_index;
            cb.index = static_cast<uint32_t>(out.bubbles.size());
            cb.seq1 = internal_sequence(simp, b.path1);
            cb.seq2 = internal_sequence(simp, b.path2);
            cb.len1 = cb.seq1.size();
            cb.len2 = cb.seq2.size();
            cb.cls = classify_bubble(b, simp, copts);
            cb.cov1 = path_coverage(simp, b.path1);
            cb.cov2 = path_coverage(simp, b.path2);
            cb.strand_inconsistent = touches_both_strands(b);
            out.bubbles.push_back(std::move(cb));
            ++out.summary.enumerated;
            return true;
        };
        EnumResult r = list_bounded_bubbles(split.g, s, c, sink);
        if (stopped || r.truncated) out.summary.truncated = true;
    }
    out.summary.seconds = since(t0);
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream o(path, std::ios::binary);
    if (!o) throw IoError("cannot write " + path);
    o << text;
}

}  // namespace

long peak_rss_kb() {
    rusage ru{};
    getrusage(RUSAGE_SELF, &ru);
    return ru.ru_maxrss;
}

std::vector<CalledBubble> call_bubbles(const BidirectedDBG& cdbg, const PipelineConfig& cfg, RunReport& report) {
    std::unordered_map<uint64_t, uint32_t> edge_of;
    UGraph und = underlying(cdbg, edge_of);
    BlockDecomposition d = bcc_decompose(und);

    std::vector<uint32_t> kept;
    for (uint32_t b = 0; b < d.count(); ++b) {
        const uint32_t nv = static_cast<uint32_t>(d.block_vertices[b].size());
        ++report.bcc_size_histogram[nv];
        if (nv >= 4) kept.push_back(b);
    }

    // Largest blocks first so a giant one starts early.
    std::vector<uint32_t> order(kept.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
        return d.block_edges[kept[a]].size() > d.block_edges[kept[b]].size();
    });

    std::vector<BccOutcome> results(kept.size());
    std::exception_ptr failure;
    const int64_t jobs = static_cast<int64_t>(order.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(cfg.threads)
    for (int64_t j = 0; j < jobs; ++j) {
        const uint32_t i = order[j];
        try {
            BidirectedDBG sub = induced_block(cdbg, d.block_vertices[kept[i]], kept[i], d, edge_of);
            results[i] = process_bcc(sub, i, cfg);
        } catch (...) {
#pragma omp critical(bk_pipeline_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<CalledBubble> all;
    for (auto& r : results) {
        report.bccs.push_back(r.summary);
        if (r.summary.truncated) {
            report.truncated_bccs.push_back(r.summary.index);
            report.truncated = true;
        }
        for (auto& b : r.bubbles) {
            ++report.class_counts[to_string(b.cls)];
            all.push_back(std::move(b));
        }
    }
    return all;
}

void write_bubbles_fasta(const std::string& path, const std::vector<CalledBubble>& bubbles) {
    std::vector<SeqRecord> recs;
    recs.reserve(2 * bubbles.size());
    for (const auto& b : bubbles) {
        const std::string head = "bcc_" + std::to_string(b.bcc) + "|bubble_" + std::to_string(b.index) + "|type_" +
                                 to_string(b.cls) + "|len_" + std::to_string(b.len1) + "_" + std::to_string(b.len2) +
                                 "|path_";
        recs.push_back({head + "1", b.seq1});
        recs.push_back({head + "2", b.seq2});
    }
    write_fasta(path, recs);
}

void write_bubbles_tsv(const std::string& path, const std::vector<CalledBubble>& bubbles) {
    std::ofstream o(path);
    if (!o) throw IoError("cannot write " + path);
    o << "bcc\tbubble\ttype\tlen1\tlen2\tcov1\tcov2\tstrand_inconsistent\torigin\tseq1\tseq2\n";
    char buf[64];
    for (const auto& b : bubbles) {
        o << b.bcc << '\t' << b.index << '\t' << to_string(b.cls) << '\t' << b.len1 << '\t' << b.len2 << '\t';
        std::snprintf(buf, sizeof buf, "%.3f\t%.3f", b.cov1, b.cov2);
        o << buf << '\t' << (b.strand_inconsistent ? 1 : 0) << '\t' << (b.from_simple ? "simple" : "enumerated")
          << '\t' << b.seq1 << '\t' << b.seq2 << '\n';
    }
}

std::string report_json(const RunReport& r, const PipelineConfig& cfg, bool include_timing) {
    nlohmann::ordered_json j;
    j["config"] = {{"k", cfg.k},
                   {"min_abundance", cfg.min_abundance},
                   {"t", cfg.t},
                   {"sizing", to_string(cfg.sizing)},
                   {"use_cascade", cfg.use_cascade},
                   {"alpha1", cfg.alpha1},
                   {"alpha2", cfg.resolved_alpha2()},
                   {"beta", cfg.resolved_beta()},
                   {"max_bubbles", cfg.max_bubbles},
                   {"timeout_s", cfg.timeout_s},
                   {"seed", cfg.seed}};
    j["reads"] = r.reads;
    j["solid_kmers"] = r.solid_kmers;
    j["bits_per_kmer"] = r.bits_per_kmer;
    j["predicted_bits_per_kmer"] = r.predicted_bits_per_kmer;
    j["cascade_set_sizes"] = r.cascade_set_sizes;
    j["query_histogram"] = r.query_histogram;
    j["dbg"] = {{"nodes", r.dbg_nodes}, {"arcs", r.dbg_arcs}};
    j["cdbg"] = {{"nodes", r.cdbg_nodes}, {"arcs", r.cdbg_arcs}};
    auto& hist = j["bcc_size_histogram"] = nlohmann::ordered_json::object();
    for (auto [size, count] : r.bcc_size_histogram) hist[std::to_string(size)] = count;
    auto& bccs = j["bccs"] = nlohmann::ordered_json::array();
    for (const auto& b : r.bccs) {
        nlohmann::ordered_json e = {{"index", b.index},         {"nodes", b.nodes},
                                    {"arcs", b.arcs},           {"snps", b.snps},
                                    {"enumerated", b.enumerated}, {"truncated", b.truncated}};
        if (include_timing) e["seconds"] = b.seconds;
        bccs.push_back(std::move(e));
    }
    auto& cls = j["class_counts"] = nlohmann::ordered_json::object();
    for (BubbleClass c : {BubbleClass::AS, BubbleClass::SNP, BubbleClass::Indel, BubbleClass::Repeat,
                          BubbleClass::Unclassified}) {
        auto it = r.class_counts.find(to_string(c));
        cls[to_string(c)] = it == r.class_counts.end() ? 0 : it->second;
    }
    j["truncated_bccs"] = r.truncated_bccs;
    j["truncated"] = r.truncated;
    if (include_timing) {
        j["stage_seconds"] = r.stage_seconds;
        j["peak_rss_kb"] = r.peak_rss_kb;
    }
    return j.dump(2) + "\n";
}

namespace {

PipelineResult run_from_solid(const SolidSet& solid, const SolidSet* kplus1, const PipelineConfig& cfg,
                              RunReport report, const std::string& out_dir) {
    PipelineResult res;
    const bool write = !out_dir.empty();
    if (write) {
        std::filesystem::create_directories(out_dir);
        save_solid(out_dir + "/solid.kmc", solid);
        write_text(out_dir + "/config.txt", config_to_text(cfg));
    }
    report.solid_kmers = solid.size();

    BidirectedDBG dbg;
    dbg.k = cfg.k;
    if (solid.size() > 0) {
        auto t0 = Clock::now();
        if (cfg.use_cascade) {
            const SizingPlan plan = plan_sizing(cfg.t, cfg.k, cfg.sizing);
            CascadeOptions co;
            co.scratch_dir = cfg.scratch_dir;
            co.seed = cfg.seed;
            co.threads = cfg.threads;
            const std::vector<u128> keys = solid.keys();
            CascadingBloom c = build_cascade(keys, cfg.k, plan, co);
            report.bits_per_kmer = c.bits_per_kmer();
            report.predicted_bits_per_kmer = plan.predicted_bits_per_kmer;
            report.cascade_set_sizes = c.set_sizes;
            report.query_histogram = traversal_histogram(c, keys, cfg.threads);
            if (write) c.save(out_dir + "/cascade.cbf");
            report.stage_seconds["cascade"] = since(t0);
            t0 = Clock::now();
            std::vector<uint32_t> counts;
            counts.reserve(solid.size());
            for (const auto& r : solid.records) counts.push_back(r.count);
            dbg = build_dbg(c, keys, &counts);
        } else {
            DbgBuildOptions o;
            o.confirm_with_kplus1 = cfg.confirm_kplus1;
            dbg = build_dbg(solid, kplus1, o);
        }
        report.stage_seconds["dbg"] = since(t0);
    }
    report.dbg_nodes = dbg.nodes.size();
    report.dbg_arcs = dbg.arcs.size();

    auto t0 = Clock::now();
    res.cdbg = dbg.nodes.empty() ? dbg : compress(dbg);
    report.cdbg_nodes = res.cdbg.nodes.size();
    report.cdbg_arcs = res.cdbg.arcs.size();
    report.stage_seconds["compress"] = since(t0);
    if (write) write_dbg_tsv(res.cdbg, out_dir + "/cdbg.nodes.tsv", out_dir + "/cdbg.arcs.tsv");

    t0 = Clock::now();
    res.bubbles = call_bubbles(res.cdbg, cfg, report);
    report.stage_seconds["bubbles"] = since(t0);

    report.peak_rss_kb = peak_rss_kb();
    if (write) {
        write_bubbles_fasta(out_dir + "/bubbles.fa", res.bubbles);
        write_bubbles_tsv(out_dir + "/bubbles.tsv", res.bubbles);
        write_text(out_dir + "/report.json", report_json(report, cfg));
    }
    res.report = std::move(report);
    return res;
}

CountOptions count_options(const PipelineConfig& cfg, int k) {
    CountOptions o;
    o.k = k;
    o.min_abundance = cfg.min_abundance;
    o.memory_budget = cfg.memory_budget;
    o.scratch_dir = cfg.scratch_dir;
    return o;
}

bool wants_kplus1(const PipelineConfig& cfg) { return !cfg.use_cascade && cfg.confirm_kplus1 && cfg.k < 63; }

}  // namespace

PipelineResult run_pipeline_sequences(const std::vector<std::string>& reads, const PipelineConfig& cfg) {
    validate_config(cfg);
    RunReport report;
    report.reads = reads.size();
    auto t0 = Clock::now();
    SolidSet solid = count_kmers(reads, count_options(cfg, cfg.k));
    SolidSet kp1;
    if (wants_kplus1(cfg)) kp1 = count_kmers(reads, count_options(cfg, cfg.k + 1));
    report.stage_seconds["count"] = since(t0);
    return run_from_solid(solid, wants_kplus1(cfg) ? &kp1 : nullptr, cfg, std::move(report), cfg.out_dir);
}

PipelineResult run_pipeline(const PipelineConfig& cfg) {
    validate_config(cfg);
    if (cfg.out_dir.empty()) throw ConfigError("an output directory is required");
    RunReport report;
    auto t0 = Clock::now();
    const bool extra = wants_kplus1(cfg);
    KmerCounter counter(count_options(cfg, cfg.k));
    std::unique_ptr<KmerCounter> counter1;
    if (extra) counter1 = std::make_unique<KmerCounter>(count_options(cfg, cfg.k + 1));
    for (const auto& p : cfg.reads) {
        SequenceReader reader(p);
        SeqRecord rec;
        while (reader.next(rec)) {
            ++report.reads;
            counter.add_sequence(rec.seq);
            if (extra) counter1->add_sequence(rec.seq);
        }
    }
    SolidSet solid = counter.finish();
    SolidSet kp1;
    if (extra) kp1 = counter1->finish();
    report.stage_seconds["count"] = since(t0);
    return run_from_solid(solid, extra ? &kp1 : nullptr, cfg, std::move(report), cfg.out_dir);
}

}  // namespace bk
