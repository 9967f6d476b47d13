#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <regex>
#include <sstream>

#include "bubblekit/config.hpp"
#include "bubblekit/errors.hpp"
#include "bubblekit/kmer.hpp"
#include "bubblekit/kmer_count.hpp"
#include "bubblekit/pipeline.hpp"

using namespace bk;
namespace fs = std::filesystem;

namespace {

std::string random_dna(std::mt19937_64& rng, size_t n) {
    std::string s(n, 'A');
    for (auto& c : s) c = "ACGT"[rng() % 4];
    return s;
}

size_t lcp(const std::string& x, const std::string& y) {
    size_t i = 0;
    while (i < x.size() && i < y.size() && x[i] == y[i]) ++i;
    return i;
}

size_t lcs(const std::string& x, const std::string& y) {
    size_t i = 0;
    while (i < x.size() && i < y.size() && x[x.size() - 1 - i] == y[y.size() - 1 - i]) ++i;
    return i;
}

PipelineConfig mem_config(int k = 31) {
    PipelineConfig c;
    c.k = k;
    c.min_abundance = 1;
    c.out_dir.clear();
    return c;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path p;
    TempDir() : p(fs::temp_directory_path() / ("bk_pipe_" + std::to_string(std::random_device{}()))) {
        fs::create_directories(p);
    }
    ~TempDir() { fs::remove_all(p); }
};

}  // namespace

TEST_CASE("config text: keys, comments, round trip") {
    PipelineConfig c;
    apply_config_text(c, "# comment\nk = 25\n\nd=2\nalpha2 = auto\nlower = 4\nreads = a.fa,b.fq.gz\nthreads=3\n");
    CHECK(c.k == 25);
    CHECK(c.min_abundance == 2);
    CHECK_FALSE(c.alpha2.has_value());
    CHECK(c.resolved_alpha2() == 48);
    CHECK(c.resolved_beta() == 4);
    CHECK(c.reads == std::vector<std::string>{"a.fa", "b.fq.gz"});
    CHECK(c.threads == 3);
    PipelineConfig back;
    apply_config_text(back, config_to_text(c));
    CHECK(config_to_text(back) == config_to_text(c));
    CHECK_THROWS_AS(apply_config_value(c, "colour", "blue"), ConfigError);
    CHECK_THROWS_AS(apply_config_value(c, "k", "many"), ConfigError);
    CHECK_THROWS_AS(load_config_file(c, "/nonexistent/bk.conf"), Error);
    CHECK(parse_auto_weight("auto") == std::nullopt);
    CHECK(parse_auto_weight("17") == 17);
}

TEST_CASE("config validation") {
    PipelineConfig ok;
    CHECK_NOTHROW(validate_config(ok));
    CHECK(ok.resolved_alpha2() == 60);
    CHECK(ok.resolved_beta() == 54);
    auto bad = [](auto&& edit) {
        PipelineConfig c;
        edit(c);
        CHECK_THROWS_AS(validate_config(c), ConfigError);
    };
    bad([](PipelineConfig& c) { c.k = 2; });
    bad([](PipelineConfig& c) { c.k = 64; });
    bad([](PipelineConfig& c) { c.t = 3; });
    bad([](PipelineConfig& c) { c.min_abundance = 0; });
    bad([](PipelineConfig& c) { c.threads = 0; });
    bad([](PipelineConfig& c) { c.alpha1 = 10; });  // auto alpha2 = 60 exceeds it
    bad([](PipelineConfig& c) { c.beta = 70; });
    bad([](PipelineConfig& c) { c.repeat_identity = 1.5; });
    bad([](PipelineConfig& c) { c.timeout_s = -1; });
    PipelineConfig small;
    small.k = 3;
    CHECK(small.resolved_beta() == 0);
}

TEST_CASE("a skipped exon gives exactly one AS bubble of predictable length") {
    std::mt19937_64 rng(41);
    for (int it = 0; it < 12; ++it) {
        const int k = 31;
        const std::string a = random_dna(rng, 150), b = random_dna(rng, 150);
        const std::string s = random_dna(rng, 60 + rng() % 120);
        PipelineConfig cfg = mem_config(k);
        cfg.use_cascade = it % 2 == 0;
        cfg.confirm_kplus1 = false;
        PipelineResult r = run_pipeline_sequences({a + s + b, a + b}, cfg);
        REQUIRE(r.bubbles.size() == 1);
        const CalledBubble& cb = r.bubbles[0];
        CHECK(cb.cls == BubbleClass::AS);
        CHECK_FALSE(cb.from_simple);
        const size_t want2 = 2 * k - 2 - lcp(s, b) - lcs(s, a);
        CHECK(cb.len2 == want2);
        CHECK(cb.len1 == want2 + s.size());
        CHECK(cb.seq1.size() == cb.len1);
        CHECK(r.report.class_counts["AS"] == 1);
    }
}

TEST_CASE("a substitution gives one SNP from the simple-bubble pass") {
    std::mt19937_64 rng(42);
    for (int it = 0; it < 8; ++it) {
        const int k = 21;
        const std::string a = random_dna(rng, 300);
        std::string b = a;
        b[150] = b[150] == 'C' ? 'T' : 'C';
        PipelineConfig cfg = mem_config(k);
        PipelineResult r = run_pipeline_sequences({a, b}, cfg);
        REQUIRE(r.bubbles.size() == 1);
        CHECK(r.bubbles[0].cls == BubbleClass::SNP);
        CHECK(r.bubbles[0].from_simple);
        CHECK(r.bubbles[0].len1 == 2 * k - 1);
        CHECK(r.bubbles[0].len2 == 2 * k - 1);

        // Without the simple-bubble pass the default shorter bound 2k-2 excludes it...
        cfg.simple_bubbles = false;
        CHECK(run_pipeline_sequences({a, b}, cfg).bubbles.empty());
        // ...and a bound of 2k-1 lets enumeration find it.
        cfg.alpha2 = 2 * k - 1;
        PipelineResult e = run_pipeline_sequences({a, b}, cfg);
        REQUIRE(e.bubbles.size() == 1);
        CHECK(e.bubbles[0].cls == BubbleClass::SNP);
        CHECK_FALSE(e.bubbles[0].from_simple);
    }
}

TEST_CASE("a two-base deletion is called as an indel") {
    std::mt19937_64 rng(43);
    for (int it = 0; it < 8; ++it) {
        const int k = 25;
        const std::string a = random_dna(rng, 300);
        std::string b = a;
        b.erase(140, 2);
        PipelineResult r = run_pipeline_sequences({a, b}, mem_config(k));
        REQUIRE(r.bubbles.size() == 1);
        CHECK(r.bubbles[0].cls == BubbleClass::Indel);
        CHECK(r.bubbles[0].len1 - r.bubbles[0].len2 == 2);
    }
}

TEST_CASE("empty input yields an empty report") {
    PipelineResult r = run_pipeline_sequences({}, mem_config());
    CHECK(r.bubbles.empty());
    CHECK(r.report.solid_kmers == 0);
    CHECK(r.report.cdbg_nodes == 0);
    CHECK(r.report.bccs.empty());
    CHECK_FALSE(r.report.truncated);
    auto j = nlohmann::json::parse(report_json(r.report, mem_config()));
    CHECK(j["class_counts"]["AS"] == 0);
}

TEST_CASE("compaction loses no k-mer and runs are deterministic across thread counts") {
    std::mt19937_64 rng(44);
    const std::string g = random_dna(rng, 3000);
    std::vector<std::string> reads;
    for (int i = 0; i < 400; ++i) {
        const size_t at = rng() % (g.size() - 100);
        std::string r = g.substr(at, 100);
        if (rng() % 50 == 0) r[rng() % 100] = "ACGT"[rng() % 4];  // sporadic errors
        reads.push_back(rng() % 2 ? reverse_complement(r) : r);
    }
    // Two haplotypes differing in a few places create bubbles.
    std::string h = g;
    for (size_t p : {500u, 900u, 1800u}) h[p] = h[p] == 'A' ? 'C' : 'A';
    h.erase(2400, 4);
    for (int i = 0; i < 200; ++i) {
        const size_t at = rng() % (h.size() - 100);
        reads.push_back(h.substr(at, 100));
    }
    PipelineConfig cfg = mem_config(31);
    cfg.min_abundance = 2;
    PipelineResult a = run_pipeline_sequences(reads, cfg);
    CountOptions o;
    o.k = 31;
    o.min_abundance = 2;
    CHECK(spelled_kmers(a.cdbg) == count_kmers(reads, o).keys());
    CHECK_FALSE(a.bubbles.empty());

    cfg.threads = 4;
    PipelineResult b = run_pipeline_sequences(reads, cfg);
    CHECK(report_json(a.report, mem_config(), false) == report_json(b.report, mem_config(), false));
    REQUIRE(a.bubbles.size() == b.bubbles.size());
    for (size_t i = 0; i < a.bubbles.size(); ++i) {
        CHECK(a.bubbles[i].seq1 == b.bubbles[i].seq1);
        CHECK(a.bubbles[i].seq2 == b.bubbles[i].seq2);
        CHECK(a.bubbles[i].bcc == b.bubbles[i].bcc);
    }
    for (const auto& cb : a.bubbles) {
        CHECK(cb.len1 >= cb.len2);
        CHECK(cb.cov1 > 0);
        CHECK(cb.cov2 > 0);
    }
}

TEST_CASE("bubble cap truncates a dense BCC and is reported") {
    std::mt19937_64 rng(45);
    const std::string a = random_dna(rng, 400);
    std::string b = a, c = a;
    for (size_t p : {190u, 197u, 204u, 211u}) b[p] = b[p] == 'A' ? 'G' : 'A';
    for (size_t p : {193u, 200u, 207u}) c[p] = c[p] == 'A' ? 'T' : 'A';
    PipelineConfig cfg = mem_config(15);
    cfg.simple_bubbles = false;
    cfg.alpha2 = 1000;
    PipelineResult full = run_pipeline_sequences({a, b, c}, cfg);
    REQUIRE(full.bubbles.size() > 1);
    CHECK_FALSE(full.report.truncated);
    cfg.max_bubbles = 1;
    PipelineResult capped = run_pipeline_sequences({a, b, c}, cfg);
    CHECK(capped.report.truncated);
    CHECK_FALSE(capped.report.truncated_bccs.empty());
    CHECK(capped.bubbles.size() <= capped.report.bccs.size());
    CHECK(capped.bubbles.size() < full.bubbles.size());
    bool any = false;
    for (const auto& s : capped.report.bccs) any |= s.truncated;
    CHECK(any);
}

TEST_CASE("file-based run writes every artifact and agrees with the in-memory run") {
    TempDir tmp;
    std::mt19937_64 rng(46);
    const std::string a = random_dna(rng, 200), b = random_dna(rng, 200), s = random_dna(rng, 90);
    const std::vector<std::string> seqs{a + s + b, a + b};
    const fs::path fa = tmp.p / "reads.fa";
    {
        std::ofstream o(fa);
        for (size_t i = 0; i < seqs.size(); ++i) o << ">t" << i << "\n" << seqs[i] << "\n";
    }
    PipelineConfig cfg = mem_config(31);
    cfg.reads = {fa.string()};
    cfg.out_dir = (tmp.p / "out").string();
    PipelineResult r = run_pipeline(cfg);
    for (const char* f : {"solid.kmc", "config.txt", "cascade.cbf", "cdbg.nodes.tsv", "cdbg.arcs.tsv", "bubbles.fa",
                          "bubbles.tsv", "report.json"})
        CHECK(fs::exists(fs::path(cfg.out_dir) / f));
    REQUIRE(r.bubbles.size() == 1);
    CHECK(r.report.reads == 2);

    const std::string fasta = slurp(fs::path(cfg.out_dir) / "bubbles.fa");
    std::regex head(R"(>bcc_\d+\|bubble_\d+\|type_AS\|len_\d+_\d+\|path_[12])");
    CHECK(std::distance(std::sregex_iterator(fasta.begin(), fasta.end(), head), std::sregex_iterator()) == 2);

    auto j = nlohmann::json::parse(slurp(fs::path(cfg.out_dir) / "report.json"));
    CHECK(j["class_counts"]["AS"] == 1);
    CHECK(j["config"]["k"] == 31);
    CHECK(j.contains("stage_seconds"));
    CHECK(j["cascade_set_sizes"].size() == 5);

    PipelineConfig reread;
    load_config_file(reread, (fs::path(cfg.out_dir) / "config.txt").string());
    CHECK(config_to_text(reread) == config_to_text(cfg));
    CHECK(load_solid((fs::path(cfg.out_dir) / "solid.kmc").string()).size() == r.report.solid_kmers);

    PipelineResult m = run_pipeline_sequences(seqs, mem_config(31));
    REQUIRE(m.bubbles.size() == 1);
    CHECK(m.bubbles[0].seq1 == r.bubbles[0].seq1);

    PipelineConfig no_out = cfg;
    no_out.out_dir.clear();
    CHECK_THROWS_AS(run_pipeline(no_out), ConfigError);
}
