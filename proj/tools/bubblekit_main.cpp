// bubblekit command-line front end. Each subcommand maps onto one library module; `run`
// chains them. Exit codes: 0 success, 1 runtime error, 2 bad usage or config, 3 truncated output.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "bubblekit/bench_suite.hpp"
#include "bubblekit/bubbles.hpp"
#include "bubblekit/cascade.hpp"
#include "bubblekit/config.hpp"
#include "bubblekit/dbg.hpp"
#include "bubblekit/edgelist_io.hpp"
#include "bubblekit/errors.hpp"
#include "bubblekit/kmer_count.hpp"
#include "bubblekit/paths.hpp"
#include "bubblekit/pipeline.hpp"
#include "bubblekit/sizing.hpp"

namespace {

using namespace bk;

constexpr int kExitTruncated = 3;

std::vector<std::string> split_commas(const std::vector<std::string>& in) {
    std::vector<std::string> out;
    for (const auto& s : in) {
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) out.push_back(item);
    }
    return out;
}

Weight walk_weight(const std::vector<std::vector<std::pair<uint32_t, Weight>>>& adj, const VertexPath& p,
                   bool closed) {
    auto w = [&](uint32_t a, uint32_t b) {
        Weight best = kInf;
        for (auto [to, wt] : adj[a])
            if (to == b) best = std::min(best, wt);
        return best;
    };
    Weight sum = 0;
    for (size_t i = 1; i < p.size(); ++i) sum += w(p[i - 1], p[i]);
    if (closed && p.size() > 2) sum += w(p.back(), p.front());
    return sum;
}

std::vector<std::vector<std::pair<uint32_t, Weight>>> adjacency(const EdgeList& el) {
    std::vector<std::vector<std::pair<uint32_t, Weight>>> adj(el.n);
    for (const auto& e : el.edges) {
        const Weight w = el.weighted ? e.w : 1;
        adj[e.u].emplace_back(e.v, w);
        if (!el.directed) adj[e.v].emplace_back(e.u, w);
    }
    return adj;
}

void print_path(const VertexPath& p, Weight w) {
    std::string line;
    for (size_t i = 0; i < p.size(); ++i) line += (i ? " " : "") + std::to_string(p[i]);
    std::cout << line << '\t' << w << '\n';
}

// ---------------------------------------------------------------- pipeline options shared by run/bubbles
struct PipelineFlags {
    std::string config_file;
    std::vector<std::string> reads;
    std::optional<int> k, t, threads;
    std::optional<uint32_t> d;
    std::optional<Weight> alpha1;
    std::string alpha2, lower, sizing;
    std::optional<uint64_t> max_bubbles, seed;
    std::optional<double> timeout;
    std::optional<size_t> memory;
    std::string out, scratch;
    bool exact = false, no_simple = false;
};

void add_bubble_flags(CLI::App* c, PipelineFlags& f) {
    c->add_option("--config", f.config_file, "key=value configuration file");
    c->add_option("--alpha1", f.alpha1, "bound on the longer path");
    c->add_option("--alpha2", f.alpha2, "bound on the shorter path, or auto (2k-2)");
    c->add_option("--lower", f.lower, "lower bound on both paths, or auto (2k-8)");
    c->add_option("--max-bubbles", f.max_bubbles, "cap per BCC (0 = none)");
    c->add_option("--timeout", f.timeout, "seconds per BCC (0 = none)");
    c->add_option("--threads", f.threads, "worker threads");
    c->add_flag("--no-simple", f.no_simple, "skip simple-bubble compression");
    c->add_option("-o,--out", f.out, "output directory");
}

PipelineConfig resolve(const PipelineFlags& f) {
    PipelineConfig cfg;
    if (!f.config_file.empty()) load_config_file(cfg, f.config_file);
    if (!f.reads.empty()) cfg.reads = split_commas(f.reads);
    if (f.k) cfg.k = *f.k;
    if (f.d) cfg.min_abundance = *f.d;
    if (f.t) cfg.t = *f.t;
    if (!f.sizing.empty()) cfg.sizing = parse_sizing_mode(f.sizing);
    if (f.threads) cfg.threads = *f.threads;
    if (f.alpha1) cfg.alpha1 = *f.alpha1;
    if (!f.alpha2.empty()) cfg.alpha2 = parse_auto_weight(f.alpha2);
    if (!f.lower.empty()) cfg.beta = parse_auto_weight(f.lower);
    if (f.max_bubbles) cfg.max_bubbles = *f.max_bubbles;
    if (f.timeout) cfg.timeout_s = *f.timeout;
    if (f.seed) cfg.seed = *f.seed;
    if (f.memory) cfg.memory_budget = *f.memory;
    if (!f.out.empty()) cfg.out_dir = f.out;
    if (!f.scratch.empty()) cfg.scratch_dir = f.scratch;
    if (f.exact) cfg.use_cascade = false;
    if (f.no_simple) cfg.simple_bubbles = false;
    validate_config(cfg);
    return cfg;
}

void print_summary(const RunReport& r) {
    std::cerr << "solid k-mers: " << r.solid_kmers << "  cDBG nodes: " << r.cdbg_nodes
              << "  BCCs kept: " << r.bccs.size() << '\n';
    for (const auto& [cls, n] : r.class_counts) std::cerr << "  " << cls << ": " << n << '\n';
    if (r.truncated) std::cerr << "truncated BCCs: " << r.truncated_bccs.size() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bubblekit: variant bubbles in de Bruijn graphs"};
    app.require_subcommand(1);

    // ---- run
    PipelineFlags rf;
    auto* run = app.add_subcommand("run", "count, build, compress and call bubbles end to end");
    run->add_option("--reads", rf.reads, "FASTA/FASTQ files, comma separated");
    run->add_option("-k", rf.k, "k-mer length");
    run->add_option("-d,--min-abundance", rf.d, "solidity threshold");
    run->add_option("--t", rf.t, "cascade depth (1, 2, 4 or 6)");
    run->add_option("--sizing", rf.sizing, "single or per-filter");
    run->add_option("--seed", rf.seed, "hash seed");
    run->add_option("--memory", rf.memory, "counting buffer in bytes");
    run->add_option("--scratch", rf.scratch, "directory for spill files");
    run->add_flag("--exact", rf.exact, "build the graph from the exact k-mer set instead of the cascade");
    add_bubble_flags(run, rf);

    // ---- count
    std::vector<std::string> c_reads;
    int c_k = 31;
    uint32_t c_d = 1;
    size_t c_mem = size_t{256} << 20;
    std::string c_out, c_tsv, c_scratch;
    auto* count = app.add_subcommand("count", "count canonical k-mers and keep the solid ones");
    count->add_option("--reads", c_reads, "FASTA/FASTQ files")->required();
    count->add_option("-k", c_k, "k-mer length");
    count->add_option("-d,--min-abundance", c_d, "solidity threshold");
    count->add_option("--memory", c_mem, "run buffer in bytes");
    count->add_option("--scratch", c_scratch, "directory for spill files");
    count->add_option("-o,--out", c_out, "binary record file")->required();
    count->add_option("--tsv", c_tsv, "optional TSV dump");

    // ---- bloom
    auto* bloom = app.add_subcommand("bloom", "cascading Bloom filter");
    bloom->require_subcommand(1);
    std::string b_solid, b_out, b_cascade, b_sizing = "single";
    int b_t = 4, b_k = 31, b_threads = 1;
    std::optional<double> b_r;
    uint64_t b_seed = 0x5EED5EEDULL;
    std::vector<std::string> b_kmers;
    auto* bbuild = bloom->add_subcommand("build", "build a cascade from a solid k-mer file");
    bbuild->add_option("--solid", b_solid, "solid k-mer file")->required();
    bbuild->add_option("--t", b_t, "number of filters");
    bbuild->add_option("--r", b_r, "bits per element for every filter (overrides --sizing)");
    bbuild->add_option("--sizing", b_sizing, "single or per-filter");
    bbuild->add_option("--seed", b_seed, "hash seed");
    bbuild->add_option("--threads", b_threads, "worker threads");
    bbuild->add_option("-o,--out", b_out, "cascade file")->required();
    auto* bquery = bloom->add_subcommand("query", "membership of k-mers");
    bquery->add_option("--cascade", b_cascade, "cascade file")->required();
    bquery->add_option("kmers", b_kmers, "k-mer sequences")->required();
    auto* bplan = bloom->add_subcommand("plan", "print the filter sizing for t and k");
    bplan->add_option("--t", b_t, "number of filters");
    bplan->add_option("--k", b_k, "k-mer length");
    bplan->add_option("--r", b_r, "evaluate a fixed ratio instead of optimising");
    bplan->add_option("--sizing", b_sizing, "single or per-filter");

    // ---- dbg
    auto* dbg = app.add_subcommand("dbg", "bidirected de Bruijn graph");
    dbg->require_subcommand(1);
    std::string g_solid, g_cascade, g_kplus1, g_in, g_out, g_weights = "source";
    bool g_compress = false;
    auto* gbuild = dbg->add_subcommand("build", "node-per-k-mer graph from a solid set");
    gbuild->add_option("--solid", g_solid, "solid k-mer file")->required();
    gbuild->add_option("--cascade", g_cascade, "answer neighbour queries with this cascade");
    gbuild->add_option("--kplus1", g_kplus1, "solid (k+1)-mer file confirming each arc");
    gbuild->add_flag("--compress", g_compress, "compact non-branching paths before writing");
    gbuild->add_option("-o,--out", g_out, "output prefix (.nodes.tsv / .arcs.tsv)")->required();
    auto* gcomp = dbg->add_subcommand("compress", "compact non-branching paths");
    gcomp->add_option("--in", g_in, "input prefix")->required();
    gcomp->add_option("-o,--out", g_out, "output prefix")->required();
    auto* gexp = dbg->add_subcommand("export", "write the split directed graph as an edge list");
    gexp->add_option("--in", g_in, "input prefix")->required();
    gexp->add_option("--weights", g_weights, "source or target");
    gexp->add_option("-o,--out", g_out, "edge list file")->required();

    // ---- bubbles
    PipelineFlags bf;
    std::string bub_graph, bub_edges, bub_algo = "bounded";
    std::optional<uint32_t> bub_source;
    auto* bub = app.add_subcommand("bubbles", "list bubbles of a compacted graph or of an edge list");
    bub->add_option("--graph", bub_graph, "cDBG prefix (.nodes.tsv / .arcs.tsv)");
    bub->add_option("--edges", bub_edges, "directed edge list instead of a cDBG");
    bub->add_option("--source", bub_source, "edge lists only: restrict to one source vertex");
    bub->add_option("--algo", bub_algo, "edge lists only: bounded, linear or backtrack");
    add_bubble_flags(bub, bf);

    // ---- paths / cycles
    std::string p_graph, p_mode = "baseline";
    uint32_t p_from = 0, p_to = 0;
    std::optional<Weight> p_alpha;
    std::optional<uint64_t> p_k;
    bool p_ordered = false;
    auto* paths = app.add_subcommand("paths", "list s-t paths");
    paths->add_option("--graph", p_graph, "edge list file")->required();
    paths->add_option("--from", p_from, "source vertex")->required();
    paths->add_option("--to", p_to, "target vertex")->required();
    auto* alpha_opt = paths->add_option("--alpha", p_alpha, "weight bound");
    paths->add_option("--k", p_k, "report only the K lightest paths")->excludes(alpha_opt);
    paths->add_flag("--ordered", p_ordered, "emit bounded paths by non-decreasing weight");
    paths->add_option("--mode", p_mode, "baseline or certificate (unbounded listing)");
    auto* cycles = app.add_subcommand("cycles", "list simple cycles of an undirected graph");
    cycles->add_option("--graph", p_graph, "edge list file")->required();
    cycles->add_option("--mode", p_mode, "baseline, certificate or johnson");

    // ---- bench
    auto* bench = app.add_subcommand("bench", "counter and memory tables as TSV");
    bench->require_subcommand(1);
    CascadeBenchParams cbp;
    std::vector<uint64_t> sizes;
    bool uniform = false;
    auto* bcas = bench->add_subcommand("cascade", "bits per k-mer and traversal mix");
    bcas->add_option("--sizes", sizes, "solid set sizes");
    bcas->add_option("--t", cbp.t, "number of filters");
    bcas->add_option("--k", cbp.k, "k-mer length");
    bcas->add_option("--threads", cbp.threads, "also time a parallel build");
    bcas->add_option("--seed", cbp.seed, "generator seed");
    bcas->add_flag("--uniform", uniform, "uniform random k-mers instead of genome k-mers");
    BubbleBenchParams bbp;
    auto* bbub = bench->add_subcommand("bubbles", "delay suite and bounded-vs-backtracking counters");
    bbub->add_option("--graphs", bbp.graphs, "random digraphs in the delay suite");
    bbub->add_option("--cdbg-graphs", bbp.cdbg_graphs, "synthetic cDBG graphs");
    bbub->add_option("--gadgets", bbp.cdbg_gadgets, "variant gadgets per synthetic graph");
    bbub->add_option("--seed", bbp.seed, "generator seed");
    uint32_t max_k = 30;
    auto* bpaths = bench->add_subcommand("paths", "diamond family cycle listing counters");
    bpaths->add_option("--max-k", max_k, "largest diamond parameter");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            PipelineConfig cfg = resolve(rf);
            if (cfg.reads.empty()) throw ConfigError("--reads is required");
            PipelineResult res = run_pipeline(cfg);
            print_summary(res.report);
            return res.report.truncated ? kExitTruncated : 0;
        }
        if (count->parsed()) {
            CountOptions o;
            o.k = c_k;
            o.min_abundance = c_d;
            o.memory_budget = c_mem;
            o.scratch_dir = c_scratch;
            SolidSet s = count_kmers_from_files(split_commas(c_reads), o);
            save_solid(c_out, s);
            if (!c_tsv.empty()) save_solid_tsv(c_tsv, s);
            std::cerr << s.size() << " solid " << c_k << "-mers\n";
            return 0;
        }
        if (bbuild->parsed()) {
            SolidSet s = load_solid(b_solid);
            SizingPlan plan = b_r ? fixed_plan(b_t, s.k, *b_r) : plan_sizing(b_t, s.k, parse_sizing_mode(b_sizing));
            CascadeOptions o;
            o.seed = b_seed;
            o.threads = b_threads;
            CascadingBloom c = build_cascade(s, plan, o);
            c.save(b_out);
            std::cerr << "bits/k-mer " << c.bits_per_kmer() << " (predicted " << plan.predicted_bits_per_kmer << ")\n";
            return 0;
        }
        if (bquery->parsed()) {
            CascadingBloom c = CascadingBloom::load(b_cascade);
            for (const auto& s : b_kmers) {
                CascadeQuery q = c.query(Kmer::encode(s, c.k).canonical().packed());
                std::cout << s << '\t' << (q.member ? "present" : "absent") << '\t' << q.level << '\n';
            }
            return 0;
        }
        if (bplan->parsed()) {
            SizingPlan plan = b_r ? fixed_plan(b_t, b_k, *b_r) : plan_sizing(b_t, b_k, parse_sizing_mode(b_sizing));
            std::cout << "t\t" << plan.t << "\nk\t" << plan.k << "\n";
            for (size_t i = 0; i < plan.r.size(); ++i) std::cout << "r" << i + 1 << '\t' << plan.r[i] << '\n';
            std::cout << "bits_per_kmer\t" << plan.predicted_bits_per_kmer << '\n';
            return 0;
        }
        if (gbuild->parsed()) {
            SolidSet s = load_solid(g_solid);
            BidirectedDBG g;
            if (!g_cascade.empty()) {
                CascadingBloom c = CascadingBloom::load(g_cascade);
                std::vector<uint32_t> counts;
                for (const auto& r : s.records) counts.push_back(r.count);
                g = build_dbg(c, s.keys(), &counts);
            } else if (!g_kplus1.empty()) {
                SolidSet s1 = load_solid(g_kplus1);
                g = build_dbg(s, &s1);
            } else {
                g = build_dbg(s);
            }
            if (g_compress) g = compress(g);
            write_dbg_tsv(g, g_out + ".nodes.tsv", g_out + ".arcs.tsv");
            std::cerr << g.nodes.size() << " nodes, " << g.arcs.size() << " arcs\n";
            return 0;
        }
        if (gcomp->parsed()) {
            BidirectedDBG g = compress(read_dbg_tsv(g_in + ".nodes.tsv", g_in + ".arcs.tsv"));
            write_dbg_tsv(g, g_out + ".nodes.tsv", g_out + ".arcs.tsv");
            std::cerr << g.nodes.size() << " nodes, " << g.arcs.size() << " arcs\n";
            return 0;
        }
        if (gexp->parsed()) {
            BidirectedDBG g = read_dbg_tsv(g_in + ".nodes.tsv", g_in + ".arcs.tsv");
            WeightMode m;
            if (g_weights == "source") m = WeightMode::Source;
            else if (g_weights == "target") m = WeightMode::Target;
            else throw ConfigError("--weights must be source or target");
            write_edge_list(g_out, to_edge_list(split_bidirected(g, m).g));
            return 0;
        }
        if (bub->parsed()) {
            if (bub_graph.empty() == bub_edges.empty()) throw ConfigError("give exactly one of --graph and --edges");
            PipelineConfig cfg = resolve(bf);
            if (!bub_graph.empty()) {
                BidirectedDBG g = read_dbg_tsv(bub_graph + ".nodes.tsv", bub_graph + ".arcs.tsv");
                cfg.k = g.k;
                validate_config(cfg);
                RunReport report;
                auto bubbles = call_bubbles(g, cfg, report);
                std::filesystem::create_directories(cfg.out_dir);
                write_bubbles_fasta(cfg.out_dir + "/bubbles.fa", bubbles);
                write_bubbles_tsv(cfg.out_dir + "/bubbles.tsv", bubbles);
                std::ofstream(cfg.out_dir + "/report.json") << report_json(report, cfg);
                print_summary(report);
                return report.truncated ? kExitTruncated : 0;
            }
            Digraph g = read_edge_list(bub_edges).to_digraph();
            BubbleConstraints c;
            c.alpha1 = cfg.alpha1;
            c.alpha2 = bf.alpha2.empty() || bf.alpha2 == "auto" ? kInf : *parse_auto_weight(bf.alpha2);
            c.beta = bf.lower.empty() || bf.lower == "auto" ? 0 : *parse_auto_weight(bf.lower);
            c.max_bubbles = cfg.max_bubbles;
            c.timeout_s = cfg.timeout_s;
            bool truncated = false;
            BubbleSink sink = [](const Bubble& b) {
                std::string a, z;
                for (size_t i = 0; i < b.path1.size(); ++i) a += (i ? " " : "") + std::to_string(b.path1[i]);
                for (size_t i = 0; i < b.path2.size(); ++i) z += (i ? " " : "") + std::to_string(b.path2[i]);
                std::cout << a << '\t' << b.len1 << '\t' << z << '\t' << b.len2 << '\n';
                return true;
            };
            for (uint32_t s = bub_source.value_or(0); s < (bub_source ? *bub_source + 1 : g.n()); ++s) {
                EnumResult r;
                if (bub_algo == "bounded") r = list_bounded_bubbles(g, s, c, sink);
                else if (bub_algo == "linear") r = list_bubbles_linear_delay(g, s, sink);
                else if (bub_algo == "backtrack") r = enumerate_as_bubbles(g, s, c, sink);
                else throw ConfigError("--algo must be bounded, linear or backtrack");
                truncated = truncated || r.truncated;
            }
            return truncated ? kExitTruncated : 0;
        }
        if (paths->parsed()) {
            EdgeList el = read_edge_list(p_graph);
            auto adj = adjacency(el);
            if (!p_alpha && !p_k) {
                StPathMode mode = parse_st_path_mode(p_mode);
                list_st_paths(el.to_ugraph(), p_from, p_to, mode, [&](const VertexPath& p) {
                    print_path(p, walk_weight(adj, p, false));
                    return true;
                });
                return 0;
            }
            WeightedPathSink sink = [](const WeightedPath& p) {
                print_path(p.vertices, p.weight);
                return true;
            };
            const Weight alpha = p_alpha.value_or(kInf);
            if (p_k) {
                list_paths_ordered(el.to_digraph(), p_from, p_to, alpha, OrderContainer::Heap, *p_k, sink);
            } else if (p_ordered) {
                list_paths_ordered(el.to_digraph(), p_from, p_to, alpha, OrderContainer::Heap, std::nullopt, sink);
            } else if (!el.directed) {
                list_bounded_st_paths_undirected(el.to_ugraph(), p_from, p_to, alpha, sink);
            } else {
                list_bounded_st_paths(el.to_digraph(), p_from, p_to, alpha, sink);
            }
            return 0;
        }
        if (cycles->parsed()) {
            EdgeList el = read_edge_list(p_graph);
            auto adj = adjacency(el);
            PathSink sink = [&](const VertexPath& p) {
                print_path(normalize_cycle(p), walk_weight(adj, p, true));
                return true;
            };
            if (p_mode == "johnson") list_cycles_johnson(el.to_ugraph(), sink);
            else list_cycles(el.to_ugraph(), parse_st_path_mode(p_mode), sink);
            return 0;
        }
        if (bcas->parsed()) {
            if (!sizes.empty()) cbp.sizes = sizes;
            cbp.genome_like = !uniform;
            std::cout << bench_cascade(cbp).tsv();
            return 0;
        }
        if (bbub->parsed()) {
            std::cout << "# delay\n" << bench_bubble_delay(bbp).tsv();
            std::cout << "# bounded\n" << bench_bubble_bounded(bbp).tsv();
            return 0;
        }
        if (bpaths->parsed()) {
            std::cout << bench_paths(2, max_k, 4).tsv();
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
