#include "bubblekit/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "bubblekit/errors.hpp"

namespace bk {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <class T>
T parse_num(const std::string& key, const std::string& v) {
    T x{};
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size())
        throw ConfigError("bad value '" + v + "' for key '" + key + "'");
    return x;
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        size_t used = 0;
        double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("bad value '" + v + "' for key '" + key + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    throw ConfigError("bad boolean '" + v + "' for key '" + key + "'");
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!trim(item).empty()) out.push_back(trim(item));
    return out;
}

}  // namespace

std::optional<Weight> parse_auto_weight(const std::string& s) {
    if (s == "auto") return std::nullopt;
    return parse_num<Weight>("weight", s);
}

void apply_config_value(PipelineConfig& cfg, const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    if (key == "reads") cfg.reads = split_list(v);
    else if (key == "out") cfg.out_dir = v;
    else if (key == "scratch") cfg.scratch_dir = v;
    else if (key == "k") cfg.k = parse_num<int>(key, v);
    else if (key == "min_abundance" || key == "d") cfg.min_abundance = parse_num<uint32_t>(key, v);
    else if (key == "t") cfg.t = parse_num<int>(key, v);
    else if (key == "sizing") cfg.sizing = parse_sizing_mode(v);
    else if (key == "use_cascade") cfg.use_cascade = parse_bool(key, v);
    else if (key == "confirm_kplus1") cfg.confirm_kplus1 = parse_bool(key, v);
    else if (key == "simple_bubbles") cfg.simple_bubbles = parse_bool(key, v);
    else if (key == "alpha1") cfg.alpha1 = parse_num<Weight>(key, v);
    else if (key == "alpha2") cfg.alpha2 = parse_auto_weight(v);
    else if (key == "beta" || key == "lower") cfg.beta = parse_auto_weight(v);
    else if (key == "max_bubbles") cfg.max_bubbles = parse_num<uint64_t>(key, v);
    else if (key == "timeout") cfg.timeout_s = parse_double(key, v);
    else if (key == "repeat_identity") cfg.repeat_identity = parse_double(key, v);
    else if (key == "seed") cfg.seed = parse_num<uint64_t>(key, v);
    else if (key == "threads") cfg.threads = parse_num<int>(key, v);
    else if (key == "memory") cfg.memory_budget = parse_num<size_t>(key, v);
    else throw ConfigError("unknown config key '" + key + "'");
}

void apply_config_text(PipelineConfig& cfg, const std::string& text) {
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
        apply_config_value(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
    }
}

void load_config_file(PipelineConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    apply_config_text(cfg, ss.str());
}

std::string config_to_text(const PipelineConfig& c) {
    std::ostringstream o;
    auto w = [](const std::optional<Weight>& x) { return x ? std::to_string(*x) : std::string("auto"); };
    std::string reads;
    for (size_t i = 0; i < c.reads.size(); ++i) reads += (i ? "," : "") + c.reads[i];
    o << "reads=" << reads << "\n"
      << "out=" << c.out_dir << "\n"
      << "scratch=" << c.scratch_dir << "\n"
      << "k=" << c.k << "\n"
      << "min_abundance=" << c.min_abundance << "\n"
      << "t=" << c.t << "\n"
      << "sizing=" << to_string(c.sizing) << "\n"
      << "use_cascade=" << (c.use_cascade ? "true" : "false") << "\n"
      << "confirm_kplus1=" << (c.confirm_kplus1 ? "true" : "false") << "\n"
      << "simple_bubbles=" << (c.simple_bubbles ? "true" : "false") << "\n"
      << "alpha1=" << c.alpha1 << "\n"
      << "alpha2=" << w(c.alpha2) << "\n"
      << "beta=" << w(c.beta) << "\n"
      << "max_bubbles=" << c.max_bubbles << "\n"
      << "timeout=" << c.timeout_s << "\n"
      << "repeat_identity=" << c.repeat_identity << "\n"
      << "seed=" << c.seed << "\n"
      << "threads=" << c.threads << "\n"
      << "memory=" << c.memory_budget << "\n";
    return o.str();
}

void validate_config(const PipelineConfig& c) {
    if (c.k < 3 || c.k > 63) throw ConfigError("k must lie in [3, 63]");
    if (c.min_abundance < 1) throw ConfigError("min_abundance must be at least 1");
    if (c.t != 1 && c.t != 2 && c.t != 4 && c.t != 6) throw ConfigError("t must be one of 1, 2, 4, 6");
    if (c.threads < 1) throw ConfigError("threads must be positive");
    if (c.alpha1 < 0) throw ConfigError("alpha1 must be non-negative");
    if (c.resolved_alpha2() > c.alpha1) throw ConfigError("alpha2 must not exceed alpha1");
    if (c.resolved_beta() > c.resolved_alpha2()) throw ConfigError("the lower bound must not exceed alpha2");
    if (c.timeout_s < 0) throw ConfigError("timeout must be non-negative");
    if (c.repeat_identity < 0 || c.repeat_identity > 1) throw ConfigError("repeat_identity must lie in [0, 1]");
}

}  // namespace bk
