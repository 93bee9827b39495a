// grandlab: GRAND-family decoding toolkit front end.
//
// Subcommands: simulate, decode, segment, partitions, codes.
// Results go to stdout or --out (written atomically); progress to stderr.
// Exit codes: 0 success, 1 configuration error, 2 runtime failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <algorithm>
#include <optional>
#include <set>
#include <sstream>

#include "grandlab/code.hpp"
#include "grandlab/decode.hpp"
#include "grandlab/segmentation.hpp"
#include "grandlab/sim.hpp"
#include "grandlab/svg.hpp"

namespace {

using nlohmann::json;
using namespace grandlab;

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp.string());
        os << content;
        if (!os) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        atomic_write(out_path, content);
}

// "start:stop:step" (inclusive), "a,b,c", or a single value
std::vector<double> parse_ebno(const std::string& spec) {
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        double start, stop, step;
        char c1, c2;
        std::istringstream is(spec);
        if (!(is >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0)
            throw std::runtime_error("--ebno expects start:stop:step with step > 0");
        for (double v = start; v <= stop + 1e-9; v += step) out.push_back(v);
        return out;
    }
    std::string token;
    std::istringstream is(spec);
    while (std::getline(is, token, ',')) {
        if (token.empty()) continue;
        out.push_back(std::stod(token));
    }
    if (out.empty()) throw std::runtime_error("--ebno lists no SNR points");
    return out;
}

int parse_segments(const std::string& spec) {
    if (spec == "auto") return 3;
    int v = std::stoi(spec);
    if (v < 1) throw std::runtime_error("--segments must be 'auto' or a positive count");
    return v;
}

int default_threads() {
    if (const char* env = std::getenv("GRANDLAB_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 0;  // resolve to hardware concurrency
}

std::string codeword_hex(const BitVec& c) {
    static const char* digits = "0123456789abcdef";
    std::string hex;
    int nibble = 0, filled = 0;
    for (int i = 1; i <= c.length(); ++i) {
        nibble = (nibble << 1) | (c.get(i) ? 1 : 0);
        if (++filled == 4) {
            hex += digits[nibble];
            nibble = 0;
            filled = 0;
        }
    }
    if (filled) hex += digits[nibble << (4 - filled)];
    return hex;
}

LinearCode load_named_or_file(const std::string& name, const std::string& file) {
    if (!file.empty()) return load_code(file);
    return code_by_name(name);
}

struct SimulateArgs {
    std::string code = "ebch128_106";
    std::string decoder = "orbgrand";
    std::string segments = "auto";
    std::string ebno = "5";
    uint64_t max_queries = 100000;
    uint64_t trials = 10000;
    uint64_t max_trials = 0;
    uint64_t seed = 1;
    double tuning_eps = 0.0;
    double tuning_rho = 0.0;
    int hamming_cap = 0;
    int threads = default_threads();
    std::string config;
    std::string out;
    std::string svg_prefix;
    bool dump_config = false;
};

std::string effective_config(const SimulateArgs& a) {
    std::ostringstream os;
    os << "code=" << a.code << "\n";
    os << "decoder=" << a.decoder << "\n";
    os << "segments=" << a.segments << "\n";
    os << "ebno=" << a.ebno << "\n";
    os << "max-queries=" << a.max_queries << "\n";
    os << "trials=" << a.trials << "\n";
    os << "max-trials=" << a.max_trials << "\n";
    os << "seed=" << a.seed << "\n";
    char buf[128];
    std::snprintf(buf, sizeof(buf), "tuning-eps=%.17g\ntuning-rho=%.17g\n", a.tuning_eps, a.tuning_rho);
    os << buf;
    os << "hamming-cap=" << a.hamming_cap << "\n";
    os << "threads=" << a.threads << "\n";
    if (!a.out.empty()) os << "out=" << a.out << "\n";
    if (!a.svg_prefix.empty()) os << "svg=" << a.svg_prefix << "\n";
    return os.str();
}

int run_simulate(const SimulateArgs& a) {
    if (a.dump_config) {
        std::cout << effective_config(a);
        return 0;
    }
    TrialConfig cfg;
    cfg.code_name = a.code;
    cfg.decoder = decoder_from_name(a.decoder);
    cfg.max_segments = parse_segments(a.segments);
    cfg.ebno_db = parse_ebno(a.ebno);
    cfg.max_queries = a.max_queries;
    cfg.trials = a.trials;
    cfg.max_trials = a.max_trials;
    cfg.seed = a.seed;
    cfg.threads = a.threads;
    if (a.tuning_eps > 0.0 || a.tuning_rho > 0.0) {
        if (!(a.tuning_eps > 0.0) || !(a.tuning_rho > 0.0))
            throw std::runtime_error("tuning requires both --tuning-eps and --tuning-rho > 0");
        cfg.tuning = TuningConfig{a.tuning_eps, a.tuning_rho};
    }
    if (a.hamming_cap > 0) cfg.hamming_weight_cap = a.hamming_cap;

    SimReport rep = run_trials(cfg);
    for (const auto& pt : rep.points)
        std::fprintf(stderr, "ebno=%.4g trials=%llu bler=%.4g wilson=[%.4g,%.4g] avg_queries=%.2f wall=%.1fs\n",
                     pt.ebno_db, static_cast<unsigned long long>(pt.trials), pt.bler, pt.bler_wilson_lo,
                     pt.bler_wilson_hi, pt.avg_queries, pt.wall_seconds);
    emit(a.out, to_csv(rep));

    if (!a.svg_prefix.empty()) {
        SvgSeries bler{decoder_name(cfg.decoder), "#1f77b4", {}, {}};
        SvgSeries queries = bler;
        for (const auto& pt : rep.points) {
            bler.x.push_back(pt.ebno_db);
            bler.y.push_back(pt.bler);
            queries.x.push_back(pt.ebno_db);
            queries.y.push_back(pt.avg_queries);
        }
        atomic_write(a.svg_prefix + "_bler.svg", render_log_chart("Block error rate", "Eb/N0 (dB)", "BLER", {bler}));
        atomic_write(a.svg_prefix + "_queries.svg",
                     render_log_chart("Average queries", "Eb/N0 (dB)", "queries", {queries}));
    }
    return 0;
}

struct DecodeArgs {
    std::string code = "ebch128_106";
    std::string code_file;
    std::string in;
    std::string decoder = "orbgrand";
    std::string segments = "auto";
    uint64_t max_queries = 100000;
    double tuning_eps = 0.0;
    double tuning_rho = 0.0;
    double sigma = 0.5;
    int hamming_cap = 0;
    std::string out;
};

int run_decode(const DecodeArgs& a) {
    LinearCode code = load_named_or_file(a.code, a.code_file);
    std::ifstream is(a.in);
    if (!is) throw std::runtime_error("cannot open input vector file " + a.in);
    std::vector<double> r;
    double v;
    while (is >> v) r.push_back(v);
    if (static_cast<int>(r.size()) != code.n)
        throw std::runtime_error("input has " + std::to_string(r.size()) + " symbols, code length is " +
                                 std::to_string(code.n));

    DecodeOptions opt;
    opt.max_queries = a.max_queries;
    if (a.hamming_cap > 0) opt.hamming_weight_cap = a.hamming_cap;
    if (a.tuning_eps > 0.0 && a.tuning_rho > 0.0) opt.tuning = TuningParams{a.tuning_eps, a.tuning_rho, a.sigma};

    DecodeResult res;
    if (decoder_from_name(a.decoder) == DecoderKind::Orbgrand) {
        res = orbgrand(code, r, opt);
    } else {
        Segmentation seg = find_segments(code.H, parse_segments(a.segments));
        res = segmented_orbgrand(code, seg, r, opt);
    }

    json record;
    record["codeword_hex"] = res.codeword ? json(codeword_hex(*res.codeword)) : json(nullptr);
    record["queries"] = res.queries;
    record["abandoned"] = res.abandoned;
    record["sed"] = res.sed ? json(*res.sed) : json(nullptr);
    record["w_l"] = res.w_l ? json(*res.w_l) : json(nullptr);
    emit(a.out, record.dump() + "\n");
    return 0;
}

struct SegmentArgs {
    std::string code = "ebch128_106";
    std::string code_file;
    int max_p = 3;
    std::string out;
};

int run_segment(const SegmentArgs& a) {
    LinearCode code = load_named_or_file(a.code, a.code_file);
    Segmentation seg = find_segments(code.H, a.max_p);
    std::ostringstream os;
    os << "code " << code.name << " (" << code.n << "," << code.k << ")\n";
    os << describe(seg);
    SearchSpace space = search_space_size(seg);
    os << "search space: 2^" << space.log2;
    if (space.value) os << " = " << *space.value;
    os << "\n";
    emit(a.out, os.str());
    return 0;
}

struct PartitionArgs {
    std::string kind = "distinct";
    long long w = 0;
    int t = 1;
    long long p_max = 0;
    std::string parity = "any";
    std::string constraints;  // level1: one of o/e/u per segment
    std::string caps;         // level1: comma list, optional
    std::string taus;         // level1: comma list, optional
    std::string out;
};

std::vector<long long> parse_ll_list(const std::string& spec) {
    std::vector<long long> out;
    std::string token;
    std::istringstream is(spec);
    while (std::getline(is, token, ','))
        if (!token.empty()) out.push_back(std::stoll(token));
    return out;
}

int run_partitions(const PartitionArgs& a) {
    std::ostringstream os;
    auto print_parts = [&os](const std::vector<long long>& parts) {
        if (parts.empty()) {
            os << "-\n";
            return;
        }
        for (size_t i = 0; i < parts.size(); ++i) os << parts[i] << (i + 1 < parts.size() ? ' ' : '\n');
    };
    long long p_max = a.p_max > 0 ? a.p_max : std::max<long long>(a.w, 1);
    std::vector<long long> parts;

    if (a.kind == "fixed") {
        FixedCountPartitions gen(a.w, a.t, p_max);
        while (gen.next(parts)) print_parts(parts);
    } else if (a.kind == "distinct") {
        DistinctPartitions gen(a.w, p_max);
        while (gen.next(parts)) print_parts(parts);
    } else if (a.kind == "parity") {
        PartParity par;
        if (a.parity == "odd")
            par = PartParity::Odd;
        else if (a.parity == "even")
            par = PartParity::Even;
        else if (a.parity == "any")
            par = PartParity::Any;
        else
            throw std::runtime_error("parity must be odd|even|any");
        ParityPartitions gen(a.w, par, p_max);
        while (gen.next(parts)) print_parts(parts);
    } else if (a.kind == "level1") {
        if (a.constraints.empty()) throw std::runtime_error("level1 needs --constraints (o/e/u per segment)");
        std::vector<SegWeightParity> par;
        for (char c : a.constraints) {
            if (c == 'o')
                par.push_back(SegWeightParity::Odd);
            else if (c == 'e')
                par.push_back(SegWeightParity::Even);
            else if (c == 'u')
                par.push_back(SegWeightParity::Any);
            else
                throw std::runtime_error("constraint characters are o, e, u");
        }
        size_t p = par.size();
        std::vector<long long> taus(p, 0), highs(p, a.w > 0 ? a.w : 1);
        if (!a.taus.empty()) {
            taus = parse_ll_list(a.taus);
            if (taus.size() != p) throw std::runtime_error("--tau list size != segment count");
        }
        if (!a.caps.empty()) {
            highs = parse_ll_list(a.caps);
            if (highs.size() != p) throw std::runtime_error("--caps list size != segment count");
        }
        std::vector<long long> lows(p);
        for (size_t j = 0; j < p; ++j) {
            lows[j] = min_subweight(par[j]) + taus[j];
            highs[j] += taus[j];
        }
        auto bases = enumerate_bases(par, lows);
        SubWeightCompositions gen(a.w, bases, lows, highs);
        while (gen.next(parts)) print_parts(parts);
    } else {
        throw std::runtime_error("kind must be fixed|distinct|parity|level1");
    }
    emit(a.out, os.str());
    return 0;
}

int run_codes(const std::string& out) {
    std::ostringstream os;
    for (const auto& name : registry_names()) {
        const LinearCode& c = code_by_name(name);
        os << name << " n=" << c.n << " k=" << c.k << " rate=" << c.rate() << "\n";
    }
    emit(out, os.str());
    return 0;
}

// Flat key=value config support: entries become "--key=value" arguments
// appended after the explicit ones, skipping keys the command line already
// carries, so flags always win over file entries.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::string config_path;
    std::set<std::string> given;
    for (size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a.rfind("--", 0) != 0) continue;
        std::string key = a.substr(2);
        std::string inline_value;
        if (auto eq = key.find('='); eq != std::string::npos) {
            inline_value = key.substr(eq + 1);
            key = key.substr(0, eq);
        }
        given.insert(key);
        if (key == "config") {
            if (!inline_value.empty())
                config_path = inline_value;
            else if (i + 1 < args.size())
                config_path = args[i + 1];
        }
    }
    std::vector<std::string> out = args;
    if (config_path.empty()) return out;
    std::ifstream is(config_path);
    if (!is) throw std::runtime_error("cannot open config file " + config_path);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) + " is not key=value");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        if (key.empty()) throw std::runtime_error("config line " + std::to_string(lineno) + " has an empty key");
        if (given.count(key)) continue;
        out.push_back("--" + key + "=" + value);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"grandlab: universal soft-decision decoding with GRAND-family decoders"};
    app.require_subcommand(1);

    SimulateArgs sim;
    CLI::App* sim_cmd = app.add_subcommand("simulate", "run Monte Carlo trials, emit CSV");
    sim_cmd->add_option("--code", sim.code, "registry code name");
    sim_cmd->add_option("--decoder", sim.decoder, "orbgrand | seg-orbgrand");
    sim_cmd->add_option("--segments", sim.segments, "auto or max segment count");
    sim_cmd->add_option("--ebno", sim.ebno, "SNR points: start:stop:step, comma list, or one value");
    sim_cmd->add_option("--max-queries", sim.max_queries, "abandonment threshold b");
    sim_cmd->add_option("--trials", sim.trials, "trials per SNR point");
    sim_cmd->add_option("--max-trials", sim.max_trials, "cap for auto-extension (0: off)");
    sim_cmd->add_option("--seed", sim.seed, "RNG seed");
    sim_cmd->add_option("--tuning-eps", sim.tuning_eps, "low-reliability threshold epsilon");
    sim_cmd->add_option("--tuning-rho", sim.tuning_rho, "tuning normalization rho");
    sim_cmd->add_option("--hamming-cap", sim.hamming_cap, "optional pattern Hamming-weight cap");
    sim_cmd->add_option("--threads", sim.threads, "worker threads (0: all cores)");
    sim_cmd->add_option("--out", sim.out, "CSV output path (default stdout)");
    sim_cmd->add_option("--svg", sim.svg_prefix, "emit <prefix>_bler.svg and <prefix>_queries.svg");
    sim_cmd->add_flag("--dump-config", sim.dump_config, "print the effective configuration and exit");
    sim_cmd->add_option("--config", sim.config, "key=value config file; flags win over file entries");

    DecodeArgs dec;
    CLI::App* dec_cmd = app.add_subcommand("decode", "decode one received vector (one float per line)");
    dec_cmd->add_option("--code", dec.code, "registry code name");
    dec_cmd->add_option("--code-file", dec.code_file, "code file (# kind=G|H header)");
    dec_cmd->add_option("--in", dec.in, "received-vector file")->required();
    dec_cmd->add_option("--decoder", dec.decoder, "orbgrand | seg-orbgrand");
    dec_cmd->add_option("--segments", dec.segments, "auto or max segment count");
    dec_cmd->add_option("--max-queries", dec.max_queries, "abandonment threshold b");
    dec_cmd->add_option("--tuning-eps", dec.tuning_eps, "tuning epsilon");
    dec_cmd->add_option("--tuning-rho", dec.tuning_rho, "tuning rho");
    dec_cmd->add_option("--sigma", dec.sigma, "noise std for tuning");
    dec_cmd->add_option("--hamming-cap", dec.hamming_cap, "optional pattern Hamming-weight cap");
    dec_cmd->add_option("--out", dec.out, "output path (default stdout)");

    SegmentArgs seg;
    CLI::App* seg_cmd = app.add_subcommand("segment", "inspect the derived segmentation of a code");
    seg_cmd->add_option("--code", seg.code, "registry code name");
    seg_cmd->add_option("--code-file", seg.code_file, "code file (# kind=G|H header)");
    seg_cmd->add_option("--max-p", seg.max_p, "maximum number of segments");
    seg_cmd->add_option("--out", seg.out, "output path (default stdout)");

    PartitionArgs part;
    CLI::App* part_cmd = app.add_subcommand("partitions", "dump a partition stream, one per line");
    part_cmd->add_option("--kind", part.kind, "fixed | distinct | parity | level1");
    part_cmd->add_option("--w", part.w, "target weight")->required();
    part_cmd->add_option("--t", part.t, "part count (fixed)");
    part_cmd->add_option("--p-max", part.p_max, "largest allowed part (default w)");
    part_cmd->add_option("--parity", part.parity, "odd | even | any (parity kind)");
    part_cmd->add_option("--constraints", part.constraints, "level1: one of o/e/u per segment");
    part_cmd->add_option("--caps", part.caps, "level1: per-segment weight caps, comma list");
    part_cmd->add_option("--tau", part.taus, "level1: per-segment offsets, comma list");
    part_cmd->add_option("--out", part.out, "output path (default stdout)");

    std::string codes_out;
    CLI::App* codes_cmd = app.add_subcommand("codes", "list the built-in code registry");
    codes_cmd->add_option("--out", codes_out, "output path (default stdout)");

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = expand_config(args);
        std::reverse(args.begin(), args.end());  // CLI11's vector overload wants reversed args
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }

    try {
        if (sim_cmd->parsed()) return run_simulate(sim);
        if (dec_cmd->parsed()) return run_decode(dec);
        if (seg_cmd->parsed()) return run_segment(seg);
        if (part_cmd->parsed()) return run_partitions(part);
        if (codes_cmd->parsed()) return run_codes(codes_out);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
