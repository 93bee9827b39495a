#include "grandlab/sim.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "grandlab/rng.hpp"

namespace grandlab {

double ebno_to_sigma(double ebno_db, double rate) {
    if (rate <= 0.0 || rate > 1.0) throw std::invalid_argument("ebno_to_sigma: rate outside (0, 1]");
    return std::sqrt(1.0 / (2.0 * rate * std::pow(10.0, ebno_db / 10.0)));
}

std::vector<double> awgn_bpsk(const BitVec& c, double sigma, uint64_t seed, uint64_t stream) {
    if (sigma <= 0.0) throw std::invalid_argument("awgn_bpsk: sigma must be > 0");
    TrialRng rng(seed, stream);
    std::vector<double> r(c.length());
    for (int i = 0; i < c.length(); ++i) r[i] = bpsk(c.get(i + 1)) + sigma * rng.next_gauss();
    return r;
}

std::string decoder_name(DecoderKind kind) {
    return kind == DecoderKind::Orbgrand ? "orbgrand" : "seg-orbgrand";
}

DecoderKind decoder_from_name(const std::string& name) {
    if (name == "orbgrand") return DecoderKind::Orbgrand;
    if (name == "seg-orbgrand") return DecoderKind::SegOrbgrand;
    throw std::invalid_argument("unknown decoder '" + name + "'");
}

Wilson wilson_interval(uint64_t successes, uint64_t trials, double z) {
    Wilson w;
    if (trials == 0) return {0.0, 1.0};
    double n = static_cast<double>(trials);
    double p = static_cast<double>(successes) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    w.lo = std::max(0.0, center - half);
    w.hi = std::min(1.0, center + half);
    return w;
}

namespace {

constexpr uint64_t kExtensionBlock = 1000;
constexpr uint64_t kTargetErrors = 50;

uint64_t point_stream(double ebno_db, uint64_t trial) {
    // keyed by the SNR value itself so reordering the sweep keeps results;
    // decoder choice is deliberately absent (paired noise across decoders)
    uint64_t salt = std::bit_cast<uint64_t>(ebno_db);
    return (salt * 0x9E3779B97F4A7C15ull) ^ trial;
}

BitVec random_message(TrialRng& rng, int k) {
    BitVec msg(k);
    for (int base = 0; base < k; base += 64) {
        uint64_t word = rng.next_u64();
        for (int b = 0; b < 64 && base + b < k; ++b)
            if ((word >> b) & 1) msg.set(base + b + 1, true);
    }
    return msg;
}

struct TrialOutcome {
    uint64_t queries = 0;
    uint8_t miscorrected = 0;
    uint8_t abandoned = 0;
};

struct PointRunner {
    const LinearCode& code;
    const Segmentation* seg;
    const TrialConfig& cfg;
    double ebno_db;
    double sigma;
    DecodeOptions opt;

    TrialOutcome run_one(uint64_t trial) const {
        uint64_t stream = point_stream(ebno_db, trial);
        TrialRng rng(cfg.seed, stream);
        BitVec msg = random_message(rng, code.k);
        BitVec c = encode(code, msg);
        std::vector<double> r(code.n);
        for (int i = 0; i < code.n; ++i) r[i] = bpsk(c.get(i + 1)) + sigma * rng.next_gauss();

        DecodeResult res = cfg.decoder == DecoderKind::Orbgrand ? orbgrand(code, r, opt)
                                                                : segmented_orbgrand(code, *seg, r, opt);
        TrialOutcome out;
        out.queries = res.queries;
        if (res.abandoned)
            out.abandoned = 1;
        else if (*res.codeword != c)
            out.miscorrected = 1;
        return out;
    }
};

// Runs trials [begin, end) across the worker pool; outcomes land at their
// trial index so aggregation order never depends on scheduling.
void run_range(const PointRunner& runner, uint64_t begin, uint64_t end, int threads,
               std::vector<TrialOutcome>& outcomes) {
    outcomes.resize(end - begin);
    if (threads <= 1) {
        for (uint64_t t = begin; t < end; ++t) outcomes[t - begin] = runner.run_one(t);
        return;
    }
    std::atomic<uint64_t> next(begin);
    auto work = [&] {
        while (true) {
            uint64_t t = next.fetch_add(1);
            if (t >= end) break;
            outcomes[t - begin] = runner.run_one(t);
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < threads - 1; ++i) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
}

uint64_t percentile(std::vector<uint64_t>& sorted_values, double q) {
    if (sorted_values.empty()) return 0;
    size_t idx = static_cast<size_t>(std::ceil(q * static_cast<double>(sorted_values.size())));
    if (idx > 0) --idx;
    return sorted_values[std::min(idx, sorted_values.size() - 1)];
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

}  // namespace

SimReport run_trials(const TrialConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("run_trials: trials must be >= 1");
    if (cfg.max_queries < 1) throw std::invalid_argument("run_trials: max-queries must be >= 1");
    if (cfg.ebno_db.empty()) throw std::invalid_argument("run_trials: no SNR points");
    for (double e : cfg.ebno_db)
        if (!std::isfinite(e)) throw std::invalid_argument("run_trials: non-finite Eb/N0");
    if (cfg.max_trials && cfg.max_trials < cfg.trials)
        throw std::invalid_argument("run_trials: max-trials below trials");

    const LinearCode& code = code_by_name(cfg.code_name);
    SimReport report;
    report.config = cfg;
    report.n = code.n;
    report.k = code.k;

    Segmentation seg;
    if (cfg.decoder == DecoderKind::SegOrbgrand) {
        seg = find_segments(code.H, cfg.max_segments);
        report.segments_used = seg.p();
    }

    int threads = resolve_threads(cfg.threads);

    for (double ebno : cfg.ebno_db) {
        auto t0 = std::chrono::steady_clock::now();
        double sigma = ebno_to_sigma(ebno, code.rate());
        PointRunner runner{code, &seg, cfg, ebno, sigma, {}};
        runner.opt.max_queries = cfg.max_queries;
        runner.opt.hamming_weight_cap = cfg.hamming_weight_cap;
        if (cfg.tuning && cfg.decoder == DecoderKind::SegOrbgrand)
            runner.opt.tuning = TuningParams{cfg.tuning->eps, cfg.tuning->rho, sigma};

        std::vector<TrialOutcome> outcomes;
        std::vector<uint64_t> queries;
        PointReport pt;
        pt.ebno_db = ebno;

        uint64_t done = 0;
        uint64_t target = cfg.trials;
        uint64_t cap = cfg.max_trials ? cfg.max_trials : cfg.trials;
        while (done < target) {
            run_range(runner, done, target, threads, outcomes);
            for (const auto& o : outcomes) {
                queries.push_back(o.queries);
                pt.miscorrections += o.miscorrected;
                pt.abandons += o.abandoned;
            }
            done = target;
            pt.block_errors = pt.miscorrections + pt.abandons;
            // extension rule checked at fixed block boundaries only
            if (pt.block_errors < kTargetErrors && done < cap)
                target = std::min(cap, done + kExtensionBlock);
        }
        pt.trials = done;
        pt.bler = static_cast<double>(pt.block_errors) / static_cast<double>(pt.trials);
        Wilson w = wilson_interval(pt.block_errors, pt.trials);
        pt.bler_wilson_lo = w.lo;
        pt.bler_wilson_hi = w.hi;
        long double sum = 0;
        for (uint64_t q : queries) sum += q;
        pt.avg_queries = static_cast<double>(sum / pt.trials);
        std::sort(queries.begin(), queries.end());
        pt.p50_queries = percentile(queries, 0.50);
        pt.p95_queries = percentile(queries, 0.95);
        pt.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report.points.push_back(pt);
    }
    return report;
}

std::string to_csv(const SimReport& report) {
    std::string out =
        "code,n,k,decoder,segments,ebno_db,b,trials,block_errors,miscorrections,abandons,bler,avg_queries,"
        "p50_queries,p95_queries,seed\n";
    char buf[512];
    for (const auto& pt : report.points) {
        std::snprintf(buf, sizeof(buf),
                      "%s,%d,%d,%s,%d,%.10g,%" PRIu64 ",%" PRIu64 ",%" PRIu64 ",%" PRIu64 ",%" PRIu64
                      ",%.10g,%.6f,%" PRIu64 ",%" PRIu64 ",%" PRIu64 "\n",
                      report.config.code_name.c_str(), report.n, report.k, decoder_name(report.config.decoder).c_str(),
                      report.segments_used, pt.ebno_db, report.config.max_queries, pt.trials, pt.block_errors,
                      pt.miscorrections, pt.abandons, pt.bler, pt.avg_queries, pt.p50_queries, pt.p95_queries,
                      report.config.seed);
        out += buf;
    }
    return out;
}

SegmentReliabilityStats segment_reliability_stats(const LinearCode& code, const Segmentation& seg, double sigma,
                                                  uint64_t trials, uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("segment_reliability_stats: trials must be >= 1");
    size_t p = seg.segments.size();
    std::vector<int> seg_of(code.n, -1);
    for (size_t s = 0; s < p; ++s)
        for (int c : seg.segments[s].coords) seg_of[c - 1] = static_cast<int>(s);

    SegmentReliabilityStats stats;
    stats.histogram.resize(p);
    std::vector<long double> sum(p, 0), sum_sq(p, 0);
    int half = code.n / 2;
    for (uint64_t t = 0; t < trials; ++t) {
        TrialRng rng(seed, t);
        BitVec msg = random_message(rng, code.k);
        BitVec c = encode(code, msg);
        std::vector<double> r(code.n);
        for (int i = 0; i < code.n; ++i) r[i] = bpsk(c.get(i + 1)) + sigma * rng.next_gauss();
        ReliabilityOrder order = reliability_order(r);
        std::vector<int> counts(p, 0);
        for (int rank = 0; rank < half; ++rank) ++counts[seg_of[order.global[rank]]];
        for (size_t s = 0; s < p; ++s) {
            ++stats.histogram[s][counts[s]];
            sum[s] += counts[s];
            sum_sq[s] += static_cast<long double>(counts[s]) * counts[s];
        }
    }
    stats.mean.resize(p);
    stats.stddev.resize(p);
    for (size_t s = 0; s < p; ++s) {
        long double m = sum[s] / trials;
        stats.mean[s] = static_cast<double>(m);
        stats.stddev[s] = static_cast<double>(std::sqrt(static_cast<double>(sum_sq[s] / trials - m * m)));
    }
    return stats;
}

int bitonic_stages(int n) {
    if (n < 2 || (n & (n - 1)) != 0) throw std::invalid_argument("bitonic_stages: n must be a power of two >= 2");
    int lg = std::countr_zero(static_cast<unsigned>(n));
    return lg * (1 + lg) / 2;
}

double QueryHistogram::fraction_above(uint64_t threshold) const {
    if (trials == 0) return 0.0;
    uint64_t above = 0;
    for (const auto& [q, count] : freq)
        if (q > threshold) above += count;
    return static_cast<double>(above) / static_cast<double>(trials);
}

QueryHistogram query_histogram(const TrialConfig& cfg, double ebno_db) {
    TrialConfig one = cfg;
    one.ebno_db = {ebno_db};
    one.max_trials = 0;

    const LinearCode& code = code_by_name(one.code_name);
    Segmentation seg;
    if (one.decoder == DecoderKind::SegOrbgrand) seg = find_segments(code.H, one.max_segments);
    double sigma = ebno_to_sigma(ebno_db, code.rate());
    PointRunner runner{code, &seg, one, ebno_db, sigma, {}};
    runner.opt.max_queries = one.max_queries;
    runner.opt.hamming_weight_cap = one.hamming_weight_cap;
    if (one.tuning && one.decoder == DecoderKind::SegOrbgrand)
        runner.opt.tuning = TuningParams{one.tuning->eps, one.tuning->rho, sigma};

    std::vector<TrialOutcome> outcomes;
    run_range(runner, 0, one.trials, resolve_threads(one.threads), outcomes);
    QueryHistogram h;
    h.trials = one.trials;
    for (const auto& o : outcomes) ++h.freq[o.queries];
    return h;
}

}  // namespace grandlab
