#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grandlab/code.hpp"
#include "grandlab/decode.hpp"
#include "grandlab/segmentation.hpp"

namespace grandlab {

// sigma = sqrt(1 / (2 R 10^(EbN0/10))) for BPSK with code rate R.
double ebno_to_sigma(double ebno_db, double rate);

// r_i = x(c_i) + N(0, sigma^2), one stream per (seed, stream id).
std::vector<double> awgn_bpsk(const BitVec& c, double sigma, uint64_t seed, uint64_t stream);

enum class DecoderKind { Orbgrand, SegOrbgrand };
std::string decoder_name(DecoderKind kind);
DecoderKind decoder_from_name(const std::string& name);

struct TuningConfig {
    double eps = 0.2;
    double rho = 0.3;
};

struct TrialConfig {
    std::string code_name;
    DecoderKind decoder = DecoderKind::Orbgrand;
    int max_segments = 3;          // "auto" default; 1 degenerates to plain order
    std::vector<double> ebno_db;
    uint64_t max_queries = 100000;  // abandonment threshold b
    uint64_t trials = 10000;
    uint64_t max_trials = 0;        // 0: no auto-extension; otherwise extend in
                                    // 1000-trial blocks until >= 50 block errors
    uint64_t seed = 1;
    std::optional<TuningConfig> tuning;
    std::optional<int> hamming_weight_cap;
    int threads = 0;                // 0: hardware concurrency
};

struct PointReport {
    double ebno_db = 0.0;
    uint64_t trials = 0;
    uint64_t block_errors = 0;
    uint64_t miscorrections = 0;
    uint64_t abandons = 0;
    double bler = 0.0;
    double bler_wilson_lo = 0.0;
    double bler_wilson_hi = 0.0;
    double avg_queries = 0.0;
    uint64_t p50_queries = 0;
    uint64_t p95_queries = 0;
    double wall_seconds = 0.0;
};

struct SimReport {
    TrialConfig config;
    int n = 0, k = 0;
    int segments_used = 1;
    std::vector<PointReport> points;
};

SimReport run_trials(const TrialConfig& cfg);

// Exact CSV rendering (one row per SNR point):
// code,n,k,decoder,segments,ebno_db,b,trials,block_errors,miscorrections,
// abandons,bler,avg_queries,p50_queries,p95_queries,seed
std::string to_csv(const SimReport& report);

// Wilson 95% score interval for a binomial proportion.
struct Wilson {
    double lo = 0.0, hi = 0.0;
};
Wilson wilson_interval(uint64_t successes, uint64_t trials, double z = 1.959963984540054);

// Distribution of the n/2 least reliable coordinates across segments.
struct SegmentReliabilityStats {
    std::vector<double> mean;                      // per segment
    std::vector<double> stddev;                    // per segment (population)
    std::vector<std::map<int, uint64_t>> histogram;  // count -> occurrences
};
SegmentReliabilityStats segment_reliability_stats(const LinearCode& code, const Segmentation& seg, double sigma,
                                                  uint64_t trials, uint64_t seed);

// Bitonic sorter stage count (1/2) log2(n) (1 + log2(n)); n must be a power of two.
int bitonic_stages(int n);

// Queries-to-first-valid-codeword distribution at one SNR point.
struct QueryHistogram {
    std::map<uint64_t, uint64_t> freq;
    uint64_t trials = 0;
    double fraction_above(uint64_t threshold) const;
};
QueryHistogram query_histogram(const TrialConfig& cfg, double ebno_db);

}  // namespace grandlab
