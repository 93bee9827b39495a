#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "grandlab/code.hpp"
#include "grandlab/partitions.hpp"
#include "grandlab/segmentation.hpp"

namespace grandlab {

// Ascending-|r| orderings of the received coordinates, globally and within
// each segment. Ties break on ascending coordinate index.
struct ReliabilityOrder {
    std::vector<int> global;               // rank (0-based) -> coordinate (0-based)
    std::vector<std::vector<int>> local;   // per segment, same convention

    std::vector<int> global_1based() const;
    std::vector<int> local_1based(int segment) const;
};

ReliabilityOrder reliability_order(std::span<const double> r, const Segmentation* seg = nullptr);

// BPSK map x(0) = +1, x(1) = -1.
double bpsk(bool bit);
// theta(r): 0 for r >= 0, 1 otherwise.
BitVec hard_decision(std::span<const double> r);

// Squared Euclidean distance between r and the modulated word.
double sed(std::span<const double> r, const BitVec& word);

// w_L(z) = sum of i * z_i over 1-based positions.
long long logistic_weight(const BitVec& z);

struct DecodeResult {
    std::optional<BitVec> codeword;
    uint64_t queries = 0;  // membership checks; the hard-decision check is query 0
    bool abandoned = false;
    std::optional<double> sed;
    std::optional<long long> w_l;  // sweep weight at success
};

struct TuningParams {
    double eps = 0.2;
    double rho = 0.3;
    double sigma = 0.5;  // channel noise standard deviation
};

struct DecodeOptions {
    uint64_t max_queries = 1'000'000;
    std::optional<TuningParams> tuning;        // segmented decoder only
    std::optional<int> hamming_weight_cap;     // optional restriction on pattern weight
};

DecodeResult orbgrand(const LinearCode& code, std::span<const double> r, const DecodeOptions& opt);
DecodeResult segmented_orbgrand(const LinearCode& code, const Segmentation& seg, std::span<const double> r,
                                const DecodeOptions& opt);

// Exhaustive 2^k scan; k <= 22. Ties broken toward the lexicographically
// smaller codeword.
struct MlResult {
    BitVec codeword;
    double sed = 0.0;
};
MlResult ml_bruteforce(const LinearCode& code, std::span<const double> r);

// Under synthetic equidistant reliabilities |r_(i)| = i * delta, every pattern
// of a given logistic weight moves the SED by the same amount w_L * 4 * delta.
// Verifies the equality over all patterns (1e-9 relative) and returns the
// common increment.
double equidistant_sed_check(int n, double delta, long long w_l);

// The raw pattern streams behind the decoders, exposed for exhaustiveness and
// ordering tests. Both emit 0-based coordinate sets.

class PlainPatternStream {
  public:
    PlainPatternStream(int n, const std::vector<int>& rank_to_coord, std::optional<int> hamming_cap = std::nullopt);
    // Sweeps w_L = 1 .. n(n+1)/2; false when exhausted.
    bool next(std::vector<int>& coords, long long* w_l = nullptr);

  private:
    int n_;
    std::vector<int> rank_to_coord_;
    std::optional<int> cap_;
    long long w_ = 0;
    long long w_max_;
    std::optional<DistinctPartitions> cur_;
    std::vector<long long> parts_;
};

struct SegmentPlan {
    SegWeightParity parity = SegWeightParity::Any;
    long long tau = 0;
    std::vector<int> rank_to_coord;  // local rank (0-based) -> global coordinate (0-based)
};

class SegmentedPatternStream {
  public:
    explicit SegmentedPatternStream(std::vector<SegmentPlan> plans, std::optional<int> hamming_cap = std::nullopt);
    bool next(std::vector<int>& coords, long long* w_l = nullptr);

  private:
    bool open_level1_vector();
    bool advance_product();
    void assemble(std::vector<int>& coords) const;
    long long segment_cap(size_t j) const;

    std::vector<SegmentPlan> plans_;
    std::optional<int> cap_;
    std::vector<long long> lows_, highs_;
    std::vector<PatternBase> bases_;
    long long w_ = 0;
    long long w_max_ = 0;
    std::optional<SubWeightCompositions> level1_;
    std::vector<long long> subweights_;
    // product state over active segments
    std::vector<int> active_;
    std::vector<ParityPartitions> gens_;
    std::vector<std::vector<long long>> cur_parts_;
    bool product_open_ = false;
};

}  // namespace grandlab
