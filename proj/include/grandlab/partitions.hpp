#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace grandlab {

// Integer partitions into strictly increasing positive parts, emitted as
// sorted part lists. All generators are lazy single-owner iterators; next()
// returns false when the stream is exhausted.

// Partitions of w into exactly t distinct parts, each <= p_max, in the order
// of the non-recursive increment-and-decrement / re-initialization procedure:
// start from [1, 2, ..., t-1, w - t(t-1)/2], then repeatedly bump the deepest
// prefix that leaves room for a strictly larger trailing balance. States whose
// trailing part exceeds p_max are skipped (with an O(1) fast-forward inside
// an increment-and-decrement run).
class FixedCountPartitions {
  public:
    FixedCountPartitions(long long w, int t, long long p_max);
    bool next(std::vector<long long>& out);

  private:
    void advance();
    void fast_forward();
    static long long tri(long long x) { return x * (x + 1) / 2; }

    long long w_;
    int t_;
    long long p_max_;
    std::vector<long long> parts_;
    bool pending_ = false;
    bool done_ = false;
};

// All distinct-part partitions of w with parts <= p_max: the union over
// t = 1, 2, ... of FixedCountPartitions, ascending t. w = 0 yields the empty
// partition once. max_parts optionally caps t (Hamming-weight cap).
class DistinctPartitions {
  public:
    DistinctPartitions(long long w, long long p_max, std::optional<int> max_parts = std::nullopt);
    bool next(std::vector<long long>& out);

  private:
    bool open_next_t();

    long long w_;
    long long p_max_;
    int t_ = 0;
    int t_limit_;
    bool empty_emitted_ = false;
    bool done_ = false;
    std::optional<FixedCountPartitions> cur_;
};

enum class PartParity { Odd, Even, Any };

// Distinct-part partitions of w restricted to an odd/even/any number of
// parts, ascending part count. Even at w = 0 yields the empty partition (the
// "no errors" sub-pattern); Odd at w = 0 yields nothing.
class ParityPartitions {
  public:
    ParityPartitions(long long w, PartParity parity, long long p_max, std::optional<int> max_parts = std::nullopt);
    bool next(std::vector<long long>& out);

  private:
    bool open_next_t();

    long long w_;
    long long p_max_;
    PartParity parity_;
    int t_;
    int t_limit_;
    bool empty_emitted_ = false;
    bool done_ = false;
    std::optional<FixedCountPartitions> cur_;
};

// Per-segment constraint as seen by the weight machinery.
enum class SegWeightParity { Odd, Even, Any };

// Minimum nonzero sub-weight a segment can contribute: 1 when its sub-pattern
// weight must be odd (or is unconstrained), 3 when it must be even (the two
// most probable erroneous positions give 1 + 2).
long long min_subweight(SegWeightParity parity);

// An error-pattern base: which segments contribute a nonempty sub-pattern.
struct PatternBase {
    std::vector<uint8_t> f;  // one flag per segment
    long long min_total = 0;  // sum over active segments of their minimum sub-weight
};

// All bases for the given constraints: f_j forced to 1 where the parity is
// Odd, free otherwise; min_total uses lows[j] (minimum sub-weight, offsets
// included). Sorted by ascending min_total, ties by lexicographic f.
std::vector<PatternBase> enumerate_bases(const std::vector<SegWeightParity>& parities,
                                         const std::vector<long long>& lows);

// Level-1 partitioning: sub-weight vectors summing to w_total, iterating the
// bases in order and, per base, the compositions in lexicographic order.
// Active segments range over [lows[j], highs[j]]; frozen segments are 0.
class SubWeightCompositions {
  public:
    SubWeightCompositions(long long w_total, const std::vector<PatternBase>& bases,
                          const std::vector<long long>& lows, const std::vector<long long>& highs);
    // w receives the full p-length vector; base_index the active base.
    bool next(std::vector<long long>& w, int* base_index = nullptr);

  private:
    bool open_base();
    bool init_composition();
    bool advance_composition();
    bool fill_min_from(size_t q, long long budget);

    long long w_total_;
    const std::vector<PatternBase>* bases_;
    std::vector<long long> lows_, highs_;
    size_t base_idx_ = 0;
    bool base_open_ = false;
    std::vector<int> active_;          // active segment indices of the open base
    std::vector<long long> vals_;      // current values at active positions
    std::vector<long long> suffix_lo_, suffix_hi_;
};

// Initialization offsets from low-reliability counts (tau_j in the tuning
// rule): tau_j = ceil((max_i a_i - a_j) / (rho * mu_e_j)). rho must be > 0.
std::vector<long long> tuning_taus(const std::vector<long long>& low_counts, double rho,
                                   const std::vector<double>& mu_e);

// Full tuning rule: mu_e_j = L_j * 2 P(|r| < eps) under a Gaussian with mean 1
// and std sigma, then the tau_j offsets above. kappa_j = min sub-weight + tau_j
// is the starting sub-weight of segment j.
struct TuningOffsets {
    std::vector<long long> tau;
    std::vector<long long> kappa;
    double eps = 0.0, rho = 0.0, sigma = 0.0;
};
TuningOffsets tuning_offsets(const std::vector<long long>& low_counts, double eps, double rho, double sigma,
                             const std::vector<long long>& segment_lengths,
                             const std::vector<SegWeightParity>& parities);

// Expected per-segment error count mu_e = L * 2 P(|r| < eps) for a Gaussian
// with mean 1 and standard deviation sigma.
double expected_low_reliability_errors(long long segment_length, double eps, double sigma);

// P(|r| < eps) itself, exposed for tests.
double low_reliability_probability(double eps, double sigma);

}  // namespace grandlab
