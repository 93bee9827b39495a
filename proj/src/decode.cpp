#include "grandlab/decode.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace grandlab {

std::vector<int> ReliabilityOrder::global_1based() const {
    std::vector<int> out(global.size());
    for (size_t i = 0; i < global.size(); ++i) out[i] = global[i] + 1;
    return out;
}

std::vector<int> ReliabilityOrder::local_1based(int segment) const {
    const auto& l = local.at(segment);
    std::vector<int> out(l.size());
    for (size_t i = 0; i < l.size(); ++i) out[i] = l[i] + 1;
    return out;
}

ReliabilityOrder reliability_order(std::span<const double> r, const Segmentation* seg) {
    ReliabilityOrder out;
    int n = static_cast<int>(r.size());
    out.global.resize(n);
    std::iota(out.global.begin(), out.global.end(), 0);
    std::sort(out.global.begin(), out.global.end(), [&](int a, int b) {
        double fa = std::fabs(r[a]), fb = std::fabs(r[b]);
        if (fa != fb) return fa < fb;
        return a < b;
    });
    if (seg) {
        if (seg->n != n) throw std::invalid_argument("reliability_order: segmentation length mismatch");
        std::vector<int> seg_of(n, -1);
        for (size_t s = 0; s < seg->segments.size(); ++s)
            for (int c : seg->segments[s].coords) seg_of[c - 1] = static_cast<int>(s);
        out.local.resize(seg->segments.size());
        for (int coord : out.global) out.local[seg_of[coord]].push_back(coord);
    }
    return out;
}

double bpsk(bool bit) { return bit ? -1.0 : 1.0; }

BitVec hard_decision(std::span<const double> r) {
    BitVec y(static_cast<int>(r.size()));
    for (size_t i = 0; i < r.size(); ++i)
        if (r[i] < 0.0) y.set(static_cast<int>(i) + 1, true);
    return y;
}

double sed(std::span<const double> r, const BitVec& word) {
    if (static_cast<int>(r.size()) != word.length()) throw std::invalid_argument("sed: length mismatch");
    double acc = 0.0;
    for (size_t i = 0; i < r.size(); ++i) {
        double d = r[i] - bpsk(word.get(static_cast<int>(i) + 1));
        acc += d * d;
    }
    return acc;
}

long long logistic_weight(const BitVec& z) {
    long long w = 0;
    for (int i : z.support()) w += i;
    return w;
}

namespace {

// H columns packed into words for incremental syndrome updates: checking a
// pattern costs one column XOR per flipped coordinate.
class SyndromeChecker {
  public:
    explicit SyndromeChecker(const BitMatrix& H)
        : rows_(H.rows()), words_((rows_ + 63) / 64), cols_(static_cast<size_t>(H.cols()) * words_, 0) {
        for (int i = 1; i <= H.rows(); ++i)
            for (int j : H.row(i).support())
                cols_[static_cast<size_t>(j - 1) * words_ + (i - 1) / 64] |= uint64_t(1) << ((i - 1) % 64);
    }

    std::vector<uint64_t> syndrome_words(const BitVec& v) const {
        std::vector<uint64_t> s(words_, 0);
        for (int j : v.support()) add(s.data(), j - 1);
        return s;
    }

    void add(uint64_t* s, int coord) const {
        const uint64_t* col = cols_.data() + static_cast<size_t>(coord) * words_;
        for (int w = 0; w < words_; ++w) s[w] ^= col[w];
    }

    bool is_zero(const uint64_t* s) const {
        for (int w = 0; w < words_; ++w)
            if (s[w]) return false;
        return true;
    }

    int words() const { return words_; }

  private:
    int rows_;
    int words_;
    std::vector<uint64_t> cols_;
};

struct SweepState {
    const SyndromeChecker& checker;
    std::vector<uint64_t> base_syndrome;  // H * y
    std::vector<uint64_t> scratch;
    uint64_t queries = 0;
    uint64_t budget;

    SweepState(const SyndromeChecker& c, std::vector<uint64_t> base, uint64_t b)
        : checker(c), base_syndrome(std::move(base)), scratch(base_syndrome.size()), budget(b) {}

    // one membership check; true when the pattern closes the syndrome
    bool query(const std::vector<int>& coords) {
        ++queries;
        scratch = base_syndrome;
        for (int c : coords) checker.add(scratch.data(), c);
        return checker.is_zero(scratch.data());
    }
    bool exhausted() const { return queries >= budget; }
};

DecodeResult finish_success(std::span<const double> r, const BitVec& y, const std::vector<int>& coords,
                            uint64_t queries, long long w_l) {
    DecodeResult res;
    BitVec c = y;
    for (int coord : coords) c.flip(coord + 1);
    res.codeword = c;
    res.queries = queries;
    res.sed = sed(r, c);
    res.w_l = w_l;
    return res;
}

}  // namespace

PlainPatternStream::PlainPatternStream(int n, const std::vector<int>& rank_to_coord, std::optional<int> hamming_cap)
    : n_(n), rank_to_coord_(rank_to_coord), cap_(hamming_cap), w_max_(static_cast<long long>(n) * (n + 1) / 2) {
    if (static_cast<int>(rank_to_coord_.size()) != n) throw std::invalid_argument("PlainPatternStream: bad order");
}

bool PlainPatternStream::next(std::vector<int>& coords, long long* w_l) {
    while (true) {
        if (cur_ && cur_->next(parts_)) {
            coords.clear();
            for (long long rank : parts_) coords.push_back(rank_to_coord_[static_cast<size_t>(rank) - 1]);
            if (w_l) *w_l = w_;
            return true;
        }
        if (w_ >= w_max_) return false;
        ++w_;
        cur_.emplace(w_, n_, cap_);
    }
}

SegmentedPatternStream::SegmentedPatternStream(std::vector<SegmentPlan> plans, std::optional<int> hamming_cap)
    : plans_(std::move(plans)), cap_(hamming_cap) {
    size_t p = plans_.size();
    if (p == 0) throw std::invalid_argument("SegmentedPatternStream: no segments");
    std::vector<SegWeightParity> parities(p);
    lows_.resize(p);
    highs_.resize(p);
    for (size_t j = 0; j < p; ++j) {
        parities[j] = plans_[j].parity;
        lows_[j] = min_subweight(plans_[j].parity) + plans_[j].tau;
        highs_[j] = segment_cap(j) + plans_[j].tau;
        w_max_ += highs_[j];
    }
    bases_ = enumerate_bases(parities, lows_);
}

long long SegmentedPatternStream::segment_cap(size_t j) const {
    long long L = static_cast<long long>(plans_[j].rank_to_coord.size());
    return L * (L + 1) / 2;
}

bool SegmentedPatternStream::open_level1_vector() {
    while (true) {
        if (level1_ && level1_->next(subweights_)) {
            active_.clear();
            for (size_t j = 0; j < subweights_.size(); ++j)
                if (subweights_[j] > 0) active_.push_back(static_cast<int>(j));
            gens_.clear();
            cur_parts_.assign(active_.size(), {});
            bool ok = true;
            for (size_t q = 0; q < active_.size(); ++q) {
                int j = active_[q];
                PartParity pp = plans_[j].parity == SegWeightParity::Odd    ? PartParity::Odd
                                : plans_[j].parity == SegWeightParity::Even ? PartParity::Even
                                                                            : PartParity::Any;
                gens_.emplace_back(subweights_[j] - plans_[j].tau, pp,
                                   static_cast<long long>(plans_[j].rank_to_coord.size()), cap_);
                if (!gens_.back().next(cur_parts_[q])) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            product_open_ = true;
            return true;
        }
        if (w_ >= w_max_) return false;
        ++w_;
        level1_.emplace(w_, bases_, lows_, highs_);
    }
}

bool SegmentedPatternStream::advance_product() {
    // first active segment cycles fastest
    for (size_t q = 0; q < active_.size(); ++q) {
        if (gens_[q].next(cur_parts_[q])) return true;
        int j = active_[q];
        PartParity pp = plans_[j].parity == SegWeightParity::Odd    ? PartParity::Odd
                        : plans_[j].parity == SegWeightParity::Even ? PartParity::Even
                                                                    : PartParity::Any;
        gens_[q] = ParityPartitions(subweights_[j] - plans_[j].tau, pp,
                                    static_cast<long long>(plans_[j].rank_to_coord.size()), cap_);
        gens_[q].next(cur_parts_[q]);  // nonempty: it already produced items this cycle
    }
    return false;
}

void SegmentedPatternStream::assemble(std::vector<int>& coords) const {
    coords.clear();
    for (size_t q = 0; q < active_.size(); ++q) {
        const auto& map = plans_[active_[q]].rank_to_coord;
        for (long long rank : cur_parts_[q]) coords.push_back(map[static_cast<size_t>(rank) - 1]);
    }
}

bool SegmentedPatternStream::next(std::vector<int>& coords, long long* w_l) {
    while (true) {
        if (product_open_) {
            if (cap_) {
                size_t total = 0;
                for (const auto& parts : cur_parts_) total += parts.size();
                if (static_cast<int>(total) > *cap_) {
                    if (!advance_product()) product_open_ = false;
                    continue;
                }
            }
            assemble(coords);
            if (w_l) *w_l = w_;
            if (!advance_product()) product_open_ = false;
            return true;
        }
        if (!open_level1_vector()) return false;
    }
}

DecodeResult orbgrand(const LinearCode& code, std::span<const double> r, const DecodeOptions& opt) {
    if (static_cast<int>(r.size()) != code.n) throw std::invalid_argument("orbgrand: received length != n");
    if (opt.max_queries < 1) throw std::invalid_argument("orbgrand: max_queries must be >= 1");
    BitVec y = hard_decision(r);
    SyndromeChecker checker(code.H);
    SweepState sweep(checker, checker.syndrome_words(y), opt.max_queries);
    if (checker.is_zero(sweep.base_syndrome.data()))
        return finish_success(r, y, {}, 0, 0);

    ReliabilityOrder order = reliability_order(r);
    PlainPatternStream stream(code.n, order.global, opt.hamming_weight_cap);
    std::vector<int> coords;
    long long w_l = 0;
    while (stream.next(coords, &w_l)) {
        if (sweep.query(coords)) return finish_success(r, y, coords, sweep.queries, w_l);
        if (sweep.exhausted()) {
            DecodeResult res;
            res.queries = sweep.queries;
            res.abandoned = true;
            return res;
        }
    }
    throw std::logic_error("orbgrand: pattern sweep exhausted without reaching a codeword");
}

DecodeResult segmented_orbgrand(const LinearCode& code, const Segmentation& seg, std::span<const double> r,
                                const DecodeOptions& opt) {
    if (static_cast<int>(r.size()) != code.n) throw std::invalid_argument("segmented_orbgrand: received length != n");
    if (seg.n != code.n) throw std::invalid_argument("segmented_orbgrand: segmentation for a different length");
    if (opt.max_queries < 1) throw std::invalid_argument("segmented_orbgrand: max_queries must be >= 1");

    BitVec y = hard_decision(r);
    SyndromeChecker checker(code.H);
    SweepState sweep(checker, checker.syndrome_words(y), opt.max_queries);
    if (checker.is_zero(sweep.base_syndrome.data()))
        return finish_success(r, y, {}, 0, 0);

    ReliabilityOrder order = reliability_order(r, &seg);
    BitVec gov = governed_syndrome(seg, y);
    std::vector<SegParity> constraints = segment_constraints(seg, gov);

    std::vector<SegmentPlan> plans(seg.segments.size());
    for (size_t j = 0; j < seg.segments.size(); ++j) {
        plans[j].parity = constraints[j] == SegParity::Odd    ? SegWeightParity::Odd
                          : constraints[j] == SegParity::Even ? SegWeightParity::Even
                                                              : SegWeightParity::Any;
        plans[j].rank_to_coord = order.local[j];
    }
    if (opt.tuning) {
        const auto& t = *opt.tuning;
        size_t p = seg.segments.size();
        std::vector<long long> counts(p, 0), lengths(p);
        std::vector<SegWeightParity> parities(p);
        for (size_t j = 0; j < p; ++j) {
            for (int c : seg.segments[j].coords)
                if (std::fabs(r[c - 1]) < t.eps) ++counts[j];
            lengths[j] = static_cast<long long>(seg.segments[j].coords.size());
            parities[j] = plans[j].parity;
        }
        TuningOffsets offsets = tuning_offsets(counts, t.eps, t.rho, t.sigma, lengths, parities);
        for (size_t j = 0; j < p; ++j) plans[j].tau = offsets.tau[j];
    }

    SegmentedPatternStream stream(std::move(plans), opt.hamming_weight_cap);
    std::vector<int> coords;
    long long w_l = 0;
    while (stream.next(coords, &w_l)) {
        if (sweep.query(coords)) return finish_success(r, y, coords, sweep.queries, w_l);
        if (sweep.exhausted()) {
            DecodeResult res;
            res.queries = sweep.queries;
            res.abandoned = true;
            return res;
        }
    }
    throw std::logic_error("segmented_orbgrand: pattern sweep exhausted without reaching a codeword");
}

MlResult ml_bruteforce(const LinearCode& code, std::span<const double> r) {
    if (code.k > 22) throw std::invalid_argument("ml_bruteforce: k too large (limit 22)");
    if (static_cast<int>(r.size()) != code.n) throw std::invalid_argument("ml_bruteforce: length mismatch");
    BitVec current(code.n);  // message 0 in Gray-code order
    MlResult best{current, sed(r, current)};
    uint64_t total = uint64_t(1) << code.k;
    for (uint64_t i = 1; i < total; ++i) {
        int flip_row = std::countr_zero(i);  // Gray code step
        current ^= code.G.row(flip_row + 1);
        double d = sed(r, current);
        if (d < best.sed || (d == best.sed && current.lex_less(best.codeword))) best = {current, d};
    }
    return best;
}

double equidistant_sed_check(int n, double delta, long long w_l) {
    if (w_l == 0) return 0.0;
    std::vector<double> r(n);
    for (int i = 0; i < n; ++i) r[i] = (i + 1) * delta;
    double base = sed(r, BitVec(n));
    DistinctPartitions gen(w_l, n);
    std::vector<long long> parts;
    std::optional<double> common;
    while (gen.next(parts)) {
        BitVec word(n);
        for (long long p : parts) word.set(static_cast<int>(p), true);
        double inc = sed(r, word) - base;
        if (!common)
            common = inc;
        else if (std::fabs(inc - *common) > 1e-9 * std::max(1.0, std::fabs(*common)))
            throw std::logic_error("equidistant_sed_check: increments differ within one logistic weight");
    }
    if (!common) throw std::invalid_argument("equidistant_sed_check: no pattern of the requested weight");
    return *common;
}

}  // namespace grandlab
