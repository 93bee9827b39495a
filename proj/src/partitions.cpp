#include "grandlab/partitions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace grandlab {

FixedCountPartitions::FixedCountPartitions(long long w, int t, long long p_max)
    : w_(w), t_(t), p_max_(p_max) {
    if (t_ < 1 || w_ < tri(t_)) {
        done_ = true;
        return;
    }
    parts_.resize(t_);
    for (int i = 0; i < t_ - 1; ++i) parts_[i] = i + 1;
    parts_[t_ - 1] = w_ - tri(t_ - 1);
    pending_ = true;
}

bool FixedCountPartitions::next(std::vector<long long>& out) {
    while (!done_) {
        if (pending_) {
            pending_ = false;
            if (parts_[t_ - 1] <= p_max_) {
                out = parts_;
                return true;
            }
            if (t_ >= 2) {
                fast_forward();
                if (pending_) continue;
            }
        }
        advance();
    }
    return false;
}

void FixedCountPartitions::advance() {
    if (t_ == 1) {
        done_ = true;
        return;
    }
    for (int i = 1; i <= t_ - 1; ++i) {
        int keep = t_ - 1 - i;
        long long base = parts_[keep];
        long long prefix = 0;
        for (int j = 0; j < keep; ++j) prefix += parts_[j];
        long long balance = w_ - prefix - (i * base + tri(i));
        if (base + i < balance) {
            for (int j = 0; j < i; ++j) parts_[keep + j] = base + 1 + j;
            parts_[t_ - 1] = balance;
            pending_ = true;
            return;
        }
    }
    done_ = true;
}

void FixedCountPartitions::fast_forward() {
    // Inside an increment-and-decrement run the states are
    // (.., prev + s, last - s) for s = 1, 2, ...; jump straight to the first
    // state whose trailing part fits under p_max, or to the end of the run.
    long long last = parts_[t_ - 1];
    long long prev = parts_[t_ - 2];
    long long d = last - p_max_;
    if (d <= 0) return;
    if (prev + d < last - d) {
        parts_[t_ - 2] = prev + d;
        parts_[t_ - 1] = last - d;
        pending_ = true;
    } else {
        long long smax = (last - prev - 1) / 2;
        if (smax > 0) {
            parts_[t_ - 2] = prev + smax;
            parts_[t_ - 1] = last - smax;
        }
        // not pending: nothing in this run fits, let advance() re-initialize
    }
}

namespace {

// Largest feasible part count: t parts need at least tri(t) and can reach at
// most t*p_max - tri(t-1).
bool t_feasible(long long w, int t, long long p_max) {
    long long tri_t = static_cast<long long>(t) * (t + 1) / 2;
    if (w < tri_t) return false;
    long long max_sum = static_cast<long long>(t) * p_max - static_cast<long long>(t) * (t - 1) / 2;
    return w <= max_sum;
}

int t_upper_bound(long long w, long long p_max, std::optional<int> max_parts) {
    int limit = 0;
    while (static_cast<long long>(limit + 1) * (limit + 2) / 2 <= w && limit + 1 <= p_max) ++limit;
    if (max_parts && *max_parts < limit) limit = *max_parts;
    return limit;
}

}  // namespace

DistinctPartitions::DistinctPartitions(long long w, long long p_max, std::optional<int> max_parts)
    : w_(w), p_max_(p_max), t_limit_(t_upper_bound(w, p_max, max_parts)) {
    if (w_ < 0) done_ = true;
}

bool DistinctPartitions::open_next_t() {
    while (t_ < t_limit_) {
        ++t_;
        if (!t_feasible(w_, t_, p_max_)) continue;
        cur_.emplace(w_, t_, p_max_);
        return true;
    }
    return false;
}

bool DistinctPartitions::next(std::vector<long long>& out) {
    if (done_) return false;
    if (w_ == 0) {
        done_ = true;
        if (!empty_emitted_) {
            empty_emitted_ = true;
            out.clear();
            return true;
        }
        return false;
    }
    while (true) {
        if (cur_ && cur_->next(out)) return true;
        cur_.reset();
        if (!open_next_t()) {
            done_ = true;
            return false;
        }
    }
}

ParityPartitions::ParityPartitions(long long w, PartParity parity, long long p_max, std::optional<int> max_parts)
    : w_(w), p_max_(p_max), parity_(parity), t_limit_(t_upper_bound(w, p_max, max_parts)) {
    t_ = 0;
    if (w_ < 0) done_ = true;
}

bool ParityPartitions::open_next_t() {
    while (t_ < t_limit_) {
        ++t_;
        if (parity_ == PartParity::Odd && t_ % 2 == 0) continue;
        if (parity_ == PartParity::Even && t_ % 2 == 1) continue;
        if (!t_feasible(w_, t_, p_max_)) continue;
        cur_.emplace(w_, t_, p_max_);
        return true;
    }
    return false;
}

bool ParityPartitions::next(std::vector<long long>& out) {
    if (done_) return false;
    if (w_ == 0) {
        done_ = true;
        // zero parts is an even (and vacuously "any") count
        if (parity_ != PartParity::Odd && !empty_emitted_) {
            empty_emitted_ = true;
            out.clear();
            return true;
        }
        return false;
    }
    while (true) {
        if (cur_ && cur_->next(out)) return true;
        cur_.reset();
        if (!open_next_t()) {
            done_ = true;
            return false;
        }
    }
}

long long min_subweight(SegWeightParity parity) { return parity == SegWeightParity::Even ? 3 : 1; }

std::vector<PatternBase> enumerate_bases(const std::vector<SegWeightParity>& parities,
                                         const std::vector<long long>& lows) {
    if (parities.size() != lows.size()) throw std::invalid_argument("enumerate_bases: size mismatch");
    size_t p = parities.size();
    std::vector<int> free_idx;
    for (size_t j = 0; j < p; ++j)
        if (parities[j] != SegWeightParity::Odd) free_idx.push_back(static_cast<int>(j));

    std::vector<PatternBase> bases;
    for (uint64_t bits = 0; bits < (uint64_t(1) << free_idx.size()); ++bits) {
        PatternBase b;
        b.f.assign(p, 1);
        for (size_t q = 0; q < free_idx.size(); ++q)
            if (!((bits >> q) & 1)) b.f[free_idx[q]] = 0;
        for (size_t j = 0; j < p; ++j)
            if (b.f[j]) b.min_total += lows[j];
        bases.push_back(std::move(b));
    }
    std::sort(bases.begin(), bases.end(), [](const PatternBase& a, const PatternBase& b) {
        if (a.min_total != b.min_total) return a.min_total < b.min_total;
        return a.f < b.f;
    });
    return bases;
}

SubWeightCompositions::SubWeightCompositions(long long w_total, const std::vector<PatternBase>& bases,
                                             const std::vector<long long>& lows,
                                             const std::vector<long long>& highs)
    : w_total_(w_total), bases_(&bases), lows_(lows), highs_(highs) {
    if (lows_.size() != highs_.size()) throw std::invalid_argument("SubWeightCompositions: size mismatch");
}

bool SubWeightCompositions::fill_min_from(size_t q, long long budget) {
    // set positions q..end to their smallest lexicographic values
    for (size_t i = q; i < active_.size(); ++i) {
        long long lo = lows_[active_[i]];
        long long hi = highs_[active_[i]];
        long long v;
        if (i + 1 == active_.size()) {
            v = budget;
        } else {
            v = std::max(lo, budget - suffix_hi_[i + 1]);
            if (budget - v < suffix_lo_[i + 1]) return false;
        }
        if (v < lo || v > hi) return false;
        vals_[i] = v;
        budget -= v;
    }
    return budget == 0;
}

bool SubWeightCompositions::init_composition() {
    const PatternBase& b = (*bases_)[base_idx_];
    active_.clear();
    for (size_t j = 0; j < b.f.size(); ++j)
        if (b.f[j]) active_.push_back(static_cast<int>(j));
    if (active_.empty()) return false;  // all-frozen base carries weight 0 only

    size_t m = active_.size();
    vals_.assign(m, 0);
    suffix_lo_.assign(m + 1, 0);
    suffix_hi_.assign(m + 1, 0);
    for (size_t i = m; i-- > 0;) {
        suffix_lo_[i] = suffix_lo_[i + 1] + lows_[active_[i]];
        suffix_hi_[i] = suffix_hi_[i + 1] + highs_[active_[i]];
    }
    if (w_total_ < suffix_lo_[0] || w_total_ > suffix_hi_[0]) return false;
    return fill_min_from(0, w_total_);
}

bool SubWeightCompositions::advance_composition() {
    size_t m = active_.size();
    if (m <= 1) return false;
    // bump the deepest position before the balance slot; values skipped by the
    // jump to `cand` have no feasible tail completion
    for (size_t q = m - 1; q-- > 0;) {
        long long prefix = 0;
        for (size_t i = 0; i < q; ++i) prefix += vals_[i];
        long long budget_q = w_total_ - prefix;
        long long cand = std::max(vals_[q] + 1, budget_q - suffix_hi_[q + 1]);
        if (cand <= std::min(highs_[active_[q]], budget_q - suffix_lo_[q + 1])) {
            vals_[q] = cand;
            fill_min_from(q + 1, budget_q - cand);
            return true;
        }
    }
    return false;
}

bool SubWeightCompositions::open_base() {
    while (base_idx_ < bases_->size()) {
        if ((*bases_)[base_idx_].min_total <= w_total_ && init_composition()) {
            base_open_ = true;
            return true;
        }
        ++base_idx_;
    }
    return false;
}

bool SubWeightCompositions::next(std::vector<long long>& w, int* base_index) {
    while (true) {
        if (!base_open_) {
            if (!open_base()) return false;
        } else if (!advance_composition()) {
            base_open_ = false;
            ++base_idx_;
            continue;
        }
        w.assign(lows_.size(), 0);
        for (size_t i = 0; i < active_.size(); ++i) w[active_[i]] = vals_[i];
        if (base_index) *base_index = static_cast<int>(base_idx_);
        return true;
    }
}

std::vector<long long> tuning_taus(const std::vector<long long>& low_counts, double rho,
                                   const std::vector<double>& mu_e) {
    if (rho <= 0.0) throw std::invalid_argument("tuning: rho must be > 0");
    if (low_counts.size() != mu_e.size()) throw std::invalid_argument("tuning: size mismatch");
    long long a_max = *std::max_element(low_counts.begin(), low_counts.end());
    std::vector<long long> tau(low_counts.size());
    for (size_t j = 0; j < low_counts.size(); ++j) {
        double denom = rho * mu_e[j];
        if (!(denom > 0.0)) throw std::invalid_argument("tuning: nonpositive mu_e");
        tau[j] = static_cast<long long>(std::ceil(static_cast<double>(a_max - low_counts[j]) / denom));
        if (tau[j] < 0) tau[j] = 0;
    }
    return tau;
}

TuningOffsets tuning_offsets(const std::vector<long long>& low_counts, double eps, double rho, double sigma,
                             const std::vector<long long>& segment_lengths,
                             const std::vector<SegWeightParity>& parities) {
    size_t p = low_counts.size();
    if (segment_lengths.size() != p || parities.size() != p)
        throw std::invalid_argument("tuning_offsets: size mismatch");
    std::vector<double> mu(p);
    for (size_t j = 0; j < p; ++j) mu[j] = expected_low_reliability_errors(segment_lengths[j], eps, sigma);
    TuningOffsets out;
    out.eps = eps;
    out.rho = rho;
    out.sigma = sigma;
    out.tau = tuning_taus(low_counts, rho, mu);
    out.kappa.resize(p);
    for (size_t j = 0; j < p; ++j) out.kappa[j] = min_subweight(parities[j]) + out.tau[j];
    return out;
}

double low_reliability_probability(double eps, double sigma) {
    if (eps <= 0.0 || sigma <= 0.0) throw std::invalid_argument("tuning: eps and sigma must be > 0");
    auto Phi = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
    return Phi((eps - 1.0) / sigma) - Phi((-eps - 1.0) / sigma);
}

double expected_low_reliability_errors(long long segment_length, double eps, double sigma) {
    return static_cast<double>(segment_length) * 2.0 * low_reliability_probability(eps, sigma);
}

}  // namespace grandlab
