#include "grandlab/segmentation.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace grandlab {

int Segmentation::governed_count() const {
    int g = 0;
    for (const auto& s : segments)
        if (s.governed()) ++g;
    return g;
}

namespace {

struct Family {
    std::vector<int> members;  // pool indices
    int spread = 0;            // max - min segment size including the residual
};

// Size spread of a candidate family, counting the uncovered residual as one
// more segment when nonempty.
int family_spread(const std::vector<int>& sizes, int residual) {
    std::vector<int> all = sizes;
    if (residual > 0) all.push_back(residual);
    auto [lo, hi] = std::minmax_element(all.begin(), all.end());
    return *hi - *lo;
}

class PackingSearch {
  public:
    PackingSearch(const std::vector<BitVec>& pool, int n, int max_p)
        : pool_(pool), n_(n), max_p_(max_p) {}

    // Maximize governed-segment count subject to total segments <= max_p,
    // tie-break on most balanced sizes, then on first-found (pool order).
    std::vector<int> run() {
        std::vector<int> current;
        BitVec mask(n_);
        dfs(0, current, mask, 0);
        return best_;
    }

  private:
    void dfs(int start, std::vector<int>& current, BitVec& mask, int covered) {
        if (budget_-- <= 0) return;
        if (!current.empty()) consider(current, covered);
        if (static_cast<int>(current.size()) >= max_p_) return;
        for (int i = start; i < static_cast<int>(pool_.size()); ++i) {
            if (!mask.disjoint_with(pool_[i])) continue;
            int w = pool_[i].weight();
            current.push_back(i);
            mask ^= pool_[i];
            dfs(i + 1, current, mask, covered + w);
            mask ^= pool_[i];
            current.pop_back();
        }
    }

    void consider(const std::vector<int>& current, int covered) {
        int residual = n_ - covered;
        int g = static_cast<int>(current.size());
        int p = g + (residual > 0 ? 1 : 0);
        if (p > max_p_) return;
        std::vector<int> sizes;
        sizes.reserve(current.size());
        for (int i : current) sizes.push_back(pool_[i].weight());
        int spread = family_spread(sizes, residual);
        if (g > best_g_ || (g == best_g_ && spread < best_spread_)) {
            best_g_ = g;
            best_spread_ = spread;
            best_ = current;
        }
    }

    const std::vector<BitVec>& pool_;
    int n_;
    int max_p_;
    long long budget_ = 4'000'000;
    std::vector<int> best_;
    int best_g_ = 0;
    int best_spread_ = 0;
};

}  // namespace

Segmentation find_segments(const BitMatrix& H, int max_p) {
    if (max_p < 1) throw std::invalid_argument("find_segments: max_p must be >= 1");
    const int n = H.cols();

    Segmentation out;
    out.n = n;
    auto whole_unconstrained = [&] {
        Segmentation s;
        s.n = n;
        Segmentation::Segment seg;
        for (int i = 1; i <= n; ++i) seg.coords.push_back(i);
        s.segments.push_back(std::move(seg));
        return s;
    };
    if (max_p == 1 && !in_row_space(H, BitVec::ones(n))) return whole_unconstrained();

    // Candidate pool: rref rows, original rows, pairwise XORs of those, and
    // all-ones complements when the all-ones vector lies in the row space.
    RrefResult rr = H.rref();
    std::vector<BitVec> base;
    for (int i = 1; i <= static_cast<int>(rr.pivot_cols.size()); ++i) base.push_back(rr.mat.row(i));
    for (int i = 1; i <= H.rows(); ++i)
        if (H.row(i).any()) base.push_back(H.row(i));

    std::set<BitVec> pool_set(base.begin(), base.end());
    for (size_t i = 0; i < base.size(); ++i)
        for (size_t j = i + 1; j < base.size(); ++j) {
            BitVec x = base[i] ^ base[j];
            if (x.any()) pool_set.insert(std::move(x));
        }
    BitVec ones = BitVec::ones(n);
    if (in_row_space(H, ones)) {
        std::vector<BitVec> extra;
        extra.push_back(ones);
        for (const auto& v : pool_set) {
            BitVec c = v ^ ones;
            if (c.any()) extra.push_back(std::move(c));
        }
        for (auto& v : extra) pool_set.insert(std::move(v));
    }

    // Deterministic pool order: descending support size, then word order.
    std::vector<BitVec> pool(pool_set.begin(), pool_set.end());
    std::stable_sort(pool.begin(), pool.end(),
                     [](const BitVec& a, const BitVec& b) { return a.weight() > b.weight(); });

    std::vector<int> family = PackingSearch(pool, n, max_p).run();
    if (family.empty()) return whole_unconstrained();

    BitVec covered(n);
    for (int i : family) covered ^= pool[i];
    for (int i : family) {
        Segmentation::Segment seg;
        seg.row = pool[i];
        seg.coords = pool[i].support();
        out.segments.push_back(std::move(seg));
    }
    if (covered.weight() < n) {
        Segmentation::Segment residual;
        for (int i = 1; i <= n; ++i)
            if (!covered.get(i)) residual.coords.push_back(i);
        out.segments.push_back(std::move(residual));
    }
    std::sort(out.segments.begin(), out.segments.end(),
              [](const auto& a, const auto& b) { return a.coords.front() < b.coords.front(); });
    return out;
}

BitVec governed_syndrome(const Segmentation& seg, const BitVec& word) {
    if (word.length() != seg.n) throw std::invalid_argument("governed_syndrome: length mismatch");
    BitVec s(seg.governed_count());
    int j = 0;
    for (const auto& segment : seg.segments) {
        if (!segment.governed()) continue;
        ++j;
        if (segment.row->dot(word)) s.set(j, true);
    }
    return s;
}

std::vector<SegParity> segment_constraints(const Segmentation& seg, const BitVec& governed_bits) {
    if (governed_bits.length() != seg.governed_count())
        throw std::invalid_argument("segment_constraints: expected " + std::to_string(seg.governed_count()) +
                                    " syndrome bits, got " + std::to_string(governed_bits.length()));
    std::vector<SegParity> out;
    out.reserve(seg.segments.size());
    int j = 0;
    for (const auto& segment : seg.segments) {
        if (!segment.governed()) {
            out.push_back(SegParity::Unconstrained);
            continue;
        }
        ++j;
        out.push_back(governed_bits.get(j) ? SegParity::Odd : SegParity::Even);
    }
    return out;
}

SearchSpace search_space_size(const Segmentation& seg) {
    SearchSpace s;
    s.log2 = seg.n - seg.governed_count();
    if (s.log2 <= 62) s.value = uint64_t(1) << s.log2;
    return s;
}

std::string describe(const Segmentation& seg) {
    std::ostringstream os;
    os << "n=" << seg.n << " p=" << seg.p() << " governed=" << seg.governed_count() << '\n';
    int row_idx = 0;
    for (size_t i = 0; i < seg.segments.size(); ++i) {
        const auto& s = seg.segments[i];
        os << "segment " << (i + 1) << ": size " << s.coords.size() << ", ";
        if (s.governed())
            os << "governed (row " << ++row_idx << ")";
        else
            os << "unconstrained";
        os << ", indices:";
        for (int c : s.coords) os << ' ' << c;
        os << '\n';
    }
    return os.str();
}

}  // namespace grandlab
