#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace grandlab {

// Dense bit vector over GF(2), packed into 64-bit words.
// Public coordinate indices are 1-based, matching the usual [1, n] convention
// of coding-theory texts; out-of-range access throws with the 1-based index.
class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(int length) : n_(length), w_(words_for(length), 0) {
        if (length < 0) throw std::invalid_argument("BitVec: negative length");
    }

    // Parses a string of '0'/'1' characters; spaces are ignored.
    static BitVec from_string(std::string_view s) {
        BitVec v;
        std::vector<bool> bits;
        for (char c : s) {
            if (c == ' ' || c == '\t') continue;
            if (c != '0' && c != '1') throw std::invalid_argument("BitVec: bad character in bit string");
            bits.push_back(c == '1');
        }
        v = BitVec(static_cast<int>(bits.size()));
        for (int i = 0; i < static_cast<int>(bits.size()); ++i)
            if (bits[i]) v.set(i + 1, true);
        return v;
    }

    int length() const { return n_; }

    bool get(int i) const {
        check_index(i);
        return (w_[(i - 1) >> 6] >> ((i - 1) & 63)) & 1u;
    }
    void set(int i, bool value) {
        check_index(i);
        uint64_t mask = uint64_t(1) << ((i - 1) & 63);
        if (value)
            w_[(i - 1) >> 6] |= mask;
        else
            w_[(i - 1) >> 6] &= ~mask;
    }
    void flip(int i) {
        check_index(i);
        w_[(i - 1) >> 6] ^= uint64_t(1) << ((i - 1) & 63);
    }

    BitVec& operator^=(const BitVec& o) {
        if (o.n_ != n_) throw std::invalid_argument("BitVec: xor length mismatch");
        for (size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
        return *this;
    }
    friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }

    bool any() const {
        for (uint64_t w : w_)
            if (w) return true;
        return false;
    }
    int weight() const {
        int c = 0;
        for (uint64_t w : w_) c += std::popcount(w);
        return c;
    }

    // Parity of the AND with o, i.e. <this, o> over GF(2).
    bool dot(const BitVec& o) const {
        if (o.n_ != n_) throw std::invalid_argument("BitVec: dot length mismatch");
        uint64_t acc = 0;
        for (size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
        return std::popcount(acc) & 1;
    }

    bool disjoint_with(const BitVec& o) const {
        if (o.n_ != n_) throw std::invalid_argument("BitVec: length mismatch");
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return false;
        return true;
    }
    bool subset_of(const BitVec& o) const {
        if (o.n_ != n_) throw std::invalid_argument("BitVec: length mismatch");
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    // 1-based indices of nonzero coordinates, ascending.
    std::vector<int> support() const {
        std::vector<int> s;
        s.reserve(weight());
        for (int wi = 0; wi < static_cast<int>(w_.size()); ++wi) {
            uint64_t w = w_[wi];
            while (w) {
                int b = std::countr_zero(w);
                s.push_back(wi * 64 + b + 1);
                w &= w - 1;
            }
        }
        return s;
    }

    std::string to_string() const {
        std::string s(n_, '0');
        for (int i = 1; i <= n_; ++i)
            if (get(i)) s[i - 1] = '1';
        return s;
    }

    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const BitVec& o) const { return !(*this == o); }

    // Total order for use as map/set keys (word-wise, not dictionary order).
    bool operator<(const BitVec& o) const {
        if (n_ != o.n_) return n_ < o.n_;
        return w_ < o.w_;
    }

    // Dictionary order on the bit sequence b1 b2 ... bn (0 before 1).
    bool lex_less(const BitVec& o) const {
        if (o.n_ != n_) throw std::invalid_argument("BitVec: length mismatch");
        for (int i = 1; i <= n_; ++i) {
            bool a = get(i), b = o.get(i);
            if (a != b) return !a;
        }
        return false;
    }

    std::span<const uint64_t> words() const { return w_; }

    static BitVec ones(int length) {
        BitVec v(length);
        for (int i = 1; i <= length; ++i) v.set(i, true);
        return v;
    }

  private:
    static size_t words_for(int n) { return (static_cast<size_t>(n) + 63) / 64; }
    void check_index(int i) const {
        if (i < 1 || i > n_)
            throw std::out_of_range("BitVec: index " + std::to_string(i) + " outside [1, " + std::to_string(n_) +
                                    "]");
    }

    int n_ = 0;
    std::vector<uint64_t> w_;
};

}  // namespace grandlab
