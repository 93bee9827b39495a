#pragma once

#include <cstdint>
#include <vector>

namespace grandlab {

// GF(2^m) with log/antilog tables over a primitive polynomial.
// The polynomial is given as a bitmask including the x^m term, e.g.
// x^7 + x^3 + 1 -> 0b10001001. Primitivity is verified at construction
// by checking that x generates the full multiplicative group.
class Gf2mField {
  public:
    Gf2mField(int m, uint32_t poly);

    int m() const { return m_; }
    uint32_t poly() const { return poly_; }
    int order() const { return size_ - 1; }  // multiplicative group order 2^m - 1

    uint32_t exp(int i) const { return exp_[((i % order()) + order()) % order()]; }
    int log(uint32_t a) const;
    uint32_t mul(uint32_t a, uint32_t b) const;

  private:
    int m_;
    uint32_t poly_;
    int size_;
    std::vector<uint32_t> exp_;
    std::vector<int> log_;
};

// Cyclotomic coset of e modulo 2^m - 1: {e, 2e, 4e, ...}, sorted ascending.
std::vector<int> cyclotomic_coset(int e, int m);

// Minimal polynomial of alpha^e over GF(2), as coefficient bits (index = degree).
std::vector<uint8_t> minimal_polynomial(const Gf2mField& f, int e);

// Product of GF(2)[x] polynomials in coefficient-bit form.
std::vector<uint8_t> gf2poly_mul(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b);

}  // namespace grandlab
