#include "grandlab/gf2m.hpp"

#include <stdexcept>
#include <string>

namespace grandlab {

Gf2mField::Gf2mField(int m, uint32_t poly) : m_(m), poly_(poly), size_(1 << m) {
    if (m < 1 || m > 16) throw std::invalid_argument("Gf2mField: m outside [1, 16]");
    if ((poly >> m) != 1u) throw std::invalid_argument("Gf2mField: polynomial degree != m");
    exp_.assign(size_ - 1, 0);
    log_.assign(size_, -1);
    uint32_t x = 1;
    for (int i = 0; i < size_ - 1; ++i) {
        if (x == 1 && i > 0)
            throw std::invalid_argument("Gf2mField: polynomial is not primitive (alpha has order " +
                                        std::to_string(i) + ")");
        exp_[i] = x;
        log_[x] = i;
        x <<= 1;
        if (x & (1u << m)) x ^= poly;
    }
    // alpha^(2^m - 1) must close the cycle
    if (x != 1) throw std::invalid_argument("Gf2mField: polynomial is not primitive");
}

int Gf2mField::log(uint32_t a) const {
    if (a == 0 || a >= static_cast<uint32_t>(size_)) throw std::invalid_argument("Gf2mField: log of 0");
    return log_[a];
}

uint32_t Gf2mField::mul(uint32_t a, uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % order()];
}

std::vector<int> cyclotomic_coset(int e, int m) {
    int n = (1 << m) - 1;
    std::vector<int> coset;
    int x = ((e % n) + n) % n;
    int start = x;
    do {
        coset.push_back(x);
        x = (2 * x) % n;
    } while (x != start);
    std::sort(coset.begin(), coset.end());
    return coset;
}

std::vector<uint8_t> minimal_polynomial(const Gf2mField& f, int e) {
    // product over the coset of (x + alpha^i), coefficients in GF(2^m)
    std::vector<uint32_t> p{1};
    for (int i : cyclotomic_coset(e, f.m())) {
        uint32_t root = f.exp(i);
        std::vector<uint32_t> q(p.size() + 1, 0);
        for (size_t j = 0; j < p.size(); ++j) {
            q[j + 1] ^= p[j];           // x * p
            q[j] ^= f.mul(root, p[j]);  // alpha^i * p
        }
        p = std::move(q);
    }
    std::vector<uint8_t> coeffs(p.size());
    for (size_t j = 0; j < p.size(); ++j) {
        if (p[j] > 1) throw std::logic_error("minimal_polynomial: coefficient not in GF(2)");
        coeffs[j] = static_cast<uint8_t>(p[j]);
    }
    return coeffs;
}

std::vector<uint8_t> gf2poly_mul(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint8_t> out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (size_t j = 0; j < b.size(); ++j) out[i + j] ^= b[j];
    return out;
}

}  // namespace grandlab
