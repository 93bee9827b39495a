#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grandlab/bitmatrix.hpp"

namespace grandlab {

// Binary linear (n, k) block code with both generator and parity-check
// matrices. Invariants enforced at construction: G H^T = 0, rank(G) = k,
// rank(H) = n - k.
struct LinearCode {
    int n = 0;
    int k = 0;
    BitMatrix G;  // k x n
    BitMatrix H;  // (n-k) x n
    std::string name;

    double rate() const { return static_cast<double>(k) / n; }
};

// Validates the LinearCode invariants; throws std::runtime_error on failure.
void validate_code(const LinearCode& code);

// Extended narrow-sense BCH code: BCH(2^m - 1, k) from the lcm of the minimal
// polynomials of alpha, alpha^3, ..., alpha^(2t-1), then an overall parity bit
// appended at position 2^m. H carries the all-ones row plus bit-rows of the
// alpha-power evaluations (zero in the extension column).
LinearCode ebch(int m, int t, uint32_t poly);

// (2^m, 2^m - m - 1) extended Hamming code, d_min = 4.
LinearCode extended_hamming(int m);

enum class RateProfile {
    RmPolarGa2dB,  // rows by descending index popcount, ties by descending
                   // Gaussian-approximation reliability at Eb/N0 = 2 dB
};

// Polarization-adjusted convolutional code: G = rows (information set) of
// T * F^{(x) log2 n} with T the upper-triangular Toeplitz matrix of conv_poly.
LinearCode pac(int n, int k, const std::vector<uint8_t>& conv_poly, RateProfile profile);
// Same with an explicit information set (0-based row indices); size must be k.
LinearCode pac(int n, int k, const std::vector<uint8_t>& conv_poly, const std::vector<int>& info_set);

// RM-polar information set used by RateProfile::RmPolarGa2dB (0-based, sorted).
std::vector<int> rm_polar_info_set(int n, int k, double design_ebno_db);

// c = msg * G; msg length must equal k.
BitVec encode(const LinearCode& code, const BitVec& msg);

// File format: "# kind=G|H name=<label>" comment line, then the plain matrix
// format. The missing matrix is derived via nullspace and validated.
LinearCode load_code(const std::string& path);
void save_code(const LinearCode& code, const std::string& path, char kind = 'G');

// Built-in code registry.
std::vector<std::string> registry_names();
const LinearCode& code_by_name(const std::string& name);

}  // namespace grandlab
