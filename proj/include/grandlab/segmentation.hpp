#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grandlab/bitmatrix.hpp"

namespace grandlab {

enum class SegParity { Odd, Even, Unconstrained };

// Disjoint coordinate sets covering [1, n], each either governed by one
// parity row from the (row-reduced) parity-check matrix or the residual
// unconstrained complement.
struct Segmentation {
    struct Segment {
        std::vector<int> coords;     // 1-based, ascending
        std::optional<BitVec> row;   // the governing parity row; empty if unconstrained
        bool governed() const { return row.has_value(); }
    };

    int n = 0;
    std::vector<Segment> segments;

    int p() const { return static_cast<int>(segments.size()); }
    int governed_count() const;
};

// Derives up to max_p disjoint-support parity segments from H. Always returns
// a valid segmentation; a single unconstrained segment means plain ORBGRAND.
Segmentation find_segments(const BitMatrix& H, int max_p = 3);

// Parity bits of the hard-decision word against the governed rows, in segment
// order (one bit per governed segment).
BitVec governed_syndrome(const Segmentation& seg, const BitVec& word);

// Maps governed syndrome bits onto per-segment parities: 1 -> Odd, 0 -> Even,
// no governing row -> Unconstrained.
std::vector<SegParity> segment_constraints(const Segmentation& seg, const BitVec& governed_bits);

// Lemma-style search-space size 2^(n - p') where p' counts governed segments.
struct SearchSpace {
    int log2 = 0;
    std::optional<uint64_t> value;  // absent when log2 > 62
};
SearchSpace search_space_size(const Segmentation& seg);

// Human-readable dump: per segment its size, governing-row index or
// "unconstrained", and the 1-based coordinate list.
std::string describe(const Segmentation& seg);

}  // namespace grandlab
