#pragma once

#include <iosfwd>
#include <vector>

#include "grandlab/bitvec.hpp"

namespace grandlab {

struct RrefResult;

// Dense GF(2) matrix stored as packed rows. Row/column indices are 1-based
// in the public interface, like BitVec coordinates.
class BitMatrix {
  public:
    BitMatrix() = default;
    BitMatrix(int rows, int cols);

    static BitMatrix from_strings(const std::vector<std::string>& rows);
    static BitMatrix identity(int n);

    int rows() const { return static_cast<int>(r_.size()); }
    int cols() const { return cols_; }

    const BitVec& row(int i) const { return r_.at(check_row(i) - 1); }
    void set_row(int i, BitVec v);
    void append_row(BitVec v);

    bool get(int i, int j) const { return row(i).get(j); }
    void set(int i, int j, bool v) { r_.at(check_row(i) - 1).set(j, v); }

    // row dst <- dst xor src. Row space is preserved.
    void xor_rows(int dst, int src);

    // H * v over GF(2): one parity bit per row.
    BitVec multiply(const BitVec& v) const;

    BitMatrix multiply(const BitMatrix& o) const;
    BitMatrix transposed() const;

    RrefResult rref() const;
    int rank() const;

    // Basis of { v : M v^T = 0 }, one basis vector per row; (cols - rank) rows.
    BitMatrix nullspace() const;

    bool is_zero() const;
    bool operator==(const BitMatrix& o) const { return cols_ == o.cols_ && r_ == o.r_; }

  private:
    int check_row(int i) const;

    int cols_ = 0;
    std::vector<BitVec> r_;
};

struct RrefResult {
    BitMatrix mat;                // reduced row echelon form, zero rows kept at the bottom
    std::vector<int> pivot_cols;  // 1-based, ascending; size == rank
};

// Eq.-style syndrome: s_j = <h_j, v> mod 2. Dimension-checked.
BitVec syndrome(const BitMatrix& H, const BitVec& v);

// True iff v lies in the row space of M (i.e. v reduces to zero against rref(M)).
bool in_row_space(const BitMatrix& M, const BitVec& v);

// Plain text format: "rows cols" on the first line, then one '0'/'1' line per row.
void write_matrix(std::ostream& os, const BitMatrix& m);
BitMatrix read_matrix(std::istream& is);

// MacKay alist sparse format (read-only interchange).
BitMatrix read_alist(std::istream& is);

}  // namespace grandlab
