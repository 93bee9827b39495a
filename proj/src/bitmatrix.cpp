#include "grandlab/bitmatrix.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace grandlab {

BitMatrix::BitMatrix(int rows, int cols) : cols_(cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("BitMatrix: negative dimension");
    r_.assign(rows, BitVec(cols));
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string>& rows) {
    BitMatrix m;
    for (const auto& s : rows) m.append_row(BitVec::from_string(s));
    return m;
}

BitMatrix BitMatrix::identity(int n) {
    BitMatrix m(n, n);
    for (int i = 1; i <= n; ++i) m.set(i, i, true);
    return m;
}

int BitMatrix::check_row(int i) const {
    if (i < 1 || i > rows())
        throw std::out_of_range("BitMatrix: row " + std::to_string(i) + " outside [1, " + std::to_string(rows()) +
                                "]");
    return i;
}

void BitMatrix::set_row(int i, BitVec v) {
    if (v.length() != cols_) throw std::invalid_argument("BitMatrix: row length mismatch");
    r_.at(check_row(i) - 1) = std::move(v);
}

void BitMatrix::append_row(BitVec v) {
    if (r_.empty())
        cols_ = v.length();
    else if (v.length() != cols_)
        throw std::invalid_argument("BitMatrix: row length mismatch");
    r_.push_back(std::move(v));
}

void BitMatrix::xor_rows(int dst, int src) {
    check_row(dst);
    check_row(src);
    if (dst == src) throw std::invalid_argument("BitMatrix: xor_rows dst == src");
    r_[dst - 1] ^= r_[src - 1];
}

BitVec BitMatrix::multiply(const BitVec& v) const {
    if (v.length() != cols_) throw std::invalid_argument("BitMatrix: vector length " + std::to_string(v.length()) +
                                                         " != cols " + std::to_string(cols_));
    BitVec s(rows());
    for (int i = 1; i <= rows(); ++i)
        if (r_[i - 1].dot(v)) s.set(i, true);
    return s;
}

BitMatrix BitMatrix::multiply(const BitMatrix& o) const {
    if (cols_ != o.rows()) throw std::invalid_argument("BitMatrix: inner dimension mismatch");
    BitMatrix ot = o.transposed();
    BitMatrix out(rows(), o.cols());
    for (int i = 1; i <= rows(); ++i)
        for (int j = 1; j <= o.cols(); ++j)
            if (r_[i - 1].dot(ot.row(j))) out.set(i, j, true);
    return out;
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix t(cols_, rows());
    for (int i = 1; i <= rows(); ++i) {
        for (int j : r_[i - 1].support()) t.set(j, i, true);
    }
    return t;
}

RrefResult BitMatrix::rref() const {
    RrefResult out;
    out.mat = *this;
    auto& m = out.mat.r_;
    int pivot_row = 0;  // 0-based count of settled rows
    for (int col = 1; col <= cols_ && pivot_row < rows(); ++col) {
        int found = -1;
        for (int i = pivot_row; i < rows(); ++i)
            if (m[i].get(col)) {
                found = i;
                break;
            }
        if (found < 0) continue;
        std::swap(m[pivot_row], m[found]);
        for (int i = 0; i < rows(); ++i)
            if (i != pivot_row && m[i].get(col)) m[i] ^= m[pivot_row];
        out.pivot_cols.push_back(col);
        ++pivot_row;
    }
    return out;
}

int BitMatrix::rank() const { return static_cast<int>(rref().pivot_cols.size()); }

BitMatrix BitMatrix::nullspace() const {
    RrefResult rr = rref();
    int r = static_cast<int>(rr.pivot_cols.size());
    std::vector<bool> is_pivot(cols_ + 1, false);
    for (int c : rr.pivot_cols) is_pivot[c] = true;

    BitMatrix basis(0, cols_);
    for (int free_col = 1; free_col <= cols_; ++free_col) {
        if (is_pivot[free_col]) continue;
        BitVec v(cols_);
        v.set(free_col, true);
        for (int i = 0; i < r; ++i)
            if (rr.mat.row(i + 1).get(free_col)) v.set(rr.pivot_cols[i], true);
        basis.append_row(std::move(v));
    }
    return basis;
}

bool BitMatrix::is_zero() const {
    for (const auto& row : r_)
        if (row.any()) return false;
    return true;
}

BitVec syndrome(const BitMatrix& H, const BitVec& v) { return H.multiply(v); }

bool in_row_space(const BitMatrix& M, const BitVec& v) {
    if (v.length() != M.cols()) throw std::invalid_argument("in_row_space: length mismatch");
    RrefResult rr = M.rref();
    BitVec w = v;
    for (size_t i = 0; i < rr.pivot_cols.size(); ++i)
        if (w.get(rr.pivot_cols[i])) w ^= rr.mat.row(static_cast<int>(i) + 1);
    return !w.any();
}

void write_matrix(std::ostream& os, const BitMatrix& m) {
    os << m.rows() << ' ' << m.cols() << '\n';
    for (int i = 1; i <= m.rows(); ++i) os << m.row(i).to_string() << '\n';
}

BitMatrix read_matrix(std::istream& is) {
    int rows = -1, cols = -1;
    if (!(is >> rows >> cols) || rows < 1 || cols < 1)
        throw std::runtime_error("matrix parse error: bad dimension header");
    BitMatrix m(0, cols);
    std::string line;
    std::getline(is, line);  // rest of the header line
    for (int i = 0; i < rows; ++i) {
        if (!std::getline(is, line)) throw std::runtime_error("matrix parse error: missing row " + std::to_string(i + 1));
        BitVec v = BitVec::from_string(line);
        if (v.length() != cols)
            throw std::runtime_error("matrix parse error: row " + std::to_string(i + 1) + " has " +
                                     std::to_string(v.length()) + " columns, expected " + std::to_string(cols));
        m.append_row(std::move(v));
    }
    return m;
}

BitMatrix read_alist(std::istream& is) {
    // First line: N M (columns then rows), per the usual alist convention.
    long long n = 0, mrows = 0;
    if (!(is >> n >> mrows) || n < 1 || mrows < 1) throw std::runtime_error("alist parse error: bad header");
    long long max_col_deg = 0, max_row_deg = 0;
    if (!(is >> max_col_deg >> max_row_deg)) throw std::runtime_error("alist parse error: missing degree bounds");
    std::vector<long long> col_deg(n), row_deg(mrows);
    for (auto& d : col_deg)
        if (!(is >> d)) throw std::runtime_error("alist parse error: column degrees");
    for (auto& d : row_deg)
        if (!(is >> d)) throw std::runtime_error("alist parse error: row degrees");

    BitMatrix m(static_cast<int>(mrows), static_cast<int>(n));
    // Per-column row indices, padded with zeros up to max_col_deg.
    for (long long c = 0; c < n; ++c) {
        for (long long k = 0; k < max_col_deg; ++k) {
            long long r;
            if (!(is >> r)) throw std::runtime_error("alist parse error: column entries");
            if (r == 0) continue;
            if (r < 1 || r > mrows) throw std::runtime_error("alist parse error: row index out of range");
            m.set(static_cast<int>(r), static_cast<int>(c) + 1, true);
        }
    }
    // Per-row column lists follow in full alist files; they are redundant, so
    // anything after the column block is ignored.
    return m;
}

}  // namespace grandlab
