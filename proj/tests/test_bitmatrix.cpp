#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <sstream>

#include "grandlab/bitmatrix.hpp"
#include "grandlab/rng.hpp"
#include "oracles.hpp"

using namespace grandlab;

namespace {

BitMatrix random_matrix(int rows, int cols, TrialRng& rng) {
    BitMatrix m(rows, cols);
    for (int i = 1; i <= rows; ++i)
        for (int j = 1; j <= cols; ++j)
            if (rng.next_u64() & 1) m.set(i, j, true);
    return m;
}

BitVec random_vec(int n, TrialRng& rng) {
    BitVec v(n);
    for (int i = 1; i <= n; ++i)
        if (rng.next_u64() & 1) v.set(i, true);
    return v;
}

// three parity rows used throughout: nested supports that row operations
// split into disjoint segments
const std::vector<std::string> kThreeRows = {"11110110", "01010010", "01011011"};

}  // namespace

TEST_CASE("xor_rows") {
    BitMatrix m = BitMatrix::from_strings(kThreeRows);
    m.xor_rows(1, 2);
    CHECK(m.row(1) == BitVec::from_string("10100100"));
    m = BitMatrix::from_strings(kThreeRows);
    m.xor_rows(3, 2);
    CHECK(m.row(3) == BitVec::from_string("00001001"));

    // self-inverse
    BitMatrix twice = BitMatrix::from_strings(kThreeRows);
    twice.xor_rows(1, 2);
    twice.xor_rows(1, 2);
    CHECK(twice.row(1) == BitVec::from_string(kThreeRows[0]));

    CHECK_THROWS_AS(m.xor_rows(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(m.xor_rows(0, 1), std::out_of_range);
    CHECK_THROWS_AS(m.xor_rows(1, 4), std::out_of_range);
}

TEST_CASE("xor_rows preserves row space and nullspace") {
    TrialRng rng(7, 0);
    for (int trial = 0; trial < 25; ++trial) {
        BitMatrix m = random_matrix(4, 10, rng);
        BitMatrix mutated = m;
        mutated.xor_rows(2, 3);
        CHECK(oracle::row_span_size(m) == oracle::row_span_size(mutated));
        // nullspace spans must match as sets
        BitMatrix na = m.nullspace(), nb = mutated.nullspace();
        CHECK(oracle::row_span_size(na) == oracle::row_span_size(nb));
        BitMatrix stacked = na;
        for (int i = 1; i <= nb.rows(); ++i) stacked.append_row(nb.row(i));
        CHECK(oracle::row_span_size(stacked) == oracle::row_span_size(na));
    }
}

TEST_CASE("syndrome") {
    BitMatrix H = BitMatrix::from_strings(kThreeRows);
    SUBCASE("single-coordinate probe hits only the covering row") {
        BitVec v = BitVec::from_string("10000000");
        CHECK(syndrome(H, v) == BitVec::from_string("100"));
    }
    SUBCASE("vector in the dual kernel gives zero syndrome") {
        // nullspace rows are codewords of the code H defines
        BitMatrix N = H.nullspace();
        for (int i = 1; i <= N.rows(); ++i) CHECK(!syndrome(H, N.row(i)).any());
    }
    SUBCASE("matches the naive bit-by-bit product") {
        TrialRng rng(11, 1);
        for (int trial = 0; trial < 200; ++trial) {
            int n = 1 + static_cast<int>(rng.next_u64() % 12);
            BitMatrix m = random_matrix(3 + static_cast<int>(rng.next_u64() % 4), n, rng);
            BitVec v = random_vec(n, rng);
            CHECK(syndrome(m, v) == oracle::naive_syndrome(m, v));
        }
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(syndrome(H, BitVec(7)), std::invalid_argument);
    }
}

TEST_CASE("rank and rref") {
    CHECK(BitMatrix::identity(6).rank() == 6);

    BitMatrix dup = BitMatrix::from_strings({"1010", "0110", "1010"});
    BitMatrix nodup = BitMatrix::from_strings({"1010", "0110"});
    CHECK(dup.rank() == nodup.rank());

    SUBCASE("random rank equals log2 of the span size") {
        TrialRng rng(13, 2);
        for (int trial = 0; trial < 20; ++trial) {
            BitMatrix m = random_matrix(10, 16, rng);
            size_t span = oracle::row_span_size(m);
            CHECK((size_t(1) << m.rank()) == span);
        }
    }
    SUBCASE("rref is idempotent and keeps the zero-syndrome set") {
        TrialRng rng(17, 3);
        for (int trial = 0; trial < 30; ++trial) {
            int n = 4 + static_cast<int>(rng.next_u64() % 9);  // n <= 12
            BitMatrix m = random_matrix(3 + static_cast<int>(rng.next_u64() % 4), n, rng);
            RrefResult rr = m.rref();
            CHECK(rr.mat.rref().mat == rr.mat);
            for (uint64_t bits = 0; bits < (uint64_t(1) << n); ++bits) {
                BitVec v(n);
                for (int j = 0; j < n; ++j)
                    if ((bits >> j) & 1) v.set(j + 1, true);
                CHECK(syndrome(m, v).any() == syndrome(rr.mat, v).any());
            }
        }
    }
}

TEST_CASE("nullspace") {
    SUBCASE("identity block spans the complement") {
        BitMatrix m(2, 5);
        m.set(1, 1, true);
        m.set(2, 2, true);
        BitMatrix nsp = m.nullspace();
        CHECK(nsp.rows() == 3);
        CHECK(m.multiply(nsp.transposed()).is_zero());
    }
    SUBCASE("rank-nullity on random matrices") {
        TrialRng rng(19, 4);
        for (int trial = 0; trial < 50; ++trial) {
            int n = 4 + static_cast<int>(rng.next_u64() % 13);  // n <= 16
            BitMatrix m = random_matrix(2 + static_cast<int>(rng.next_u64() % 8), n, rng);
            BitMatrix nsp = m.nullspace();
            CHECK(nsp.rows() == n - m.rank());
            CHECK(nsp.rank() == nsp.rows());
            CHECK(m.multiply(nsp.transposed()).is_zero());
        }
    }
    SUBCASE("full-rank square input yields empty basis") {
        CHECK(BitMatrix::identity(5).nullspace().rows() == 0);
    }
}

TEST_CASE("matrix text format round trip") {
    TrialRng rng(23, 5);
    BitMatrix m = random_matrix(5, 11, rng);
    std::stringstream ss;
    write_matrix(ss, m);
    CHECK(read_matrix(ss) == m);
}

TEST_CASE("matrix text format rejects bad input") {
    std::stringstream bad1("3 x\n");
    CHECK_THROWS(read_matrix(bad1));
    std::stringstream bad2("2 3\n101\n10\n");
    CHECK_THROWS(read_matrix(bad2));
    std::stringstream bad3("2 3\n101\n");
    CHECK_THROWS(read_matrix(bad3));
}

TEST_CASE("alist read") {
    // 3x4 matrix with columns {1}, {2}, {1,3}, {}
    std::stringstream ss(
        "4 3\n"
        "2 2\n"
        "1 1 2 0\n"
        "2 1 1\n"
        "1 0\n"
        "2 0\n"
        "1 3\n"
        "0 0\n"
        "1 3\n"
        "2 0\n"
        "3 0\n");
    BitMatrix m = read_alist(ss);
    CHECK(m.rows() == 3);
    CHECK(m.cols() == 4);
    CHECK(m.row(1) == BitVec::from_string("1010"));
    CHECK(m.row(2) == BitVec::from_string("0100"));
    CHECK(m.row(3) == BitVec::from_string("0010"));
}

TEST_CASE("bitvec basics") {
    BitVec v = BitVec::from_string("01011");
    CHECK(v.length() == 5);
    CHECK(v.weight() == 3);
    CHECK(v.support() == std::vector<int>{2, 4, 5});
    CHECK_THROWS_AS(v.get(0), std::out_of_range);
    CHECK_THROWS_AS(v.get(6), std::out_of_range);
    CHECK(BitVec::from_string("00100").subset_of(v) == false);
    CHECK(BitVec::from_string("01000").subset_of(v));
    CHECK(BitVec::from_string("10100").disjoint_with(v));
    CHECK(BitVec::from_string("00110").disjoint_with(v) == false);
    CHECK(BitVec::from_string("00111").lex_less(BitVec::from_string("01011")));
}
