#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "grandlab/code.hpp"
#include "grandlab/gf2m.hpp"
#include "grandlab/rng.hpp"

using namespace grandlab;

namespace {

BitVec random_msg(int k, TrialRng& rng) {
    BitVec v(k);
    for (int i = 1; i <= k; ++i)
        if (rng.next_u64() & 1) v.set(i, true);
    return v;
}

}  // namespace

TEST_CASE("gf2m field") {
    Gf2mField f(7, 0b10001001);
    CHECK(f.order() == 127);
    CHECK(f.exp(0) == 1);
    CHECK(f.mul(f.exp(5), f.exp(10)) == f.exp(15));
    // x^3 + x + 1 is primitive over GF(8); x^3 + x^2 + x + 1 = (x+1)(x^2+1) is not
    CHECK_NOTHROW(Gf2mField(3, 0b1011));
    CHECK_THROWS_AS(Gf2mField(3, 0b1111), std::invalid_argument);
}

TEST_CASE("minimal polynomials of the degree-7 field") {
    Gf2mField f(7, 0b10001001);
    auto m1 = minimal_polynomial(f, 1);
    CHECK(m1.size() == 8);  // degree 7
    CHECK(m1 == std::vector<uint8_t>{1, 0, 0, 1, 0, 0, 0, 1});  // alpha's minimal polynomial is x^7+x^3+1 itself
    auto m3 = minimal_polynomial(f, 3);
    auto m5 = minimal_polynomial(f, 5);
    CHECK(m3.size() == 8);
    CHECK(m5.size() == 8);
    CHECK(m3 != m1);
    CHECK(m5 != m1);
}

TEST_CASE("ebch(3,1) is the (8,4) extended Hamming code") {
    LinearCode c = ebch(3, 1, 0b1011);
    CHECK(c.n == 8);
    CHECK(c.k == 4);
    // exhaustive weight enumeration of all 16 codewords: d_min = 4
    int min_w = c.n;
    std::set<BitVec> words;
    for (uint64_t m = 0; m < 16; ++m) {
        BitVec msg(4);
        for (int b = 0; b < 4; ++b)
            if ((m >> b) & 1) msg.set(b + 1, true);
        BitVec cw = encode(c, msg);
        words.insert(cw);
        CHECK(!syndrome(c.H, cw).any());
        CHECK(cw.weight() % 2 == 0);
        if (m) min_w = std::min(min_w, cw.weight());
    }
    CHECK(words.size() == 16);
    CHECK(min_w == 4);
}

TEST_CASE("ebch(5,2): (32,21), weight-<=2 syndromes distinct on the unextended code") {
    LinearCode c = ebch(5, 2, 0b100101);
    CHECK(c.n == 32);
    CHECK(c.k == 21);

    // unextended (31,21) parity rows: drop the all-ones extension row and the
    // parity column
    BitMatrix H31(0, 31);
    for (int i = 2; i <= c.H.rows(); ++i) {
        BitVec row(31);
        CHECK(!c.H.row(i).get(32));  // alpha-power rows do not touch the extension bit
        for (int j = 1; j <= 31; ++j)
            if (c.H.row(i).get(j)) row.set(j, true);
        H31.append_row(std::move(row));
    }
    REQUIRE(H31.rows() == 10);

    // 1 + 31 + C(31,2) = 497 syndromes, all distinct
    std::set<BitVec> syndromes;
    syndromes.insert(syndrome(H31, BitVec(31)));
    for (int i = 1; i <= 31; ++i) {
        BitVec e(31);
        e.set(i, true);
        syndromes.insert(syndrome(H31, e));
        for (int j = i + 1; j <= 31; ++j) {
            BitVec e2 = e;
            e2.set(j, true);
            syndromes.insert(syndrome(H31, e2));
        }
    }
    CHECK(syndromes.size() == size_t(1 + 31 + 465));
}

TEST_CASE("ebch(7,3) is (128,106) and its H has the published segment structure") {
    const LinearCode& c = code_by_name("ebch128_106");
    CHECK(c.n == 128);
    CHECK(c.k == 106);
    CHECK(c.H.rows() == 22);
    // the all-ones row plus a weight-64 row nested inside it
    CHECK(c.H.row(1) == BitVec::ones(128));
    bool has_weight64 = false;
    for (int i = 2; i <= c.H.rows(); ++i) has_weight64 |= (c.H.row(i).weight() == 64);
    CHECK(has_weight64);

    TrialRng rng(5, 0);
    for (int t = 0; t < 1000; ++t) {
        BitVec cw = encode(c, random_msg(c.k, rng));
        CHECK(!syndrome(c.H, cw).any());
        CHECK(cw.weight() % 2 == 0);
    }
}

TEST_CASE("ebch rejects bad parameters") {
    CHECK_THROWS_AS(ebch(3, 1, 0b1111), std::invalid_argument);   // non-primitive
    CHECK_THROWS_AS(ebch(4, 3, 0b10011), std::invalid_argument);  // t too large for m=4
}

TEST_CASE("extended hamming family") {
    LinearCode c3 = extended_hamming(3);
    CHECK(c3.n == 8);
    CHECK(c3.k == 4);
    LinearCode c4 = extended_hamming(4);
    CHECK(c4.n == 16);
    CHECK(c4.k == 11);

    // every weight-1 and weight-2 pattern has a nonzero syndrome (d_min = 4)
    for (int i = 1; i <= c4.n; ++i) {
        BitVec e(c4.n);
        e.set(i, true);
        CHECK(syndrome(c4.H, e).any());
        for (int j = i + 1; j <= c4.n; ++j) {
            BitVec e2 = e;
            e2.set(j, true);
            CHECK(syndrome(c4.H, e2).any());
        }
    }
}

TEST_CASE("encode") {
    const LinearCode& c = code_by_name("ehamming8_4");
    CHECK(encode(c, BitVec(4)) == BitVec(8));
    CHECK_THROWS_AS(encode(c, BitVec(5)), std::invalid_argument);
}

TEST_CASE("pac code") {
    SUBCASE("identity precoding reduces to the polar generator") {
        LinearCode p = pac(16, 8, {1}, RateProfile::RmPolarGa2dB);
        auto info = rm_polar_info_set(16, 8, 2.0);
        for (int r = 1; r <= 8; ++r) {
            // row u of the polarization transform has ones at bitwise subsets of u
            int u = info[r - 1];
            for (int j = 0; j < 16; ++j) CHECK(p.G.get(r, j + 1) == ((j & u) == j));
        }
    }
    SUBCASE("pac(64,44) validates and has nested dual structure") {
        const LinearCode& p = code_by_name("pac64_44");
        CHECK(p.n == 64);
        CHECK(p.k == 44);
        CHECK(p.G.multiply(p.H.transposed()).is_zero());
        // frozen index 0 contributes the all-ones row
        CHECK(p.H.row(1) == BitVec::ones(64));
    }
    SUBCASE("explicit profile of the wrong size is rejected") {
        CHECK_THROWS_AS(pac(16, 8, {1, 0, 1}, std::vector<int>{1, 2, 3}), std::invalid_argument);
    }
}

TEST_CASE("save and load round trip") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "grandlab_test_codes";
    fs::create_directories(dir);

    const LinearCode& c = code_by_name("ebch32_21");
    SUBCASE("G-kind file") {
        std::string path = (dir / "g.code").string();
        save_code(c, path, 'G');
        LinearCode back = load_code(path);
        CHECK(back.n == c.n);
        CHECK(back.k == c.k);
        CHECK(back.G == c.G);
        CHECK(back.G.multiply(back.H.transposed()).is_zero());
    }
    SUBCASE("H-kind file derives a consistent generator") {
        std::string path = (dir / "h.code").string();
        save_code(c, path, 'H');
        LinearCode back = load_code(path);
        CHECK(back.H == c.H);
        CHECK(back.k == c.k);
        CHECK(back.G.multiply(back.H.transposed()).is_zero());
    }
    SUBCASE("corrupt dimension header fails cleanly") {
        std::string path = (dir / "bad.code").string();
        std::ofstream os(path);
        os << "# kind=G name=bad\nnonsense 4\n";
        os.close();
        CHECK_THROWS(load_code(path));
    }
    SUBCASE("missing kind header fails cleanly") {
        std::string path = (dir / "nokind.code").string();
        std::ofstream os(path);
        os << "4 8\n";
        os.close();
        CHECK_THROWS(load_code(path));
    }
}

TEST_CASE("registry") {
    auto names = registry_names();
    CHECK(names == std::vector<std::string>{"ebch128_106", "ebch64_45", "ebch32_21", "ehamming8_4", "pac64_44"});
    const LinearCode& a = code_by_name("ebch64_45");
    CHECK(a.n == 64);
    CHECK(a.k == 45);
    CHECK(&a == &code_by_name("ebch64_45"));  // cached
    CHECK_THROWS_AS(code_by_name("nope"), std::invalid_argument);
}
