#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <set>

#include "grandlab/partitions.hpp"
#include "oracles.hpp"

using namespace grandlab;

namespace {

std::vector<std::vector<long long>> collect_fixed(long long w, int t, long long p_max) {
    FixedCountPartitions gen(w, t, p_max);
    std::vector<std::vector<long long>> out;
    std::vector<long long> parts;
    while (gen.next(parts)) out.push_back(parts);
    return out;
}

std::vector<std::vector<long long>> collect_distinct(long long w, long long p_max) {
    DistinctPartitions gen(w, p_max);
    std::vector<std::vector<long long>> out;
    std::vector<long long> parts;
    while (gen.next(parts)) out.push_back(parts);
    return out;
}

std::vector<std::vector<long long>> collect_parity(long long w, PartParity par, long long p_max) {
    ParityPartitions gen(w, par, p_max);
    std::vector<std::vector<long long>> out;
    std::vector<long long> parts;
    while (gen.next(parts)) out.push_back(parts);
    return out;
}

// Literal restatement of the published procedure, no fast-forward: step one
// state at a time and filter on the trailing part.
std::vector<std::vector<long long>> fixed_reference(long long w, int t, long long p_max) {
    std::vector<std::vector<long long>> out;
    if (t < 1 || w < static_cast<long long>(t) * (t + 1) / 2) return out;
    std::vector<long long> p(t);
    for (int i = 0; i < t - 1; ++i) p[i] = i + 1;
    long long tri = static_cast<long long>(t) * (t - 1) / 2;
    p[t - 1] = w - tri;
    if (p[t - 1] <= p_max) out.push_back(p);
    if (t == 1) return out;
    while (true) {
        bool stepped = false;
        for (int i = 1; i <= t - 1 && !stepped; ++i) {
            int keep = t - 1 - i;
            long long base = p[keep];
            long long prefix = 0;
            for (int j = 0; j < keep; ++j) prefix += p[j];
            long long balance = w - prefix - (i * base + static_cast<long long>(i) * (i + 1) / 2);
            if (base + i < balance) {
                for (int j = 0; j < i; ++j) p[keep + j] = base + 1 + j;
                p[t - 1] = balance;
                if (p[t - 1] <= p_max) out.push_back(p);
                stepped = true;
            }
        }
        if (!stepped) break;
    }
    return out;
}

}  // namespace

TEST_CASE("fixed-count partitions: published 18-into-4 sequence") {
    auto got = collect_fixed(18, 4, 18);
    // full order pinned by the worked figure: re-initializations at
    // sequence positions 6, 9, 14 (depth 2) and 11, 15 (depth 3)
    std::vector<std::vector<long long>> expected = {
        {1, 2, 3, 12}, {1, 2, 4, 11}, {1, 2, 5, 10}, {1, 2, 6, 9}, {1, 2, 7, 8},
        {1, 3, 4, 10}, {1, 3, 5, 9},  {1, 3, 6, 8},  {1, 4, 5, 8}, {1, 4, 6, 7},
        {2, 3, 4, 9},  {2, 3, 5, 8},  {2, 3, 6, 7},  {2, 4, 5, 7}, {3, 4, 5, 6}};
    CHECK(got == expected);
    CHECK(got.size() == 15);

    // independent subset-sum oracle agrees as a set
    std::set<std::vector<long long>> got_set(got.begin(), got.end());
    CHECK(got_set == oracle::distinct_partitions_bf(18, 18, 4));
}

TEST_CASE("fixed-count partitions: minimal and near-minimal cases") {
    CHECK(collect_fixed(6, 3, 6) == std::vector<std::vector<long long>>{{1, 2, 3}});
    CHECK(collect_fixed(7, 3, 7) == std::vector<std::vector<long long>>{{1, 2, 4}});
    CHECK(collect_fixed(5, 3, 5).empty());  // 5 < 1+2+3
    CHECK(collect_fixed(0, 1, 10).empty());
    CHECK(collect_fixed(4, 1, 10) == std::vector<std::vector<long long>>{{4}});
    CHECK(collect_fixed(4, 1, 3).empty());  // part exceeds p_max
}

TEST_CASE("fixed-count partitions: equivalence with the step-by-step reference") {
    for (long long w = 0; w <= 28; ++w)
        for (int t = 1; t <= 6; ++t)
            for (long long p_max : {3LL, 5LL, 9LL, 28LL}) {
                CAPTURE(w);
                CAPTURE(t);
                CAPTURE(p_max);
                REQUIRE(collect_fixed(w, t, p_max) == fixed_reference(w, t, p_max));
            }
}

TEST_CASE("fixed-count partitions: brute-force set equality with invariants") {
    for (long long w = 0; w <= 32; ++w)
        for (int t = 1; t <= 6; ++t) {
            auto got = collect_fixed(w, t, w);
            std::set<std::vector<long long>> seen;
            for (const auto& parts : got) {
                REQUIRE(static_cast<int>(parts.size()) == t);
                long long sum = 0;
                for (size_t i = 0; i < parts.size(); ++i) {
                    REQUIRE(parts[i] >= 1);
                    if (i) REQUIRE(parts[i] > parts[i - 1]);
                    sum += parts[i];
                }
                REQUIRE(sum == w);
                REQUIRE(seen.insert(parts).second);  // no duplicates
            }
            REQUIRE(seen == oracle::distinct_partitions_bf(w, w, t));
        }
}

TEST_CASE("distinct partitions: weight-6 list in part-count order") {
    auto got = collect_distinct(6, 8);
    std::vector<std::vector<long long>> expected = {{6}, {1, 5}, {2, 4}, {1, 2, 3}};
    CHECK(got == expected);
}

TEST_CASE("distinct partitions: corner cases") {
    CHECK(collect_distinct(1, 8) == std::vector<std::vector<long long>>{{1}});
    CHECK(collect_distinct(0, 8) == std::vector<std::vector<long long>>{{}});
    auto got = collect_distinct(7, 4);
    CHECK(got == std::vector<std::vector<long long>>{{3, 4}, {1, 2, 4}});
}

TEST_CASE("distinct partitions: set equality with subset-sum enumeration") {
    for (long long w = 0; w <= 32; ++w)
        for (long long p_max : {4LL, 7LL, 32LL}) {
            auto got = collect_distinct(w, p_max);
            std::set<std::vector<long long>> set(got.begin(), got.end());
            REQUIRE(set.size() == got.size());
            REQUIRE(set == oracle::distinct_partitions_bf(w, p_max));
        }
}

TEST_CASE("parity partitions: examples") {
    CHECK(collect_parity(5, PartParity::Even, 5) == std::vector<std::vector<long long>>{{1, 4}, {2, 3}});
    CHECK(collect_parity(5, PartParity::Odd, 5) == std::vector<std::vector<long long>>{{5}});
    CHECK(collect_parity(3, PartParity::Even, 3) == std::vector<std::vector<long long>>{{1, 2}});
    CHECK(collect_parity(3, PartParity::Odd, 3) == std::vector<std::vector<long long>>{{3}});
    CHECK(collect_parity(0, PartParity::Even, 3) == std::vector<std::vector<long long>>{{}});
    CHECK(collect_parity(0, PartParity::Odd, 3).empty());
}

TEST_CASE("parity partitions: odd/even split covers the distinct stream") {
    for (long long w = 1; w <= 40; ++w) {
        size_t odd = collect_parity(w, PartParity::Odd, w).size();
        size_t even = collect_parity(w, PartParity::Even, w).size();
        size_t all = collect_distinct(w, w).size();
        size_t any = collect_parity(w, PartParity::Any, w).size();
        REQUIRE(odd + even == all);
        REQUIRE(any == all);
    }
}

TEST_CASE("streams are lazy") {
    auto t0 = std::chrono::steady_clock::now();
    DistinctPartitions gen(1'000'000, 1'000'000);
    std::vector<long long> parts;
    REQUIRE(gen.next(parts));
    CHECK(parts == std::vector<long long>{1'000'000});
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    CHECK(ms < 50.0);
}

TEST_CASE("pattern bases: forced and free flags") {
    using P = SegWeightParity;
    SUBCASE("even, odd, odd") {
        auto bases = enumerate_bases({P::Even, P::Odd, P::Odd}, {3, 1, 1});
        REQUIRE(bases.size() == 2);
        CHECK(bases[0].f == std::vector<uint8_t>{0, 1, 1});
        CHECK(bases[0].min_total == 2);
        CHECK(bases[1].f == std::vector<uint8_t>{1, 1, 1});
        CHECK(bases[1].min_total == 5);
    }
    SUBCASE("odd, even") {
        auto bases = enumerate_bases({P::Odd, P::Even}, {1, 3});
        REQUIRE(bases.size() == 2);
        CHECK(bases[0].f == std::vector<uint8_t>{1, 0});
        CHECK(bases[0].min_total == 1);
        CHECK(bases[1].f == std::vector<uint8_t>{1, 1});
        CHECK(bases[1].min_total == 4);
    }
    SUBCASE("odd, odd") {
        auto bases = enumerate_bases({P::Odd, P::Odd}, {1, 1});
        REQUIRE(bases.size() == 1);
        CHECK(bases[0].f == std::vector<uint8_t>{1, 1});
        CHECK(bases[0].min_total == 2);
    }
    SUBCASE("minimum sub-weights follow the syndrome bit") {
        CHECK(min_subweight(P::Odd) == 1);   // s = 1
        CHECK(min_subweight(P::Even) == 3);  // s = 0
        CHECK(min_subweight(P::Any) == 1);
    }
}

namespace {

std::vector<std::vector<long long>> collect_level1(long long w, const std::vector<SegWeightParity>& par,
                                                   const std::vector<long long>& lows,
                                                   const std::vector<long long>& highs) {
    auto bases = enumerate_bases(par, lows);
    SubWeightCompositions gen(w, bases, lows, highs);
    std::vector<std::vector<long long>> out;
    std::vector<long long> v;
    while (gen.next(v)) out.push_back(v);
    return out;
}

}  // namespace

TEST_CASE("sub-weight compositions: published three-segment lists") {
    using P = SegWeightParity;
    std::vector<P> par{P::Even, P::Odd, P::Odd};
    std::vector<long long> lows{3, 1, 1}, highs{100, 100, 100};
    SUBCASE("w_L = 5") {
        auto got = collect_level1(5, par, lows, highs);
        std::vector<std::vector<long long>> expected = {{0, 1, 4}, {0, 2, 3}, {0, 3, 2}, {0, 4, 1}, {3, 1, 1}};
        CHECK(got == expected);
    }
    SUBCASE("w_L = 4") {
        auto got = collect_level1(4, par, lows, highs);
        std::vector<std::vector<long long>> expected = {{0, 1, 3}, {0, 2, 2}, {0, 3, 1}};
        CHECK(got == expected);
    }
}

TEST_CASE("sub-weight compositions: two segments, odd/even") {
    using P = SegWeightParity;
    auto got = collect_level1(4, {P::Odd, P::Even}, {1, 3}, {100, 100});
    CHECK(got == std::vector<std::vector<long long>>{{4, 0}, {1, 3}});
}

TEST_CASE("sub-weight compositions: repetition-allowed procedure order") {
    // all-active base with minimums (1, 1, 3), total 7; the base freezing
    // segment 3 emits first, so keep only the all-active vectors
    using P = SegWeightParity;
    auto all = collect_level1(7, {P::Odd, P::Odd, P::Even}, {1, 1, 3}, {100, 100, 100});
    std::vector<std::vector<long long>> got;
    for (const auto& v : all)
        if (v[2] > 0) got.push_back(v);
    std::vector<std::vector<long long>> expected = {{1, 1, 5}, {1, 2, 4}, {1, 3, 3}, {2, 1, 4}, {2, 2, 3}, {3, 1, 3}};
    CHECK(got == expected);
}

TEST_CASE("sub-weight compositions: brute-force set equality across bases") {
    using P = SegWeightParity;
    std::vector<std::vector<P>> configs = {
        {P::Odd, P::Even},
        {P::Even, P::Even},
        {P::Odd, P::Any, P::Even},
        {P::Even, P::Odd, P::Odd, P::Any},
    };
    for (const auto& par : configs) {
        size_t p = par.size();
        std::vector<long long> lows(p), highs(p, 9);
        for (size_t j = 0; j < p; ++j) lows[j] = min_subweight(par[j]);
        for (long long w = 1; w <= 20; ++w) {
            auto got = collect_level1(w, par, lows, highs);
            std::set<std::vector<long long>> got_set(got.begin(), got.end());
            REQUIRE(got_set.size() == got.size());
            std::set<std::vector<long long>> expected;
            for (const auto& base : enumerate_bases(par, lows)) {
                auto part = oracle::subweight_vectors_bf(w, base.f, lows, highs);
                expected.insert(part.begin(), part.end());
            }
            REQUIRE(got_set == expected);
        }
    }
}

TEST_CASE("tuning offsets") {
    SUBCASE("two segments, stipulated mu_e = 8") {
        auto tau = tuning_taus({11, 3}, 0.5, {8.0, 8.0});
        CHECK(tau == std::vector<long long>{0, 2});
        // kappa_2 = min sub-weight 3 plus tau_2
        CHECK(min_subweight(SegWeightParity::Even) + tau[1] == 5);
    }
    SUBCASE("uniform counts give zero offsets") {
        CHECK(tuning_taus({7, 7, 7}, 0.3, {5.0, 5.0, 5.0}) == std::vector<long long>{0, 0, 0});
    }
    SUBCASE("direct formula evaluation") {
        CHECK(tuning_taus({8, 8, 0}, 1.0, {8.0, 8.0, 8.0}) == std::vector<long long>{0, 0, 1});
    }
    SUBCASE("nonpositive rho rejected") {
        CHECK_THROWS_AS(tuning_taus({1, 2}, 0.0, {8.0, 8.0}), std::invalid_argument);
        CHECK_THROWS_AS(tuning_taus({1, 2}, -0.5, {8.0, 8.0}), std::invalid_argument);
    }
    SUBCASE("gaussian low-reliability probability") {
        // P(|r| < eps) for mean-1 sigma-0.5: Phi(-1.6) - Phi(-2.4)
        double p = low_reliability_probability(0.2, 0.5);
        CHECK(p == doctest::Approx(0.0546393 - 0.0081975).epsilon(1e-3));
        CHECK(expected_low_reliability_errors(64, 0.2, 0.5) == doctest::Approx(64.0 * 2.0 * p));
    }
    SUBCASE("full rule combines mu_e, tau and kappa") {
        using P = SegWeightParity;
        auto off = tuning_offsets({9, 2}, 0.2, 0.5, 0.5, {64, 64}, {P::Odd, P::Even});
        double mu = expected_low_reliability_errors(64, 0.2, 0.5);  // about 5.94
        CHECK(off.tau[0] == 0);  // the max-count segment gets no offset
        CHECK(off.tau[1] == static_cast<long long>(std::ceil(7.0 / (0.5 * mu))));
        CHECK(off.kappa[0] == 1);
        CHECK(off.kappa[1] == 3 + off.tau[1]);
        CHECK(off.sigma == 0.5);
    }
}
