#include "doctest.h"
#include "lengths.hpp"

#include <set>

using namespace divis;

TEST_CASE("gauss counts") {
    CHECK(gauss(3, 2) == 7);
    CHECK(gauss(4, 2) == 15);
    CHECK(gauss(2, 3) == 4);
    CHECK(gauss(0, 2) == 0);
}

TEST_CASE("base sequences") {
    BaseSequence b = BaseSequence::make(2, 2);
    CHECK(b.s == std::vector<long long>{7, 6, 4});
    BaseSequence b3 = BaseSequence::make(2, 3);
    CHECK(b3.s == std::vector<long long>{15, 14, 12, 8});
    // s_q(r,i) divisible by q^i but not q^(i+1)
    for (unsigned q : {2u, 3u, 4u})
        for (unsigned r = 0; r <= 4; ++r) {
            BaseSequence bs = BaseSequence::make(q, r);
            long long pw = 1;
            for (unsigned i = 0; i <= r; ++i) {
                CHECK(bs.s[i] % pw == 0);
                CHECK((bs.s[i] / pw) % q != 0);
                pw *= q;
            }
        }
}

TEST_CASE("worked expansion examples") {
    Expansion e = sqr_adic_expansion(9, 2, 2);
    CHECK(e.digits == std::vector<int>{1, 1});
    CHECK(e.leading == -1);
    CHECK_FALSE(e.feasible());

    Expansion z = sqr_adic_expansion(0, 2, 2);
    CHECK(z.digits == std::vector<int>{0, 0});
    CHECK(z.leading == 0);

    Expansion s = sqr_adic_expansion(16, 2, 2);
    CHECK(s.digits == std::vector<int>{0, 0});
    CHECK(s.leading == 4);
}

TEST_CASE("expansion identity and digit ranges") {
    for (unsigned q : {2u, 3u, 4u})
        for (unsigned r = 0; r <= 4; ++r) {
            BaseSequence b = BaseSequence::make(q, r);
            for (long long n = -100; n <= 1000; ++n) {
                Expansion e = sqr_adic_expansion(n, q, r);
                long long acc = e.leading * b.s[r];
                for (unsigned i = 0; i < r; ++i) {
                    CHECK(e.digits[i] >= 0);
                    CHECK(e.digits[i] < static_cast<int>(q));
                    acc += e.digits[i] * b.s[i];
                }
                CHECK(acc == n);
            }
        }
}

TEST_CASE("infeasible length sets match the tables") {
    auto infeasible = [](unsigned r) {
        std::set<long long> out;
        for (long long n = 1; n <= 60; ++n)
            if (!is_length_feasible(n, 2, r)) out.insert(n);
        return out;
    };
    CHECK(infeasible(1) == std::set<long long>{1});
    CHECK(infeasible(2) == std::set<long long>{1, 2, 3, 5, 9});
    CHECK(infeasible(3) ==
          std::set<long long>{1, 2, 3, 4, 5, 6, 7, 9, 10, 11, 13, 17, 18, 19, 21, 25, 33});
    CHECK_FALSE(is_length_feasible(33, 2, 3));
    CHECK(is_length_feasible(34, 2, 3));
}

TEST_CASE("feasibility is closed under addition") {
    for (unsigned r : {1u, 2u, 3u})
        for (long long n = 1; n <= 200; ++n)
            for (long long m = n; m <= 200; ++m)
                if (is_length_feasible(n, 2, r) && is_length_feasible(m, 2, r))
                    CHECK(is_length_feasible(n + m, 2, r));
}

TEST_CASE("ward reduction") {
    CHECK(ward_reduce(2, 12) == std::pair<uint64_t, uint64_t>{4, 3});
    CHECK(ward_reduce(2, 8) == std::pair<uint64_t, uint64_t>{8, 1});
    CHECK(ward_reduce(3, 6) == std::pair<uint64_t, uint64_t>{3, 2});
    CHECK(ward_reduce(4, 4) == std::pair<uint64_t, uint64_t>{4, 1});
}

TEST_CASE("expansion json") {
    CHECK(expansion_json(sqr_adic_expansion(9, 2, 2)) ==
          "{\"n\":9,\"q\":2,\"r\":2,\"digits\":[1,1],\"leading\":-1,\"feasible\":false}");
}

TEST_CASE("gamma lookup values reproduce the main theorem") {
    auto v = [](uint64_t delta, long long n) { return gamma_lookup_value(2, delta, n); };
    CHECK(v(2, 1) == std::nullopt);
    CHECK(v(2, 2) == 2);
    for (long long n = 3; n <= 60; ++n) CHECK(v(2, n) == 1);

    for (long long n : {1, 2, 3, 5, 9}) CHECK(v(4, n) == std::nullopt);
    for (long long n : {7, 8, 14, 20, 41, 60}) CHECK(v(4, n) == 1);
    for (long long n : {6, 10, 12, 13}) CHECK(v(4, n) == 2);
    for (long long n : {4, 11}) CHECK(v(4, n) == 4);

    for (long long n : {1, 2, 3, 4, 5, 6, 7, 9, 10, 11, 13, 17, 18, 19, 21, 25, 33})
        CHECK(v(8, n) == std::nullopt);
    for (long long n : {15, 16, 30, 31, 32, 45, 46, 47, 48, 49, 50, 51, 60})
        CHECK(v(8, n) == 1);
    for (long long n : {14, 28, 29, 34, 36, 38, 40, 42, 43, 44, 52, 53, 54, 55, 56, 57, 58, 59})
        CHECK(v(8, n) == 2);
    for (long long n : {12, 20, 24, 26, 27, 35, 39, 41}) CHECK(v(8, n) == 4);
    for (long long n : {8, 22, 23, 37}) CHECK(v(8, n) == 8);

    // repetition reduction
    CHECK(v(12, 36) == 3 * *v(4, 12));
    CHECK(v(12, 35) == std::nullopt);
    CHECK(v(6, 6) == 6);   // 3 * Gamma_2(2, 2)
    CHECK(v(6, 9) == 3);   // 3 * Gamma_2(2, 3)
    CHECK_THROWS_AS(gamma_lookup_value(3, 3, 5), RequiresCensus);
    CHECK_THROWS_AS(gamma_lookup_value(2, 16, 16), RequiresCensus);
}

TEST_CASE("gamma lookup certificates for infinite entries") {
    GammaResult r = gamma_lookup(2, 2, 1);
    CHECK(r.infinite);
    REQUIRE(r.certificate.has_value());
    CHECK(r.certificate->leading < 0);

    GammaResult r8 = gamma_lookup(2, 8, 33);
    CHECK(r8.infinite);
    CHECK(r8.certificate->leading < 0);
}

TEST_CASE("gamma lookup witnesses validate") {
    // every finite entry up to 60 must come with a valid witness of the right
    // cardinality, divisibility and maximum column multiplicity
    for (uint64_t delta : {2ull, 4ull, 8ull}) {
        for (long long n = 1; n <= 60; ++n) {
            auto val = gamma_lookup_value(2, delta, n);
            if (!val) continue;
            GammaResult r = gamma_lookup(2, delta, n);
            REQUIRE_MESSAGE(r.witness.has_value(), "delta=", delta, " n=", n);
            auto [eff, g1] = column_stats(*r.witness);
            CAPTURE(delta);
            CAPTURE(n);
            CHECK(eff == n);
            CHECK(is_divisible_code(*r.witness, delta));
            CHECK(g1 == *val);
        }
    }
    // a reduced-delta witness
    GammaResult r = gamma_lookup(2, 12, 36);
    REQUIRE(r.witness.has_value());
    CHECK(is_divisible_code(*r.witness, 12));
    CHECK(column_stats(*r.witness).second == r.value);
}
