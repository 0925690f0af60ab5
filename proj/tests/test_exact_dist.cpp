#include "oracles.hpp"

#include "hothand/exact_dist.hpp"
#include "hothand/json_export.hpp"

#include <doctest.h>

#include <cmath>

using namespace hothand;

namespace {

Rational q(long a, long b) {
    Rational r(a, b);
    r.canonicalize();
    return r;
}

BernoulliParam<Rational> rp(long a, long b) { return BernoulliParam<Rational>(q(a, b)); }

void require_matches_bruteforce(const JointCountDistribution<Rational>& dist) {
    const auto ref = oracle::joint_bruteforce(dist.n, dist.k, dist.p.value());
    REQUIRE(dist.pmf.size() == ref.size());
    for (const auto& [key, prob] : ref) REQUIRE(dist.mass_at(key.numerator, key.denominator) == prob);
}

} // namespace

TEST_CASE("enumerate_joint: n=3, k=1, p=1/2 listed by hand") {
    // 000,001 -> (0,0); 010,100,101 -> (0,1); 011 -> (1,1); 110 -> (1,2); 111 -> (2,2)
    const auto dist = enumerate_joint(3, 1, rp(1, 2));
    const std::map<CountKey, Rational> want{
        {{0, 0}, q(2, 8)}, {{0, 1}, q(3, 8)}, {{1, 1}, q(1, 8)}, {{1, 2}, q(1, 8)}, {{2, 2}, q(1, 8)}};
    CHECK(dist.pmf == want);
    CHECK(dist.total_mass() == 1);
    require_matches_bruteforce(dist);
}

TEST_CASE("enumerate_joint: degenerate p and the n=4, k=2 case") {
    const auto sure = enumerate_joint(2, 1, rp(1, 1));
    CHECK(sure.pmf == std::map<CountKey, Rational>{{{1, 1}, Rational(1)}});

    // D > 0 exactly for 0110, 0111, 1100, 1101, 1110, 1111
    const auto d = enumerate_joint(4, 2, rp(1, 2));
    CHECK(1 - prob_denominator_zero(d) == q(6, 16));
    CHECK(prob_denominator_zero(d) == q(10, 16));
    CHECK(conditional_expectation(d).value == q(5, 12));
    require_matches_bruteforce(d);
}

TEST_CASE("enumerate_joint refuses n > 20") {
    CHECK_NOTHROW(enumerate_joint(20, 19, BernoulliParam(0.5)));
    CHECK_THROWS_WITH_AS(enumerate_joint(21, 1, BernoulliParam(0.5)), doctest::Contains("dp_joint"), ResourceLimit);
    CHECK_THROWS_AS(enumerate_joint(5, 5, BernoulliParam(0.5)), InvalidArgument);
    CHECK_THROWS_AS(dp_joint(2, 2, BernoulliParam(0.5)), InvalidArgument);
}

TEST_CASE("dp_joint reproduces enumeration exactly (n <= 10 here, n <= 14 in acceptance)") {
    for (const auto& pv : {q(1, 2), q(1, 3), q(9, 10), q(1, 1)}) {
        const BernoulliParam p(pv);
        for (std::size_t n = 2; n <= 10; ++n) {
            for (std::size_t k = 1; k < n; ++k) REQUIRE(dp_joint(n, k, p) == enumerate_joint(n, k, p));
        }
    }
    CHECK(dp_joint(14, 3, rp(1, 3)) == enumerate_joint(14, 3, rp(1, 3)));
    require_matches_bruteforce(dp_joint(9, 2, rp(2, 7)));
}

TEST_CASE("dp_joint: P(D_1 = 0) = (1-p)^{n-1}") {
    const auto dist = dp_joint(100, 1, rp(1, 2));
    CHECK(prob_denominator_zero(dist) == scalar::pow(q(1, 2), 99));
    for (long a = 1; a <= 9; ++a) {
        for (std::size_t n = 2; n <= 30; n += 7) {
            const auto p = rp(a, 10);
            CHECK(prob_denominator_zero(dp_joint(n, 1, p)) == scalar::complement_pow(p.value(), n - 1));
        }
    }
    for (std::size_t n = 2; n <= 12; ++n) CHECK(prob_denominator_zero(dp_joint(n, 1, rp(1, 1))) == 0);
}

TEST_CASE("pmf invariants: normalization, key ranges, D = 0 implies N = 0") {
    for (std::size_t n = 2; n <= 25; ++n) {
        for (std::size_t k = 1; k < n; k += 2) {
            const auto exact = dp_joint(n, k, rp(3, 7));
            REQUIRE(exact.total_mass() == 1);
            const auto fp = dp_joint(n, k, BernoulliParam(3.0 / 7.0));
            REQUIRE(std::fabs(fp.total_mass() - 1.0) <= 1e-12);
            for (const auto& [key, prob] : exact.pmf) {
                REQUIRE(key.numerator <= key.denominator);
                REQUIRE(key.denominator <= n - k);
                if (key.denominator == 0) REQUIRE(key.numerator == 0);
                REQUIRE(prob > 0);
            }
            REQUIRE(fp.pmf.size() == exact.pmf.size());
            for (const auto& [key, prob] : exact.pmf) REQUIRE(std::fabs(fp.mass_at(key.numerator, key.denominator) - prob.get_d()) <= 1e-12);
        }
    }
}

TEST_CASE("conditional_expectation") {
    CHECK(conditional_expectation(enumerate_joint(3, 1, rp(1, 2))).value == q(5, 12));
    CHECK(conditional_expectation(dp_joint(4, 2, rp(1, 2))).value == q(5, 12));
    for (std::size_t n = 2; n <= 15; ++n) {
        for (std::size_t k = 1; k < n; ++k) {
            CHECK(conditional_expectation(dp_joint(n, k, rp(1, 1))).value == 1);
        }
    }
    // brute-force oracle for several k
    for (std::size_t n = 3; n <= 11; ++n) {
        for (std::size_t k = 1; k < n; ++k) {
            REQUIRE(conditional_expectation(dp_joint(n, k, rp(2, 5))).value ==
                    oracle::conditional_expectation_bruteforce(n, k, q(2, 5)));
        }
    }
    CHECK_THROWS_AS(conditional_expectation(dp_joint(6, 2, rp(0, 1))), UndefinedConditioning);
    CHECK(prob_denominator_zero(dp_joint(6, 2, rp(0, 1))) == 1);
}

TEST_CASE("k=1 DP reproduces the closed form up to n = 64") {
    for (const auto& pv : {q(1, 2), q(1, 3), q(9, 10)}) {
        const BernoulliParam p(pv);
        for (std::size_t n : {2, 3, 5, 8, 13, 21, 34, 64}) {
            REQUIRE(conditional_expectation(dp_joint(n, 1, p)).value == expected_hot_hand_k1(n, p).value);
        }
    }
    for (std::size_t n : {10, 100, 400}) {
        const BernoulliParam p(0.37);
        CHECK(std::fabs(conditional_expectation(dp_joint(n, 1, p)).value - expected_hot_hand_k1(n, p).value) <= 1e-12);
    }
}

TEST_CASE("k in {2,3}: conditional expectation stays below p") {
    for (std::size_t k = 2; k <= 3; ++k) {
        for (std::size_t n = k + 2; n <= 20; ++n) {
            for (int i = 1; i <= 9; ++i) {
                const BernoulliParam p(i / 10.0);
                const double e = conditional_expectation(dp_joint(n, k, p)).value;
                REQUIRE(e >= 0.0);
                REQUIRE(e < p.value());
            }
        }
    }
}

TEST_CASE("per_term_expectation_k1 by enumeration") {
    CHECK(per_term_expectation_k1(3, 3, rp(1, 2)).value == q(1, 4));
    CHECK(per_term_expectation_k1(3, 2, rp(1, 2)).value == q(1, 6));
    CHECK(per_term_expectation_k1(5, 2, rp(1, 3)).value == per_term_expectation_k1(5, 3, rp(1, 3)).value);
    CHECK(per_term_expectation_k1(5, 3, rp(1, 3)).value == per_term_expectation_k1(5, 4, rp(1, 3)).value);

    for (std::size_t n = 3; n <= 12; ++n) {
        const auto p = rp(2, 7);
        Rational sum = 0;
        for (std::size_t j = 2; j <= n; ++j) sum += per_term_expectation_k1(n, j, p).value;
        REQUIRE(sum == expected_hot_hand_k1(n, p).value);
        REQUIRE(per_term_expectation_k1(n, n, p).value == last_term_expectation_k1(n, p).value);
        REQUIRE(per_term_expectation_k1(n, 2, p).value == interior_term_expectation_k1(n, p).value);
    }
    const double d = per_term_expectation_k1(6, 6, BernoulliParam(0.25)).value;
    CHECK(d == doctest::Approx(0.25 / 5).epsilon(1e-14));

    CHECK_THROWS_AS(per_term_expectation_k1(5, 1, rp(1, 2)), InvalidArgument);
    CHECK_THROWS_AS(per_term_expectation_k1(5, 6, rp(1, 2)), InvalidArgument);
    CHECK_THROWS_AS(per_term_expectation_k1(21, 2, rp(1, 2)), ResourceLimit);
}

TEST_CASE("distribution JSON export") {
    const auto j = to_json(dp_joint(3, 1, rp(1, 2)));
    CHECK(j["n"] == 3);
    CHECK(j["k"] == 1);
    CHECK(j["p"] == "1/2");
    CHECK(j["mode"] == "rational");
    REQUIRE(j["entries"].size() == 5);
    CHECK(j["entries"][1] == nlohmann::json{{"N", 0}, {"D", 1}, {"prob_num", "3"}, {"prob_den", "8"}});

    const auto f = to_json(dp_joint(3, 1, BernoulliParam(0.5)));
    CHECK(f["mode"] == "double");
    CHECK(f["entries"][1]["prob_float"] == 0.375);
}

TEST_CASE("arithmetic mode strings") {
    CHECK(parse_arithmetic_mode("rational") == ArithmeticMode::rational);
    CHECK(parse_arithmetic_mode("double") == ArithmeticMode::floating);
    CHECK(to_string(ArithmeticMode::floating) == "double");
    CHECK_THROWS_AS(parse_arithmetic_mode("float"), InvalidArgument);
}
