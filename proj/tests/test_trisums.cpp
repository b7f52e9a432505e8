#include <doctest.h>

#include "oracles.hpp"
#include "properties.hpp"
#include "triquad/kernels.hpp"
#include "triquad/trisums.hpp"

using namespace triquad;

TEST_CASE("tri values and symmetry") {
    CHECK(tri(0) == 0);
    CHECK(tri(3) == 6);
    CHECK(tri(-4) == 6);
    for (i64 x = -1000000; x <= 1000000; ++x)
        if (tri(x) != tri(-x - 1)) FAIL("tri(" << x << ") != tri(" << -x - 1 << ")");
}

TEST_CASE("parsing coefficient lists") {
    bool sorted = true;
    const auto s = TriangularSum::parse("5,1,4", &sorted);
    CHECK_FALSE(sorted);
    CHECK(s.coeffs() == std::vector<i64>{1, 4, 5});
    CHECK(s.coeff_sum() == 10);
    CHECK_THROWS_AS(TriangularSum::parse("1,,2"), std::invalid_argument);
    CHECK_THROWS_AS(TriangularSum::parse("1,-2"), std::invalid_argument);
    CHECK_THROWS_AS(TriangularSum::parse("x"), std::invalid_argument);
}

TEST_CASE("sieve examples") {
    CHECK(sieve(TriangularSum({1, 4, 5}), 100).unrepresented() == std::vector<i64>{2});
    CHECK(sieve(TriangularSum({1, 2, 3}), 1000).unrepresented().empty());
    // 2T(x) only hits 0, 2, 6, 12, 20, ...
    CHECK(sieve(TriangularSum({2}), 10).unrepresented() == std::vector<i64>{1, 3, 4, 5, 7, 8, 9, 10});
}

TEST_CASE("represents") {
    CHECK_FALSE(represents(TriangularSum({1, 4, 5}), 2));
    CHECK(represents(TriangularSum({7, 11}), 0));
    CHECK_FALSE(represents(TriangularSum({2, 3, 4}), 8));
}

TEST_CASE("truants") {
    auto t = [](std::vector<i64> c) { return truants(TriangularSum(std::move(c)), 2, 100).values; };
    CHECK(t({2}) == std::vector<i64>{1, 3});
    CHECK(t({2, 2, 3}) == std::vector<i64>{1, 10});
    CHECK(t({2, 2, 3, 6}) == std::vector<i64>{1, 16});
    CHECK(truants(TriangularSum({1, 2, 3}), 2, 500).exhausted);
}

TEST_CASE("odd square solvability") {
    const std::vector<i64> c2234{2, 2, 3, 4};
    CHECK(odd_square_solvable(c2234, 11));
    CHECK_FALSE(odd_square_solvable(std::vector<i64>{1}, 4));
    const std::vector<i64> c234{2, 3, 4};
    const auto w = odd_square_witness(c234, 9);
    REQUIRE(w);
    CHECK(*w == std::vector<i64>{1, 1, 1});
    for (i64 N = 0; N <= 400; ++N) CHECK(odd_square_solvable(c234, N) == oracle::odd_squares(c234, N));
}

TEST_CASE("odd-square equivalence, exhaustive") {
    const auto r = props::odd_square_equivalence();
    INFO(r.first);
    CHECK(r.failures == 0);
    CHECK(r.checked == 3002 * 201);
}

TEST_CASE("sieve agrees with brute force") {
    const auto r = props::sieve_oracle();
    INFO(r.first);
    CHECK(r.failures == 0);
}

TEST_CASE("monotonicity under extension") {
    props::for_each_sum(3, 8, [](const std::vector<i64>& c) {
        const TriangularSum s(c);
        const auto base = sieve(s, 500);
        for (i64 a = 1; a <= 8; ++a) {
            const auto ext = sieve(s.extended(a), 500);
            const auto inc = extend(base, s.extended(a), a);
            CHECK(inc.bits() == ext.bits());
            for (i64 n : ext.unrepresented()) CHECK_FALSE(base.represented(n));
        }
    });
}

TEST_CASE("serial and parallel sieves agree at scale") {
    const std::vector<i64> c{1, 4, 5};
    CHECK(kernels::triangular_sieve_serial(c, 200000) == kernels::triangular_sieve_parallel(c, 200000));
    const std::vector<i64> d{2, 3, 4, 5, 11};
    CHECK(kernels::triangular_sieve_serial(d, 100000) == kernels::triangular_sieve_parallel(d, 100000));
}
