#include <doctest.h>

#include <map>

#include "triquad/escalation.hpp"

using namespace triquad;

namespace {

const EscalationResult& run(i64 m) {
    static std::map<i64, EscalationResult> cache;
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, escalate(m, 100000, 8)).first;
    return it->second;
}

}  // namespace

TEST_CASE("proper counts") {
    const std::map<i64, std::map<std::size_t, std::size_t>> expected{
        {1, {{4, 11}, {5, 18}}},
        {2, {{3, 1}, {4, 34}, {5, 37}}},
        {4, {{4, 127}, {5, 11}}},
        {5, {{4, 56}, {5, 115}}},
        {8, {{4, 7}, {5, 73}}},
    };
    for (const auto& [m, by_k] : expected) {
        INFO("m=" << m);
        CHECK(run(m).proper_by_k() == by_k);
    }
}

TEST_CASE("classification examples") {
    CHECK(classify(TriangularSum({2, 2, 2, 3}), 1, 10000).classification == Classification::proper);
    CHECK(classify(TriangularSum({1, 1, 3, 5}), 8, 10000).classification == Classification::star);
    CHECK(classify(TriangularSum({2, 2, 3, 3, 18}), 1, 10000).classification == Classification::rejected);
    const auto c145 = classify(TriangularSum({1, 4, 5}), 2, 100000);
    CHECK(c145.classification == Classification::proper);
    CHECK(c145.conditional);
}

TEST_CASE("criterion examples") {
    CHECK(criterion_check(TriangularSum({2, 2, 3, 4}), 1));
    CHECK_FALSE(criterion_check(TriangularSum({2, 2, 2, 2}), 1));
    CHECK_FALSE(criterion_check(TriangularSum({1, 1, 3, 12, 81}), 8));
    CHECK_THROWS_AS(criterion_check(TriangularSum({1, 2}), 3), std::invalid_argument);
    CHECK_THROWS_AS(escalate(3, 1000), std::invalid_argument);
}

TEST_CASE("criterion soundness over every reachable sum") {
    std::size_t n = 0;
    for (i64 m : {1, 2, 4, 5, 8}) {
        for (const auto& r : run(m).records) {
            if (r.sum.size() > 5) continue;
            ++n;
            const auto miss = sieve(r.sum, 10000).unrepresented();
            const bool single = miss == std::vector<i64>{m};
            if (criterion_check(r.sum, m) != single) FAIL(r.sum.label() << " m=" << m);
        }
    }
    CHECK(n > 500);
}

TEST_CASE("pruning") {
    for (i64 m : {1, 2, 4, 5, 8})
        for (const auto& r : run(m).records) {
            if (r.classification != Classification::proper) continue;
            CHECK_FALSE(represents(r.sum, m));
            const auto& c = r.sum.coeffs();
            for (std::size_t i = 0; i < c.size(); ++i)
                CHECK(sieve(r.sum.without(i), 10000).unrepresented().size() >= 2);
        }
}

TEST_CASE("tail rule") {
    const auto t = tail_rule_check(1, TriangularSum({2, 3, 3, 3, 3}), 10000);
    CHECK(t.window_matches);
    CHECK(t.pattern_ok);
    REQUIRE(t.children.size() == 2);
    CHECK(t.children[0] == std::pair<i64, Classification>{3, Classification::rejected});
    CHECK(t.children[1] == std::pair<i64, Classification>{4, Classification::dagger});
    CHECK_THROWS_AS(tail_rule_check(1, TriangularSum({2, 2, 3, 3, 3}), 10000), std::invalid_argument);
    CHECK_THROWS_AS(tail_rule_check(8, TriangularSum({1, 1, 3, 9, 12}), 10000), std::invalid_argument);
}

TEST_CASE("determinism") {
    const auto a = escalate(8, 20000);
    const auto b = escalate(8, 20000);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].sum == b.records[i].sum);
        CHECK(a.records[i].classification == b.records[i].classification);
        CHECK(a.records[i].missed == b.records[i].missed);
    }
}
