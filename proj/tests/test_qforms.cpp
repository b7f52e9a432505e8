#include <doctest.h>

#include "oracles.hpp"
#include "properties.hpp"
#include "triquad/kernels.hpp"
#include "triquad/qforms.hpp"

using namespace triquad;

namespace {

const TernaryForm k3416 = TernaryForm::diagonal(3, 4, 16);
const TernaryForm kMate3416 = orthogonal_sum(4, 7, 1, 7);

}  // namespace

TEST_CASE("evaluation") {
    CHECK(k3416.eval({1, 0, 0}) == 3);
    CHECK(orthogonal_sum(6, 3, 1, 3).eval({0, 1, 1}) == 8);
    CHECK(TernaryForm(Mat3{{{3, 1, 0}, {1, 3, 0}, {0, 0, 6}}}).eval({1, 1, 0}) == 8);
    CHECK(k3416.eval({0, 0, 0}) == 0);
    CHECK(TernaryForm::parse("<1,2,10>") == TernaryForm::diagonal(1, 2, 10));
    CHECK(TernaryForm::parse("[[3,1,0],[1,3,0],[0,0,6]]").det() == 48);
    CHECK_THROWS_AS(TernaryForm::parse("[[1,2,0],[2,1,0],[0,0,1]]"), std::invalid_argument);
}

TEST_CASE("reduction") {
    CHECK(reduce(TernaryForm::diagonal(16, 4, 3)).form == k3416);
    const auto r = reduce(TernaryForm::diagonal(1, 2, 10));
    CHECK(r.form == TernaryForm::diagonal(1, 2, 10));
    CHECK(r.transform == identity3());
    const auto m = reduce(orthogonal_sum(4, 4, 2, 5));
    CHECK(m.form.det() == 64);
    CHECK(is_isometric(m.form, orthogonal_sum(4, 4, 2, 5)));
}

TEST_CASE("reduction round-trips on random forms") {
    const auto r = props::reduction_roundtrip();
    INFO(r.first);
    CHECK(r.checked == 200);
    CHECK(r.failures == 0);
}

TEST_CASE("isometry") {
    CHECK(is_isometric(k3416, TernaryForm::diagonal(4, 16, 3)));
    CHECK_FALSE(is_isometric(k3416, kMate3416));
    const auto u = isometry(k3416, k3416);
    REQUIRE(u.has_value());
    CHECK(congruent(k3416.gram(), *u) == k3416.gram());
}

TEST_CASE("enumeration by determinant") {
    const auto d1 = enumerate_reduced(1);
    REQUIRE(d1.size() == 1);
    CHECK(d1[0] == TernaryForm::diagonal(1, 1, 1));
    const auto d20 = enumerate_reduced(20);
    CHECK(std::binary_search(d20.begin(), d20.end(), TernaryForm::diagonal(1, 2, 10)));
    const auto d192 = enumerate_reduced(192);
    for (const auto& f : {k3416, kMate3416})
        CHECK(std::binary_search(d192.begin(), d192.end(), reduce(f).form));
}

TEST_CASE("genus membership") {
    CHECK(same_genus(k3416, kMate3416));
    CHECK(same_genus(TernaryForm::diagonal(1, 2, 10), TernaryForm::diagonal(1, 2, 10)));
    CHECK_FALSE(same_genus(TernaryForm::diagonal(2, 3, 4), TernaryForm::diagonal(1, 1, 24)));
    CHECK(same_genus(TernaryForm::diagonal(2, 3, 4), TernaryForm::diagonal(1, 2, 12)));
}

TEST_CASE("class numbers") {
    CHECK(genus_classes(TernaryForm::diagonal(2, 3, 3)).class_count() == 1);

    const auto g234 = genus_classes(TernaryForm::diagonal(2, 3, 4));
    CHECK(g234.class_count() == 2);
    CHECK(g234.contains(TernaryForm::diagonal(1, 2, 12)));

    const auto g3416 = genus_classes(k3416);
    CHECK(g3416.class_count() == 2);
    CHECK(g3416.contains(kMate3416));

    // x^2 + (2y+z)^2 + 8z^2
    const auto g1188 = genus_classes(TernaryForm(Mat3{{{1, 0, 0}, {0, 4, 2}, {0, 2, 9}}}));
    CHECK(g1188.class_count() == 3);
    CHECK(g1188.contains(TernaryForm::diagonal(1, 1, 32)));
    CHECK(g1188.contains(TernaryForm(Mat3{{{2, 0, 1}, {0, 2, 1}, {1, 1, 9}}})));

    // (2x+y)^2 + y^2 + 15t^2
    const auto g2215 = genus_classes(TernaryForm(Mat3{{{4, 2, 0}, {2, 2, 0}, {0, 0, 15}}}));
    CHECK(g2215.class_count() == 2);
    CHECK(g2215.contains(TernaryForm::diagonal(1, 6, 10)));
}

TEST_CASE("genus classes partition the determinant") {
    const auto r = props::genus_partition(props::shipped_forms());
    INFO(r.first);
    CHECK(r.checked > 30);
    CHECK(r.failures == 0);
}

TEST_CASE("represents_form against cube search") {
    for (const auto& f : props::shipped_forms()) {
        const auto truth = oracle::form_values(f.gram(), 400);
        for (i64 m = 0; m <= 400; ++m) {
            const bool got = represents_form(f, m);
            if (got != truth[static_cast<std::size_t>(m)]) FAIL(f.label() << " m=" << m);
            if (got) {
                const auto v = find_representation(f, m);
                REQUIRE(v);
                CHECK(f.eval(*v) == m);
            }
        }
    }
    CHECK_FALSE(represents_form(TernaryForm::diagonal(1, 2, 10), 5));
    CHECK(represents_form(TernaryForm::diagonal(1, 2, 10), 3));
    CHECK(represents_form(TernaryForm::diagonal(1, 2, 10), 0));
    CHECK_FALSE(represents_form(TernaryForm::diagonal(2, 2, 7), 1));
    CHECK(represents_form(TernaryForm::diagonal(2, 2, 7), 2));
}

TEST_CASE("vectors of a given norm") {
    const auto v = vectors_of_norm(TernaryForm::diagonal(1, 1, 1), 1);
    CHECK(v.size() == 6);
    CHECK(vectors_of_norm(TernaryForm::diagonal(1, 1, 1), 3).size() == 8);
}

TEST_CASE("form value kernels") {
    for (const auto& f : props::shipped_forms()) {
        const auto s = kernels::form_values_serial(f.gram(), 3000);
        CHECK(s == kernels::form_values_parallel(f.gram(), 3000));
        CHECK(form_sieve(f, 3000).bits() == s);
    }
}

TEST_CASE("genus representation for <3,4,16>") {
    const auto f = form_sieve(k3416, 100000);
    const auto g = form_sieve(kMate3416, 100000);
    std::vector<i64> bad;
    for (i64 m = 7; m <= 100000; m += 8)
        if (!excluded_power_pattern(m, 3, {2}) && !f.represented(m) && !g.represented(m)) bad.push_back(m);
    CHECK(bad.empty());
}

TEST_CASE("excluded power patterns") {
    CHECK(excluded_power_pattern(15, 3, {2}));
    CHECK_FALSE(excluded_power_pattern(9, 3, {2}));
    // 50 = 5^2 * 2: the exponent is even.
    CHECK_FALSE(excluded_power_pattern(50, 5, {2, 3}));
    CHECK(excluded_power_pattern(50, 5, {2, 3}, Parity::even));
    CHECK_FALSE(excluded_power_pattern(0, 3, {1, 2}));
    CHECK(excluded_power_pattern(2, 3, {2}, Parity::even));
}
