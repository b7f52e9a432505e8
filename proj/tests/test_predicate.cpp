#include <doctest.h>

#include <fstream>
#include <numeric>

#include "triquad/data.hpp"
#include "triquad/predicate.hpp"

using namespace triquad;
using nlohmann::json;

namespace {

Predicate parse(const char* text) { return Predicate::from_json(json::parse(text)); }

void collect_moduli(const Predicate& p, i64& period) {
    if (p.kind == Predicate::Kind::mod) period = std::lcm(period, p.modulus);
    if (p.kind == Predicate::Kind::pattern) period = std::lcm(period, p.modulus * p.modulus * p.modulus);
    for (const auto& c : p.children) collect_moduli(c, period);
}

std::vector<Predicate> shipped_predicates() {
    const auto dir = resolve_data_dir(std::nullopt);
    std::vector<Predicate> out;
    std::ifstream in(dir / "tables.json");
    const auto j = json::parse(in);
    for (const auto& [id, p] : j.at("predicates").items()) out.push_back(Predicate::from_json(p));
    std::vector<ProofCase> cases;
    std::map<std::string, IdentityFamily> fams;
    load_proof_cases(dir / "proof_cases.json", cases, fams);
    for (const auto& c : cases) {
        out.push_back(c.target);
        for (const auto& r : c.rules) out.push_back(r.when);
    }
    return out;
}

}  // namespace

TEST_CASE("concrete evaluation") {
    const auto p = parse(R"({"all":[{"mod":8,"in":[1]},{"not":{"pattern":3,"parity":"odd","in":[1]}},{"gt":9}]})");
    CHECK(p(17));
    CHECK_FALSE(p(9));
    CHECK(p(33));        // 3 * 11 with 11 = 2 mod 3
    CHECK_FALSE(p(57));  // 3 * 19 with 19 = 1 mod 3
    CHECK(p(25));
    CHECK_FALSE(p(27));
    const auto q = parse(R"({"pattern":7,"parity":"any","max_exp":1,"in":[1]})");
    CHECK(q(8));
    CHECK(q(7));
    CHECK_FALSE(q(49));
    CHECK_FALSE(q(0));
    CHECK(parse(R"({"any":[{"mod":3,"in":[1]},{"mod":5,"in":[-1]}]})")(4));
}

TEST_CASE("json round trip and description") {
    const char* text = R"({"all":[{"mod":8,"in":[6]},{"not":{"mod":5,"in":[0]}}]})";
    const auto p = parse(text);
    CHECK(p.to_json() == json::parse(text));
    CHECK(p.describe() == "m%8 in {6} and not m%5 in {0}");
}

TEST_CASE("malformed predicates are rejected") {
    CHECK_THROWS_AS(parse(R"({"mod":0,"in":[0]})"), std::invalid_argument);
    CHECK_THROWS_AS(parse(R"({"pattern":4,"in":[1]})"), std::invalid_argument);
    CHECK_THROWS_AS(parse(R"({"pattern":3,"in":[0]})"), std::invalid_argument);
    CHECK_THROWS_AS(parse(R"({"all":[]})"), std::invalid_argument);
    CHECK_THROWS_AS(parse(R"({"pattern":3,"parity":"weird","in":[1]})"), std::invalid_argument);
    CHECK_THROWS_AS(parse(R"({"frobnicate":1})"), std::invalid_argument);
}

TEST_CASE("class evaluation") {
    const auto p = parse(R"({"mod":3,"in":[1]})");
    CHECK(evaluate_class(p, 4, 24, 0) == Tri::yes);
    CHECK(evaluate_class(p, 3, 24, 0) == Tri::no);
    CHECK(evaluate_class(p, 3, 8, 0) == Tri::unknown);
    const auto pat = parse(R"({"pattern":3,"parity":"odd","in":[2]})");
    CHECK(evaluate_class(pat, 15, 72, 0) == Tri::yes);
    CHECK(evaluate_class(pat, 12, 72, 0) == Tri::no);
    CHECK(evaluate_class(pat, 18, 72, 0) == Tri::unknown);  // 18 and 162 differ
    CHECK(evaluate_class(pat, 0, 72, 0) == Tri::unknown);
    const auto gt = parse(R"({"gt":10})");
    CHECK(evaluate_class(gt, 0, 8, 11) == Tri::yes);
    CHECK(evaluate_class(gt, 0, 8, 10) == Tri::unknown);
}

TEST_CASE("class evaluation is consistent with concrete evaluation") {
    std::size_t decided = 0;
    for (const auto& p : shipped_predicates()) {
        i64 period = 1;
        collect_moduli(p, period);
        REQUIRE(period <= 200000);
        const i64 lower = 1000;
        for (i64 r = 0; r < period; ++r) {
            const Tri t = evaluate_class(p, r, period, lower);
            if (t == Tri::unknown) continue;
            ++decided;
            i64 m = lower + mod_floor(r - lower, period);
            for (int k = 0; k < 4; ++k, m += period)
                if (p(m) != (t == Tri::yes)) FAIL(p.describe() << " r=" << r << " P=" << period << " m=" << m);
        }
    }
    CHECK(decided > 0);
}
