#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "triquad/trisums.hpp"

namespace triquad {

enum class Classification { proper, dagger, star, rejected };
std::string_view to_string(Classification c);

struct EscalationNode {
    TriangularSum sum;
    std::optional<i64> t1, t2;
    i64 exception = 0;
};

struct CandidateRecord {
    TriangularSum sum;
    i64 exception = 0;
    Classification classification = Classification::rejected;
    i64 verified_bound = 0;
    // Ternary candidates: almost universality rests on an unproved sweep.
    bool conditional = false;
    // Smallest unrepresented values (at most three).
    std::vector<i64> missed;
    // dagger: a maximal sub-sum with the same single exception.
    std::optional<TriangularSum> dagger_witness;
    // proper: two unrepresented values for each maximal sub-sum.
    std::vector<std::pair<TriangularSum, std::array<i64, 2>>> sub_sum_witnesses;
};

struct EscalationResult {
    i64 exception = 0;
    i64 bound = 0;
    std::size_t max_k = 0;
    // Every node below the root, sorted by coefficients.
    std::vector<CandidateRecord> records;
    // Rejected nodes at depth max_k that were not extended.
    std::vector<TriangularSum> depth_capped;
    std::vector<std::string> diagnostics;

    std::size_t count(Classification c) const;
    std::map<std::size_t, std::size_t> proper_by_k() const;
};

bool valid_exception(i64 m);
const std::vector<i64>& criterion_set(i64 m);

EscalationResult escalate(i64 m, i64 bound, std::size_t max_k = 8);
CandidateRecord classify(const TriangularSum& sum, i64 m, i64 bound);
bool criterion_check(const TriangularSum& sum, i64 m);

struct TailRuleReport {
    TriangularSum prefix;
    i64 exception = 0;
    i64 bound = 0;
    std::optional<i64> t1, t2;
    i64 window_lo = 0, window_hi = 0;
    std::vector<std::pair<i64, Classification>> children;
    bool window_matches = false;  // escalation child range == [a, a + m]
    bool pattern_ok = false;      // first rejected, rest dagger, none proper
};

// Throws std::invalid_argument if the prefix has fewer than five
// coefficients, represents m, or is itself a candidate.
TailRuleReport tail_rule_check(i64 m, const TriangularSum& prefix, i64 bound);

}  // namespace triquad
