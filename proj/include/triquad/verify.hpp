#pragma once

#include <optional>
#include <string>
#include <vector>

#include "triquad/data.hpp"

namespace triquad {

struct CheckResult {
    std::string case_id;
    std::string check;
    std::string expected;
    std::string computed;
    bool pass = false;
};

struct Report {
    std::vector<CheckResult> results;

    void add(std::string case_id, std::string check, std::string expected, std::string computed, bool pass);
    void append(const Report& other);
    // Stable sort by case_id; checks keep their order within a case.
    void sort();
    bool ok() const;
    std::size_t failures() const;
    const CheckResult* first_failure() const;
    nlohmann::json to_json() const;
};

inline constexpr i64 kRowBound = 20000;

Report verify_table_row(const TableRow& row, i64 bound = kRowBound);
Report verify_identity_family(const IdentityFamily& family, int l_max = 6);
Report verify_offsets(const ProofCase& pc, const std::map<std::string, IdentityFamily>& families);

// Sieve the sum to the bound and compare its unrepresented set with the
// expected one. Without an expectation, passes iff exactly one value is missed.
Report verify_candidate_pipeline(const TriangularSum& sum, const std::optional<std::vector<i64>>& expected, i64 bound);

Report conjecture_sweep(i64 bound);

// For lo <= n <= hi, one of 8n+10 and 8n-54 is a value of x^2+(2y+z)^2+8z^2;
// Delta_{1,1,8,8} misses only 5 and Delta_{1,1,8,30} only 5 and 71.
Report verify_auxiliary_1188(i64 lo = 20, i64 hi = 5000, i64 bound = 10000);

// Golden comparison of one escalation table, including the tail rule on the
// rejected quinary prefixes.
Report verify_escalation_table(const EscalationTable& table, const EscalationResult& result);

inline constexpr i64 kEscalationBound = 100000;

// Every check above over the shipped data, rows in parallel.
Report verify_all(const DataSet& ds, i64 bound = kRowBound, i64 escalation_bound = kEscalationBound);

}  // namespace triquad
