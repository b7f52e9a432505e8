#pragma once

// Property suites shared by the unit tests and the acceptance runner.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "triquad/qforms.hpp"

namespace props {

using triquad::i64;

struct Outcome {
    std::string name;
    std::uint64_t checked = 0;
    std::uint64_t failures = 0;
    std::string first;  // description of the first failure

    void fail(std::string what) {
        if (failures++ == 0) first = std::move(what);
    }
    bool ok() const { return failures == 0 && checked > 0; }
};

// Nondecreasing coefficient lists of length 1..max_len with entries in [1, max_coeff].
void for_each_sum(std::size_t max_len, i64 max_coeff, const std::function<void(const std::vector<i64>&)>& fn);

// represents(sum, n) <=> odd_square_solvable(coeffs, 8n + sum of coeffs).
Outcome odd_square_equivalence(std::size_t max_len = 5, i64 max_coeff = 10, i64 max_n = 200);

// Library sieves (default, serial, raw kernels) against recursive search.
Outcome sieve_oracle(std::size_t max_len = 4, i64 max_coeff = 6, i64 bound = 300);

// Canonical reduction: transform is unimodular and correct, the output is an
// isometry invariant, and isometry() produces a valid witness.
Outcome reduction_roundtrip(int samples = 200, std::uint32_t seed = 20240611);

// genus_classes(f) is a partition of the forms of det(f) that share f's genus.
Outcome genus_partition(const std::vector<triquad::TernaryForm>& forms);

// Every table form and mate shipped with the data, deduplicated.
std::vector<triquad::TernaryForm> shipped_forms();

}  // namespace props
