#pragma once

// p-adic invariants of integral ternary forms, used for genus testing.

#include <cstdint>
#include <vector>

#include "triquad/linalg.hpp"

namespace triquad::local {

std::vector<i64> prime_factors(i64 n);
int valuation(i64 n, i64 p);

// One Jordan component over Z_(p): a 1x1 block p^scale * u, or (p = 2 only)
// a 2x2 block 2^scale * H or 2^scale * A with H = [[0,1],[1,0]],
// A = [[2,1],[1,2]].
struct JordanBlock {
    int dim = 1;
    int scale = 0;
    // 1x1: unit part as a residue mod p^k for the caller's k; stored as the
    // reduced numerator/denominator pair so any k can be taken later.
    i64 unit_num = 1, unit_den = 1;
    bool even_type_a = false;  // 2x2 only
};

std::vector<JordanBlock> jordan_blocks(const Mat3& gram, i64 p);

// counts[t] = #{v mod p^k : Q(v) == t mod p^k}.
std::vector<std::uint64_t> value_counts(const Mat3& gram, i64 p, int k);
// Brute-force version of value_counts for testing; p^k must be small.
std::vector<std::uint64_t> value_counts_brute(const Mat3& gram, i64 p, int k);

// Odd p: (scale, dim, Legendre symbol of the unit determinant) per scale.
struct OddComponent {
    int scale, dim, legendre;
    bool operator==(const OddComponent&) const = default;
};
std::vector<OddComponent> odd_symbol(const Mat3& gram, i64 p);

// Exponent at which counts are compared: v_p(4 det) + 3.
int fingerprint_exponent(i64 det, i64 p);

// Largest p^k for which value_counts is used; above it odd primes fall
// back to the Jordan symbol alone.
inline constexpr i64 kMaxCountModulus = i64{1} << 21;

bool locally_equivalent(const Mat3& f, const Mat3& g, i64 p);

}  // namespace triquad::local
