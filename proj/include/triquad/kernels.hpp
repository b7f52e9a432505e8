#pragma once

// Hot loops. Each has a plain serial reference kept for testing and an
// OpenMP version; both must return identical results.

#include <span>
#include <vector>

#include "triquad/bitset.hpp"
#include "triquad/linalg.hpp"

namespace triquad::kernels {

// dst[n] |= src[n - s] for every shift s, n < dst.size(). Parallel over
// output word blocks.
void shift_or(const Bits& src, std::span<const i64> shifts, Bits& dst);

// Represented set of sum alpha_i T(x_i) on [0, n].
Bits triangular_sieve_serial(std::span<const i64> coeffs, i64 n);
Bits triangular_sieve_parallel(std::span<const i64> coeffs, i64 n);

// Values v M v^t on [0, n].
Bits form_values_serial(const Mat3& m, i64 n);
Bits form_values_parallel(const Mat3& m, i64 n);

// All v in (Z/dZ)^3 with v M v^t == a (mod d), lexicographic order.
std::vector<Vec3> residue_scan_serial(const Mat3& m, i64 d, i64 a);
std::vector<Vec3> residue_scan_parallel(const Mat3& m, i64 d, i64 a);

// Triangular multiples {alpha T(x) : x >= 0, alpha T(x) <= n}, ascending.
std::vector<i64> triangular_shifts(i64 alpha, i64 n);

}  // namespace triquad::kernels
