#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "triquad/bitset.hpp"
#include "triquad/linalg.hpp"

namespace triquad {

// "1, 4,5" -> {1, 4, 5}; throws std::invalid_argument on malformed input.
std::vector<i64> parse_int_list(std::string_view text);

// T(x) = (x^2 + x) / 2. Throws std::overflow_error instead of wrapping.
i64 tri(i64 x);

// Delta_{alpha_1..alpha_k}: coefficients kept sorted ascending, all >= 1.
// The empty sum is allowed and represents only 0.
class TriangularSum {
public:
    TriangularSum() = default;
    explicit TriangularSum(std::vector<i64> coeffs);

    // "1,4,5" -> Delta_{1,4,5}. Sets *was_sorted to false if the input was
    // not ascending.
    static TriangularSum parse(std::string_view text, bool* was_sorted = nullptr);

    const std::vector<i64>& coeffs() const { return coeffs_; }
    std::size_t size() const { return coeffs_.size(); }
    bool empty() const { return coeffs_.empty(); }
    i64 last() const { return coeffs_.empty() ? 1 : coeffs_.back(); }
    i64 coeff_sum() const;

    TriangularSum extended(i64 alpha) const;
    TriangularSum without(std::size_t index) const;
    std::string label() const;

    auto operator<=>(const TriangularSum&) const = default;

private:
    std::vector<i64> coeffs_;
};

class RepSieve {
public:
    RepSieve(std::string owner, i64 bound, Bits bits)
        : owner_(std::move(owner)), bound_(bound), bits_(std::move(bits)) {}

    const std::string& owner() const { return owner_; }
    i64 bound() const { return bound_; }
    const Bits& bits() const { return bits_; }
    bool represented(i64 n) const;
    std::vector<i64> unrepresented() const { return bits_.zeros(); }

private:
    std::string owner_;
    i64 bound_;
    Bits bits_;
};

RepSieve sieve(const TriangularSum& sum, i64 bound);
// Serial reference path, same result as sieve().
RepSieve sieve_serial(const TriangularSum& sum, i64 bound);
// Sieve of sum + alpha from the sieve of sum.
RepSieve extend(const RepSieve& base, const TriangularSum& extended_sum, i64 alpha);

// Direct search; independent of the sieve.
bool represents(const TriangularSum& sum, i64 n);

struct TruantList {
    std::vector<i64> values;
    i64 bound = 0;
    // True when fewer than the requested count exist in [0, bound].
    bool exhausted = false;
};

TruantList truants(const TriangularSum& sum, std::size_t count, i64 bound);
TruantList truants(const RepSieve& s, std::size_t count);

// sum alpha_i x_i^2 = n with every x_i odd (x_i > 0 in the witness).
bool odd_square_solvable(std::span<const i64> coeffs, i64 n);
std::optional<std::vector<i64>> odd_square_witness(std::span<const i64> coeffs, i64 n);

}  // namespace triquad
