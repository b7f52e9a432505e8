#include "triquad/trisums.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <stdexcept>

#include "triquad/kernels.hpp"

namespace triquad {

i64 tri(i64 x) {
    if (x < 0) x = -(x + 1);  // T(x) = T(-x-1); no overflow for any x
    i64 p = 0, x1 = 0;
    if (__builtin_add_overflow(x, 1, &x1) || __builtin_mul_overflow(x, x1, &p))
        throw std::overflow_error("T(x) overflows for x = " + std::to_string(x));
    return p / 2;
}

TriangularSum::TriangularSum(std::vector<i64> coeffs) : coeffs_(std::move(coeffs)) {
    for (i64 a : coeffs_)
        if (a < 1) throw std::invalid_argument("coefficients must be positive");
    std::sort(coeffs_.begin(), coeffs_.end());
}

std::vector<i64> parse_int_list(std::string_view text) {
    std::vector<i64> v;
    std::size_t pos = 0;
    for (;;) {
        const std::size_t comma = text.find(',', pos);
        std::string_view tok = text.substr(pos, comma == std::string_view::npos ? text.size() - pos : comma - pos);
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        i64 x = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
        if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
            throw std::invalid_argument("malformed integer list: '" + std::string(text) + "'");
        v.push_back(x);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return v;
}

TriangularSum TriangularSum::parse(std::string_view text, bool* was_sorted) {
    auto v = parse_int_list(text);
    if (was_sorted) *was_sorted = std::is_sorted(v.begin(), v.end());
    return TriangularSum(std::move(v));
}

i64 TriangularSum::coeff_sum() const {
    i64 s = 0;
    for (i64 a : coeffs_) s += a;
    return s;
}

TriangularSum TriangularSum::extended(i64 alpha) const {
    auto c = coeffs_;
    c.push_back(alpha);
    return TriangularSum(std::move(c));
}

TriangularSum TriangularSum::without(std::size_t index) const {
    auto c = coeffs_;
    c.erase(c.begin() + static_cast<std::ptrdiff_t>(index));
    return TriangularSum(std::move(c));
}

std::string TriangularSum::label() const {
    std::string s;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(coeffs_[i]);
    }
    return s;
}

bool RepSieve::represented(i64 n) const {
    if (n < 0 || n > bound_) throw std::out_of_range("value outside sieve bound");
    return bits_.test(static_cast<std::size_t>(n));
}

RepSieve sieve(const TriangularSum& sum, i64 bound) {
    if (bound < 0) throw std::invalid_argument("negative bound");
    return RepSieve(sum.label(), bound, kernels::triangular_sieve_parallel(sum.coeffs(), bound));
}

RepSieve sieve_serial(const TriangularSum& sum, i64 bound) {
    if (bound < 0) throw std::invalid_argument("negative bound");
    return RepSieve(sum.label(), bound, kernels::triangular_sieve_serial(sum.coeffs(), bound));
}

RepSieve extend(const RepSieve& base, const TriangularSum& extended_sum, i64 alpha) {
    Bits next(base.bits().size());
    const auto shifts = kernels::triangular_shifts(alpha, base.bound());
    kernels::shift_or(base.bits(), shifts, next);
    return RepSieve(extended_sum.label(), base.bound(), std::move(next));
}

namespace {

bool is_triangular(i64 n) {
    if (n < 0) return false;
    return is_square(static_cast<i128>(8) * n + 1);
}

bool represents_rec(const std::vector<i64>& c, std::size_t i, i64 rem) {
    if (rem == 0) return true;
    if (i + 1 == c.size()) return rem % c[i] == 0 && is_triangular(rem / c[i]);
    for (i64 x = 0;; ++x) {
        const i64 v = c[i] * (x * (x + 1) / 2);
        if (v > rem) break;
        if (represents_rec(c, i + 1, rem - v)) return true;
    }
    return false;
}

bool odd_rec(const std::vector<i64>& c, std::size_t i, i64 rem, const std::vector<i64>& tail_min,
             std::vector<i64>& x_out) {
    if (i == c.size()) return rem == 0;
    if (rem < tail_min[i]) return false;
    if (i + 1 == c.size()) {
        if (rem % c[i] != 0) return false;
        i128 r = 0;
        const i64 q = rem / c[i];
        if (!is_square(q, &r) || (r % 2) == 0) return false;
        x_out[i] = static_cast<i64>(r);
        return true;
    }
    for (i64 x = 1;; x += 2) {
        const i64 v = c[i] * x * x;
        if (v + tail_min[i + 1] > rem) break;
        x_out[i] = x;
        if (odd_rec(c, i + 1, rem - v, tail_min, x_out)) return true;
    }
    return false;
}

}  // namespace

bool represents(const TriangularSum& sum, i64 n) {
    if (n < 0) return false;
    if (n == 0) return true;
    if (sum.empty()) return false;
    std::vector<i64> c(sum.coeffs().rbegin(), sum.coeffs().rend());
    return represents_rec(c, 0, n);
}

TruantList truants(const RepSieve& s, std::size_t count) {
    TruantList out;
    out.bound = s.bound();
    for (i64 n = 0; n <= s.bound() && out.values.size() < count; ++n)
        if (!s.bits().test(static_cast<std::size_t>(n))) out.values.push_back(n);
    out.exhausted = out.values.size() < count;
    return out;
}

TruantList truants(const TriangularSum& sum, std::size_t count, i64 bound) {
    if (count < 1) throw std::invalid_argument("truant count must be >= 1");
    return truants(sieve(sum, bound), count);
}

std::optional<std::vector<i64>> odd_square_witness(std::span<const i64> coeffs, i64 n) {
    if (n < 0) return std::nullopt;
    // Largest coefficient first; original positions restored at the end.
    std::vector<std::size_t> order(coeffs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return coeffs[a] > coeffs[b]; });
    std::vector<i64> c(coeffs.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeffs[order[i]];
    std::vector<i64> tail_min(c.size() + 1, 0);
    for (std::size_t i = c.size(); i-- > 0;) tail_min[i] = tail_min[i + 1] + c[i];
    std::vector<i64> x(c.size(), 0);
    if (!odd_rec(c, 0, n, tail_min, x)) return std::nullopt;
    std::vector<i64> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[order[i]] = x[i];
    return out;
}

bool odd_square_solvable(std::span<const i64> coeffs, i64 n) { return odd_square_witness(coeffs, n).has_value(); }

}  // namespace triquad
