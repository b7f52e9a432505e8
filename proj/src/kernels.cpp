#include "triquad/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <functional>

#include "triquad/lattice.hpp"

namespace triquad::kernels {

namespace {
constexpr std::size_t kBlockWords = 2048;
}

std::vector<i64> triangular_shifts(i64 alpha, i64 n) {
    std::vector<i64> out;
    for (i64 x = 0;; ++x) {
        const i64 v = alpha * (x * (x + 1) / 2);
        if (v > n) break;
        out.push_back(v);
    }
    return out;
}

void shift_or(const Bits& src, std::span<const i64> shifts, Bits& dst) {
    const std::size_t nw = dst.word_count();
    const std::size_t sw = src.word_count();
    const auto* s = src.data();
    auto* o = dst.data();
    const std::size_t blocks = (nw + kBlockWords - 1) / kBlockWords;
    const auto nshifts = static_cast<std::ptrdiff_t>(shifts.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
        const std::size_t w0 = static_cast<std::size_t>(b) * kBlockWords;
        const std::size_t w1 = std::min(nw, w0 + kBlockWords);
        for (std::ptrdiff_t k = 0; k < nshifts; ++k) {
            const auto sh = static_cast<std::size_t>(shifts[k]);
            const std::size_t q = sh / Bits::word_bits;
            const unsigned r = static_cast<unsigned>(sh % Bits::word_bits);
            if (q >= w1) break;  // shifts ascend
            const std::size_t start = std::max(w0, q);
            if (r == 0) {
                for (std::size_t w = start; w < w1; ++w) {
                    const std::size_t j = w - q;
                    if (j < sw) o[w] |= s[j];
                }
            } else {
                for (std::size_t w = start; w < w1; ++w) {
                    const std::size_t j = w - q;
                    Bits::word_type v = j < sw ? (s[j] << r) : 0;
                    if (j >= 1 && j - 1 < sw) v |= s[j - 1] >> (Bits::word_bits - r);
                    o[w] |= v;
                }
            }
        }
    }
    dst.trim();
}

Bits triangular_sieve_serial(std::span<const i64> coeffs, i64 n) {
    const auto len = static_cast<std::size_t>(n + 1);
    std::vector<unsigned char> reach(len, 0), next(len, 0);
    reach[0] = 1;
    std::vector<i64> sorted(coeffs.begin(), coeffs.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    for (i64 alpha : sorted) {
        std::fill(next.begin(), next.end(), 0);
        for (i64 t : triangular_shifts(alpha, n))
            for (i64 v = 0; v + t <= n; ++v)
                if (reach[static_cast<std::size_t>(v)]) next[static_cast<std::size_t>(v + t)] = 1;
        reach.swap(next);
    }
    Bits out(len);
    for (std::size_t i = 0; i < len; ++i)
        if (reach[i]) out.set(i);
    return out;
}

Bits triangular_sieve_parallel(std::span<const i64> coeffs, i64 n) {
    const auto len = static_cast<std::size_t>(n + 1);
    Bits cur(len);
    cur.set(0);
    std::vector<i64> sorted(coeffs.begin(), coeffs.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    for (i64 alpha : sorted) {
        Bits next(len);
        const auto shifts = triangular_shifts(alpha, n);
        shift_or(cur, shifts, next);
        cur = std::move(next);
    }
    return cur;
}

Bits form_values_serial(const Mat3& m, i64 n) {
    Bits out(static_cast<std::size_t>(n + 1));
    lattice::for_each_vector(m, n, [&](const Vec3&, i64 q) { out.set(static_cast<std::size_t>(q)); });
    return out;
}

Bits form_values_parallel(const Mat3& m, i64 n) {
    Bits out(static_cast<std::size_t>(n + 1));
    auto* words = out.data();
    const i64 xb = lattice::x_bound(m, n);
    // Q(-v) = Q(v), so x >= 0 covers every value.
#pragma omp parallel for schedule(dynamic, 1)
    for (i64 x = 0; x <= xb; ++x) {
        lattice::for_each_in_slice(m, n, x, [&](const Vec3&, i64 q) {
            const auto i = static_cast<std::size_t>(q);
            std::atomic_ref<Bits::word_type> w(words[i / Bits::word_bits]);
            w.fetch_or(Bits::word_type{1} << (i % Bits::word_bits), std::memory_order_relaxed);
        });
    }
    return out;
}

namespace {
inline i64 qmod(const Mat3& m, i64 x, i64 y, i64 z, i64 d) {
    const i64 q = m[0][0] * x * x + m[1][1] * y * y + m[2][2] * z * z +
                  2 * (m[0][1] * x * y + m[0][2] * x * z + m[1][2] * y * z);
    return mod_floor(q, d);
}
}  // namespace

std::vector<Vec3> residue_scan_serial(const Mat3& m, i64 d, i64 a) {
    std::vector<Vec3> out;
    for (i64 x = 0; x < d; ++x)
        for (i64 y = 0; y < d; ++y)
            for (i64 z = 0; z < d; ++z)
                if (qmod(m, x, y, z, d) == a) out.push_back({x, y, z});
    return out;
}

std::vector<Vec3> residue_scan_parallel(const Mat3& m, i64 d, i64 a) {
    std::vector<std::vector<Vec3>> slices(static_cast<std::size_t>(d));
#pragma omp parallel for schedule(dynamic, 1)
    for (i64 x = 0; x < d; ++x) {
        auto& out = slices[static_cast<std::size_t>(x)];
        for (i64 y = 0; y < d; ++y)
            for (i64 z = 0; z < d; ++z)
                if (qmod(m, x, y, z, d) == a) out.push_back({x, y, z});
    }
    std::vector<Vec3> out;
    for (auto& s : slices) out.insert(out.end(), s.begin(), s.end());
    return out;
}

}  // namespace triquad::kernels
