#pragma once

// Brute-force references that share no code with the library kernels.

#include <cmath>
#include <vector>

#include "triquad/linalg.hpp"

namespace oracle {

using triquad::i64;
using triquad::Mat3;

inline i64 tri(i64 x) { return x * (x + 1) / 2; }

// n = sum c_i T(x_i) with x_i >= 0.
inline bool tri_represents(const std::vector<i64>& c, i64 n, std::size_t i = 0) {
    if (i == c.size()) return n == 0;
    for (i64 x = 0; c[i] * tri(x) <= n; ++x)
        if (tri_represents(c, n - c[i] * tri(x), i + 1)) return true;
    return false;
}

// N = sum c_i x_i^2 with every x_i odd and positive.
inline bool odd_squares(const std::vector<i64>& c, i64 N, std::size_t i = 0) {
    if (i == c.size()) return N == 0;
    for (i64 x = 1; c[i] * x * x <= N; x += 2)
        if (odd_squares(c, N - c[i] * x * x, i + 1)) return true;
    return false;
}

inline i64 form_value(const Mat3& m, i64 x, i64 y, i64 z) {
    return m[0][0] * x * x + m[1][1] * y * y + m[2][2] * z * z + 2 * (m[0][1] * x * y + m[0][2] * x * z + m[1][2] * y * z);
}

// Cube search; the radius covers every solution since
// |v_i|^2 <= n * adj(M)_ii / det(M) for Q(v) = n.
inline bool form_represents(const Mat3& m, i64 n, i64 min_radius = 20) {
    const Mat3 adj = triquad::adjugate(m);
    const double det = static_cast<double>(triquad::det3(m));
    i64 r = min_radius;
    for (int i = 0; i < 3; ++i)
        r = std::max<i64>(r, static_cast<i64>(std::ceil(std::sqrt(n * static_cast<double>(adj[i][i]) / det))) + 1);
    for (i64 x = -r; x <= r; ++x)
        for (i64 y = -r; y <= r; ++y)
            for (i64 z = -r; z <= r; ++z)
                if (form_value(m, x, y, z) == n) return true;
    return false;
}

// All values <= bound, same cube argument.
inline std::vector<bool> form_values(const Mat3& m, i64 bound) {
    std::vector<bool> hit(static_cast<std::size_t>(bound + 1), false);
    const Mat3 adj = triquad::adjugate(m);
    const double det = static_cast<double>(triquad::det3(m));
    i64 r = 0;
    for (int i = 0; i < 3; ++i)
        r = std::max<i64>(r, static_cast<i64>(std::ceil(std::sqrt(bound * static_cast<double>(adj[i][i]) / det))) + 1);
    for (i64 x = -r; x <= r; ++x)
        for (i64 y = -r; y <= r; ++y)
            for (i64 z = -r; z <= r; ++z) {
                const i64 q = form_value(m, x, y, z);
                if (q <= bound) hit[static_cast<std::size_t>(q)] = true;
            }
    return hit;
}

}  // namespace oracle
