#pragma once

// Exact enumeration of lattice points inside the ellipsoid Q(v) <= N of a
// positive definite Gram matrix. Ranges come from the Schur complements, so
// every visited (x, y) slice is nonempty over the reals and the z range is
// exact.

#include "triquad/linalg.hpp"

namespace triquad::lattice {

// |x| <= x_bound(M, N) for every v with Q(v) <= N.
inline i64 x_bound(const Mat3& m, i64 n) {
    const i128 s = static_cast<i128>(m[1][1]) * m[2][2] - static_cast<i128>(m[1][2]) * m[1][2];
    const i128 d = static_cast<i128>(det3(m));
    return static_cast<i64>(isqrt128(static_cast<i128>(n) * s / d));
}

// Calls f(Vec3, Q) for every v = (x, y, z) with Q(v) <= N and the given x.
template <class F>
void for_each_in_slice(const Mat3& m, i64 n, i64 x, F&& f) {
    const i128 a00 = m[0][0], a01 = m[0][1], a02 = m[0][2];
    const i128 a11 = m[1][1], a12 = m[1][2], a22 = m[2][2];
    const i128 p = a00 * a22 - a02 * a02;
    const i128 r = a01 * a22 - a02 * a12;
    const i128 s = a11 * a22 - a12 * a12;
    const i128 X = x;
    const i128 disc_y = r * r * X * X - s * (p * X * X - a22 * n);
    if (disc_y < 0) return;
    const i128 sy = isqrt128(disc_y);
    const i64 y_lo = ceil_div(-r * X - sy, s);
    const i64 y_hi = floor_div(-r * X + sy, s);
    for (i64 y = y_lo; y <= y_hi; ++y) {
        const i128 Y = y;
        const i128 b = a02 * X + a12 * Y;
        const i128 c = a00 * X * X + 2 * a01 * X * Y + a11 * Y * Y;
        const i128 disc_z = b * b - a22 * (c - n);
        if (disc_z < 0) continue;
        const i128 sz = isqrt128(disc_z);
        const i64 z_lo = ceil_div(-b - sz, a22);
        const i64 z_hi = floor_div(-b + sz, a22);
        for (i64 z = z_lo; z <= z_hi; ++z) {
            const i128 Z = z;
            const i128 q = c + 2 * b * Z + a22 * Z * Z;
            f(Vec3{x, y, z}, static_cast<i64>(q));
        }
    }
}

template <class F>
void for_each_vector(const Mat3& m, i64 n, F&& f) {
    if (n < 0) return;
    const i64 xb = x_bound(m, n);
    for (i64 x = -xb; x <= xb; ++x) for_each_in_slice(m, n, x, f);
}

// Calls f(v) for every v with Q(v) == n exactly; z solved from the quadratic.
// f returns false to stop early; the return value reports whether the walk
// ran to completion.
template <class F>
bool for_each_of_norm(const Mat3& m, i64 n, F&& f) {
    if (n < 0) return true;
    const i128 a00 = m[0][0], a01 = m[0][1], a02 = m[0][2];
    const i128 a11 = m[1][1], a12 = m[1][2], a22 = m[2][2];
    const i128 p = a00 * a22 - a02 * a02;
    const i128 r = a01 * a22 - a02 * a12;
    const i128 s = a11 * a22 - a12 * a12;
    const i64 xb = x_bound(m, n);
    for (i64 x = -xb; x <= xb; ++x) {
        const i128 X = x;
        const i128 disc_y = r * r * X * X - s * (p * X * X - a22 * n);
        if (disc_y < 0) continue;
        const i128 sy = isqrt128(disc_y);
        const i64 y_lo = ceil_div(-r * X - sy, s);
        const i64 y_hi = floor_div(-r * X + sy, s);
        for (i64 y = y_lo; y <= y_hi; ++y) {
            const i128 Y = y;
            const i128 b = a02 * X + a12 * Y;
            const i128 c = a00 * X * X + 2 * a01 * X * Y + a11 * Y * Y;
            const i128 disc = b * b - a22 * (c - n);
            i128 root = 0;
            if (!is_square(disc, &root)) continue;
            // a22 z^2 + 2 b z + (c - n) = 0  =>  z = (-b +- root) / a22
            for (int sign : {-1, 1}) {
                if (sign == 1 && root == 0) break;
                const i128 num = -b + sign * root;
                if (num % a22 != 0) continue;
                if (!f(Vec3{x, y, static_cast<i64>(num / a22)})) return false;
            }
        }
    }
    return true;
}

}  // namespace triquad::lattice
