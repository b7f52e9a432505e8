#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace triquad {

using i64 = std::int64_t;
using i128 = __int128;
using Vec3 = std::array<i64, 3>;
using Mat3 = std::array<std::array<i64, 3>, 3>;

inline constexpr Mat3 identity3() { return Mat3{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }

inline Mat3 transpose(const Mat3& a) {
    Mat3 t{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t[i][j] = a[j][i];
    return t;
}

inline Mat3 mul(const Mat3& a, const Mat3& b) {
    Mat3 c{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            i64 s = 0;
            for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
            c[i][j] = s;
        }
    return c;
}

inline Vec3 mul(const Mat3& a, const Vec3& v) {
    Vec3 r{};
    for (int i = 0; i < 3; ++i) r[i] = a[i][0] * v[0] + a[i][1] * v[1] + a[i][2] * v[2];
    return r;
}

inline Vec3 column(const Mat3& a, int j) { return {a[0][j], a[1][j], a[2][j]}; }

inline void set_column(Mat3& a, int j, const Vec3& v) {
    for (int i = 0; i < 3; ++i) a[i][j] = v[i];
}

inline i64 det3(const Mat3& a) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

inline i64 det3(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
    Mat3 m{};
    set_column(m, 0, c0);
    set_column(m, 1, c1);
    set_column(m, 2, c2);
    return det3(m);
}

// Classical adjugate: adj(a) * a = det(a) * I.
inline Mat3 adjugate(const Mat3& a) {
    Mat3 r{};
    r[0][0] = a[1][1] * a[2][2] - a[1][2] * a[2][1];
    r[0][1] = a[0][2] * a[2][1] - a[0][1] * a[2][2];
    r[0][2] = a[0][1] * a[1][2] - a[0][2] * a[1][1];
    r[1][0] = a[1][2] * a[2][0] - a[1][0] * a[2][2];
    r[1][1] = a[0][0] * a[2][2] - a[0][2] * a[2][0];
    r[1][2] = a[0][2] * a[1][0] - a[0][0] * a[1][2];
    r[2][0] = a[1][0] * a[2][1] - a[1][1] * a[2][0];
    r[2][1] = a[0][1] * a[2][0] - a[0][0] * a[2][1];
    r[2][2] = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    return r;
}

// Inverse of a matrix with determinant +-1.
inline Mat3 unimodular_inverse(const Mat3& a) {
    const i64 d = det3(a);
    if (d != 1 && d != -1) throw std::invalid_argument("matrix is not unimodular");
    Mat3 r = adjugate(a);
    for (auto& row : r)
        for (auto& x : row) x *= d;
    return r;
}

// U^t M U
inline Mat3 congruent(const Mat3& m, const Mat3& u) { return mul(transpose(u), mul(m, u)); }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline i64 content(const Vec3& v) { return std::gcd(std::gcd(v[0], v[1]), v[2]); }

inline Vec3 negate(const Vec3& v) { return {-v[0], -v[1], -v[2]}; }

inline i64 floor_div(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return static_cast<i64>(q);
}

inline i64 ceil_div(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
    return static_cast<i64>(q);
}

inline i64 mod_floor(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

// floor(sqrt(n)) for n >= 0.
i128 isqrt128(i128 n);
inline i64 isqrt(i64 n) { return static_cast<i64>(isqrt128(n)); }
inline bool is_square(i128 n, i128* root = nullptr) {
    if (n < 0) return false;
    i128 s = isqrt128(n);
    if (root) *root = s;
    return s * s == n;
}

std::string to_string(const Vec3& v);
std::string to_string(const Mat3& m);

}  // namespace triquad
