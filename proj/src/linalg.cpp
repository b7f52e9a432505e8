#include "triquad/linalg.hpp"

#include <cmath>

namespace triquad {

i128 isqrt128(i128 n) {
    if (n < 0) throw std::domain_error("isqrt of negative value");
    if (n < 2) return n;
    auto s = static_cast<i128>(std::sqrt(static_cast<long double>(n)));
    while (s * s > n) --s;
    while ((s + 1) * (s + 1) <= n) ++s;
    return s;
}

std::string to_string(const Vec3& v) {
    return "(" + std::to_string(v[0]) + "," + std::to_string(v[1]) + "," + std::to_string(v[2]) + ")";
}

std::string to_string(const Mat3& m) {
    std::string s = "[";
    for (int i = 0; i < 3; ++i) {
        if (i) s += ",";
        s += "[" + std::to_string(m[i][0]) + "," + std::to_string(m[i][1]) + "," + std::to_string(m[i][2]) + "]";
    }
    return s + "]";
}

}  // namespace triquad
