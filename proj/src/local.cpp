#include "triquad/local.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "triquad/errors.hpp"

namespace triquad::local {

namespace mp = boost::multiprecision;
using Rat = mp::cpp_rational;
using Int = mp::cpp_int;

std::vector<i64> prime_factors(i64 n) {
    std::vector<i64> out;
    if (n < 0) n = -n;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.push_back(n);
    return out;
}

int valuation(i64 n, i64 p) {
    if (n == 0) throw std::invalid_argument("valuation of zero");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

namespace {

int val(Int n, i64 p) {
    if (n == 0) return 1 << 20;
    if (n < 0) n = -n;
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

int val(const Rat& r, i64 p) {
    if (r == 0) return 1 << 20;
    return val(mp::numerator(r), p) - val(mp::denominator(r), p);
}

Rat ppow(i64 p, int e) {
    Rat r = 1;
    if (e >= 0)
        for (int i = 0; i < e; ++i) r *= p;
    else
        for (int i = 0; i < -e; ++i) r /= p;
    return r;
}

i64 ipow(i64 p, int e) {
    i64 r = 1;
    for (int i = 0; i < e; ++i) r *= p;
    return r;
}

i64 mod_inverse(i64 a, i64 m) {
    i64 g = m, x = 0, x1 = 1, a1 = mod_floor(a, m);
    while (a1) {
        const i64 q = g / a1;
        std::tie(g, a1) = std::make_tuple(a1, g - q * a1);
        std::tie(x, x1) = std::make_tuple(x1, x - q * x1);
    }
    if (g != 1) throw std::logic_error("no modular inverse");
    return mod_floor(x, m);
}

// u = num/den with den prime to p, reduced modulo m = p^k.
i64 unit_mod(i64 num, i64 den, i64 m) {
    if (m == 1) return 0;
    return static_cast<i64>(static_cast<i128>(mod_floor(num, m)) * mod_inverse(den, m) % m);
}

i64 to_i64(const Int& n) {
    if (n > Int(std::numeric_limits<i64>::max()) || n < Int(std::numeric_limits<i64>::min()))
        throw std::overflow_error("Jordan unit does not fit in 64 bits");
    return static_cast<i64>(n);
}

using Hist = std::vector<std::uint64_t>;

Hist convolve(const Hist& a, const Hist& b, i64 m) {
    std::vector<std::pair<i64, std::uint64_t>> nb;
    for (i64 t = 0; t < m; ++t)
        if (b[static_cast<std::size_t>(t)]) nb.push_back({t, b[static_cast<std::size_t>(t)]});
    Hist out(static_cast<std::size_t>(m), 0);
    for (i64 s = 0; s < m; ++s) {
        const auto ca = a[static_cast<std::size_t>(s)];
        if (!ca) continue;
        for (auto [t, cb] : nb) {
            i64 u = s + t;
            if (u >= m) u -= m;
            out[static_cast<std::size_t>(u)] += ca * cb;
        }
    }
    return out;
}

Hist unary_hist(i64 coeff_mod_m, i64 m) {
    Hist h(static_cast<std::size_t>(m), 0);
    for (i64 x = 0; x < m; ++x)
        ++h[static_cast<std::size_t>(static_cast<i128>(coeff_mod_m) * x % m * x % m)];
    return h;
}

// 2^scale * (H or A), values mod 2^k.
Hist even_block_hist(int scale, bool type_a, int k) {
    static std::mutex mu;
    static std::map<std::tuple<int, bool, int>, Hist> cache;
    {
        std::lock_guard lock(mu);
        auto it = cache.find({scale, type_a, k});
        if (it != cache.end()) return it->second;
    }
    const i64 m = ipow(2, k);
    Hist h(static_cast<std::size_t>(m), 0);
    const int kr = k - scale - 1;
    if (kr <= 0) {
        h[0] = static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(m);
    } else {
        const i64 r = ipow(2, kr);
        const std::uint64_t lifts = std::uint64_t{1} << (2 * (k - kr));
        const i64 mult = ipow(2, scale + 1);
        for (i64 x = 0; x < r; ++x)
            for (i64 y = 0; y < r; ++y) {
                const i64 q = type_a ? (x * x + x * y + y * y) : (x * y);
                h[static_cast<std::size_t>(static_cast<i128>(mult) * (q % r) % m)] += lifts;
            }
    }
    std::lock_guard lock(mu);
    cache.emplace(std::make_tuple(scale, type_a, k), h);
    return h;
}

}  // namespace

std::vector<JordanBlock> jordan_blocks(const Mat3& gram, i64 p) {
    std::array<std::array<Rat, 3>, 3> a;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a[i][j] = gram[i][j];
    std::vector<int> rem{0, 1, 2};
    std::vector<JordanBlock> out;

    auto eliminate_1 = [&](int i) {
        for (int j : rem) {
            if (j == i) continue;
            const Rat c = a[j][i] / a[i][i];
            for (int l = 0; l < 3; ++l) a[j][l] -= c * a[i][l];
            for (int l = 0; l < 3; ++l) a[l][j] -= c * a[l][i];
        }
    };

    while (!rem.empty()) {
        int best = 1 << 21, bi = -1, bj = -1;
        for (int i : rem)
            for (int j : rem) {
                const int v = val(a[i][j], p);
                if (v < best || (v == best && i == j && bi != bj)) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0 || best >= (1 << 20)) throw std::invalid_argument("degenerate form in Jordan splitting");
        if (bi == bj) {
            const Rat u = a[bi][bi] / ppow(p, best);
            JordanBlock b;
            b.dim = 1;
            b.scale = best;
            b.unit_num = to_i64(mp::numerator(u));
            b.unit_den = to_i64(mp::denominator(u));
            out.push_back(b);
            eliminate_1(bi);
            std::erase(rem, bi);
            continue;
        }
        if (p != 2) {
            // Make a diagonal entry reach the minimal valuation.
            for (int l = 0; l < 3; ++l) a[bi][l] += a[bj][l];
            for (int l = 0; l < 3; ++l) a[l][bi] += a[l][bj];
            continue;
        }
        // p = 2, off-diagonal minimum: split off a 2x2 block.
        const int i = bi, j = bj;
        const Rat det = a[i][i] * a[j][j] - a[i][j] * a[i][j];
        for (int k : rem) {
            if (k == i || k == j) continue;
            // (c_i, c_j) = (a_ki, a_kj) B^{-1}
            const Rat ci = (a[k][i] * a[j][j] - a[k][j] * a[i][j]) / det;
            const Rat cj = (a[k][j] * a[i][i] - a[k][i] * a[i][j]) / det;
            for (int l = 0; l < 3; ++l) a[k][l] -= ci * a[i][l] + cj * a[j][l];
            for (int l = 0; l < 3; ++l) a[l][k] -= ci * a[l][i] + cj * a[l][j];
        }
        const Rat scaled_det = det / ppow(2, 2 * best);
        // det / 4^v is a 2-adic unit; 3 mod 8 means A, 7 mod 8 means H.
        const Int n = mp::numerator(scaled_det), d = mp::denominator(scaled_det);
        const i64 r = unit_mod(to_i64(n % 8), to_i64(d % 8), 8);
        JordanBlock b;
        b.dim = 2;
        b.scale = best;
        b.even_type_a = (r == 3);
        if (r != 3 && r != 7) throw std::logic_error("unexpected 2-adic block determinant");
        out.push_back(b);
        std::erase(rem, i);
        std::erase(rem, j);
    }
    return out;
}

std::vector<std::uint64_t> value_counts(const Mat3& gram, i64 p, int k) {
    const i64 m = ipow(p, k);
    if (m > kMaxCountModulus) throw ResourceLimit("local count modulus too large");
    Hist h(static_cast<std::size_t>(m), 0);
    h[0] = 1;
    for (const auto& b : jordan_blocks(gram, p)) {
        Hist bh;
        if (b.dim == 2) {
            bh = even_block_hist(b.scale, b.even_type_a, k);
        } else {
            i64 c = 0;
            if (b.scale < k) {
                const i64 u = unit_mod(b.unit_num, b.unit_den, m);
                c = static_cast<i64>(static_cast<i128>(ipow(p, b.scale)) * u % m);
            }
            bh = unary_hist(c, m);
        }
        h = convolve(h, bh, m);
    }
    return h;
}

std::vector<std::uint64_t> value_counts_brute(const Mat3& g, i64 p, int k) {
    const i64 m = ipow(p, k);
    Hist h(static_cast<std::size_t>(m), 0);
    for (i64 x = 0; x < m; ++x)
        for (i64 y = 0; y < m; ++y)
            for (i64 z = 0; z < m; ++z) {
                const i64 q = g[0][0] * x * x + g[1][1] * y * y + g[2][2] * z * z +
                              2 * (g[0][1] * x * y + g[0][2] * x * z + g[1][2] * y * z);
                ++h[static_cast<std::size_t>(mod_floor(q, m))];
            }
    return h;
}

std::vector<OddComponent> odd_symbol(const Mat3& gram, i64 p) {
    if (p == 2) throw std::invalid_argument("odd_symbol needs an odd prime");
    std::map<int, std::pair<int, i64>> by_scale;  // scale -> (dim, unit product mod p)
    for (const auto& b : jordan_blocks(gram, p)) {
        auto& e = by_scale.try_emplace(b.scale, 0, 1).first->second;
        e.first += 1;
        e.second = e.second * unit_mod(b.unit_num, b.unit_den, p) % p;
    }
    std::vector<OddComponent> out;
    for (auto [s, e] : by_scale) {
        i64 r = 1, base = e.second, ex = (p - 1) / 2;
        while (ex) {
            if (ex & 1) r = static_cast<i64>(static_cast<i128>(r) * base % p);
            base = static_cast<i64>(static_cast<i128>(base) * base % p);
            ex >>= 1;
        }
        out.push_back({s, e.first, r == 1 ? 1 : -1});
    }
    return out;
}

int fingerprint_exponent(i64 det, i64 p) { return valuation(4 * det, p) + 3; }

bool locally_equivalent(const Mat3& f, const Mat3& g, i64 p) {
    const i64 det = det3(f);
    if (det != det3(g)) return false;
    if (p != 2 && odd_symbol(f, p) != odd_symbol(g, p)) return false;
    const int k = fingerprint_exponent(det, p);
    const i64 m = ipow(p, k);
    if (m > kMaxCountModulus) {
        if (p == 2) throw ResourceLimit("2-adic count modulus too large");
        return true;  // odd p: Jordan symbol already decided it
    }
    return value_counts(f, p, k) == value_counts(g, p, k);
}

}  // namespace triquad::local
