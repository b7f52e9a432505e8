#include "triquad/goodvec.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <set>

#include "triquad/kernels.hpp"

namespace triquad {

namespace mp = boost::multiprecision;

Vec3 reduce_mod(const Vec3& v, i64 d) { return {mod_floor(v[0], d), mod_floor(v[1], d), mod_floor(v[2], d)}; }

bool ResidueSet::contains(const Vec3& v) const {
    return std::binary_search(members.begin(), members.end(), reduce_mod(v, d));
}

ResidueSet r_set(const TernaryForm& g, i64 d, i64 a) {
    if (d < 1) throw std::invalid_argument("modulus must be >= 1");
    if (a < 0 || a >= d) throw std::invalid_argument("residue must lie in [0, d)");
    return {d, kernels::residue_scan_parallel(g.gram(), d, a)};
}

std::vector<ScalingIsometry> scaling_isometries(const TernaryForm& f, const TernaryForm& g, i64 d) {
    if (d < 1) throw std::invalid_argument("scale must be >= 1");
    const i64 d2 = d * d;
    // det T^2 det M_f = d^6 det M_g is necessary.
    {
        const i128 lhs = static_cast<i128>(d2) * d2 * d2 * g.det();
        if (lhs % f.det() != 0 || !is_square(lhs / f.det())) return {};
    }
    std::array<std::vector<Vec3>, 3> cols;
    for (int j = 0; j < 3; ++j) cols[j] = vectors_of_norm(f, d2 * g(j, j));
    std::vector<std::vector<ScalingIsometry>> per_first(cols[0].size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(cols[0].size()); ++i) {
        const Vec3& t1 = cols[0][static_cast<std::size_t>(i)];
        auto& out = per_first[static_cast<std::size_t>(i)];
        for (const Vec3& t2 : cols[1]) {
            if (f.bilinear(t1, t2) != d2 * g(0, 1)) continue;
            for (const Vec3& t3 : cols[2]) {
                if (f.bilinear(t1, t3) != d2 * g(0, 2) || f.bilinear(t2, t3) != d2 * g(1, 2)) continue;
                Mat3 T{};
                set_column(T, 0, t1);
                set_column(T, 1, t2);
                set_column(T, 2, t3);
                out.push_back({T, d});
            }
        }
    }
    std::vector<ScalingIsometry> all;
    for (auto& v : per_first) all.insert(all.end(), v.begin(), v.end());
    return all;
}

bool is_good(const Vec3& v, const std::vector<ScalingIsometry>& isos, i64 d) {
    for (const auto& s : isos) {
        const Vec3 w = mul(s.T, v);
        if (w[0] % d == 0 && w[1] % d == 0 && w[2] % d == 0) return true;
    }
    return false;
}

ResidueSet b_set(const TernaryForm& g, i64 d, i64 a, const std::vector<ScalingIsometry>& isos) {
    const auto r = r_set(g, d, a);
    std::vector<char> bad(r.members.size(), 0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(r.members.size()); ++i)
        bad[static_cast<std::size_t>(i)] = is_good(r.members[static_cast<std::size_t>(i)], isos, d) ? 0 : 1;
    ResidueSet out{d, {}};
    for (std::size_t i = 0; i < r.members.size(); ++i)
        if (bad[i]) out.members.push_back(r.members[i]);
    return out;
}

ResidueSet b_set(const TernaryForm& f, const TernaryForm& g, i64 d, i64 a) {
    return b_set(g, d, a, scaling_isometries(f, g, d));
}

bool precedes(const TernaryForm& g, const TernaryForm& f, i64 d, i64 a) { return b_set(f, g, d, a).empty(); }

namespace {

TransferReport transfer(const TernaryForm& f, const TernaryForm& g, i64 d, i64 a, i64 bound,
                        const std::vector<i64>& excluded_base) {
    TransferReport rep;
    rep.d = d;
    rep.a = a;
    rep.bound = bound;
    const auto gv = form_sieve(g, bound);
    const auto fv = form_sieve(f, bound);
    std::vector<char> skip(static_cast<std::size_t>(bound + 1), 0);
    for (i64 q : excluded_base) {
        if (q <= 0) continue;
        for (i64 s = 0; q * s * s <= bound; ++s) skip[static_cast<std::size_t>(q * s * s)] = 1;
    }
    if (!excluded_base.empty()) skip[0] = 1;
    for (i64 m = mod_floor(a, d); m <= bound; m += d) {
        if (!gv.bits().test(static_cast<std::size_t>(m))) continue;
        if (skip[static_cast<std::size_t>(m)]) {
            ++rep.skipped;
            continue;
        }
        ++rep.checked;
        if (!fv.bits().test(static_cast<std::size_t>(m))) rep.counterexamples.push_back(m);
    }
    return rep;
}

using BigInt = mp::cpp_int;
using BigMat = std::array<std::array<BigInt, 3>, 3>;

BigMat big_mul(const BigMat& a, const BigMat& b) {
    BigMat c;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            c[i][j] = 0;
            for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

}  // namespace

TransferReport verify_good(const TernaryForm& f, const TernaryForm& g, i64 d, i64 a, i64 bound) {
    return transfer(f, g, d, a, bound, {});
}

PmeCertificate pme_certificate(const Mat3& T, const TernaryForm& f, const TernaryForm& g, i64 d, i64 a) {
    PmeCertificate c;
    c.T = T;
    c.d = d;

    // (i) (T/d)^12 != I, exactly.
    BigMat t, p;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            t[i][j] = T[i][j];
            p[i][j] = (i == j) ? 1 : 0;
        }
    for (int k = 0; k < 12; ++k) p = big_mul(p, t);
    const BigInt d12 = mp::pow(BigInt(d), 12);
    bool is_identity = true;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (p[i][j] != (i == j ? d12 : BigInt(0))) is_identity = false;
    c.infinite_order = !is_identity;
    if (!c.infinite_order) c.failures.push_back("condition (i): T/d has finite order");

    // (ii)
    const Mat3 lhs = congruent(g.gram(), T);
    c.scales_g = true;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (lhs[i][j] != d * d * g(i, j)) c.scales_g = false;
    if (!c.scales_g) c.failures.push_back("condition (ii): T^t M_g T != d^2 M_g");

    // (iii)
    const auto b = b_set(f, g, d, a);
    c.b_size = b.size();
    const std::vector<ScalingIsometry> single{{T, d}};
    c.covers_b = std::all_of(b.members.begin(), b.members.end(), [&](const Vec3& v) { return is_good(v, single, d); });
    if (!c.covers_b) c.failures.push_back("condition (iii): some v in B has T v != 0 mod d");

    // Integer eigenvalues: roots of x^3 - tr x^2 + c2 x - det dividing det.
    const i64 tr = T[0][0] + T[1][1] + T[2][2];
    const Mat3 adj = adjugate(T);
    const i64 c2 = adj[0][0] + adj[1][1] + adj[2][2];
    const i64 det = det3(T);
    auto charpoly = [&](i64 x) {
        return static_cast<i128>(x) * x * x - static_cast<i128>(tr) * x * x + static_cast<i128>(c2) * x - det;
    };
    std::set<i64> roots;
    if (det == 0) roots.insert(0);
    const i64 ad = det < 0 ? -det : det;
    for (i64 q = 1; q * q <= ad; ++q) {
        if (ad % q) continue;
        for (i64 r : {q, -q, ad / q, -(ad / q)})
            if (charpoly(r) == 0) roots.insert(r);
    }
    for (i64 lam : roots) {
        c.eigenvalues.push_back(lam);
        Mat3 a_ = T;
        for (int i = 0; i < 3; ++i) a_[i][i] -= lam;
        // Kernel of a rank-2 matrix: cross product of two independent rows.
        std::optional<Vec3> k;
        const Vec3 r0 = a_[0], r1 = a_[1], r2 = a_[2];
        for (const auto& [x, y] : {std::pair{r0, r1}, std::pair{r0, r2}, std::pair{r1, r2}}) {
            const Vec3 cr = cross(x, y);
            if (cr != Vec3{0, 0, 0}) {
                k = cr;
                break;
            }
        }
        if (!k) {
            c.failures.push_back("eigenvalue " + std::to_string(lam) + " has an eigenspace of dimension >= 2");
            continue;
        }
        const i64 gcd = std::abs(content(*k));
        Vec3 z{(*k)[0] / gcd, (*k)[1] / gcd, (*k)[2] / gcd};
        // first nonzero entry positive
        if (z[0] < 0 || (z[0] == 0 && (z[1] < 0 || (z[1] == 0 && z[2] < 0)))) z = negate(z);
        for (const Vec3& s : {z, negate(z)}) {
            c.eigenvectors.push_back(s);
            c.qz.push_back(g.eval(s));
        }
    }
    return c;
}

TransferReport verify_pme(const PmeCertificate& cert, const TernaryForm& f, const TernaryForm& g, i64 d, i64 a,
                          i64 bound) {
    if (!cert.valid()) throw std::invalid_argument("certificate is not valid");
    std::vector<i64> base(cert.qz.begin(), cert.qz.end());
    // Always exclude 0 = Q(z) * 0^2.
    if (base.empty()) base.push_back(0);
    auto rep = transfer(f, g, d, a, bound, base);
    return rep;
}

}  // namespace triquad
