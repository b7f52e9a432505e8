#include "triquad/qforms.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <set>

#include "triquad/kernels.hpp"
#include "triquad/lattice.hpp"
#include "triquad/local.hpp"

namespace triquad {

namespace {

// Candidate-vector cap for the canonical basis search.
constexpr std::size_t kMaxCandidates = 10000;

bool positive_definite(const Mat3& m) {
    if (m[0][0] <= 0) return false;
    if (static_cast<i128>(m[0][0]) * m[1][1] - static_cast<i128>(m[0][1]) * m[0][1] <= 0) return false;
    return det3(m) > 0;
}

bool symmetric(const Mat3& m) { return m[0][1] == m[1][0] && m[0][2] == m[2][0] && m[1][2] == m[2][1]; }

i64 qval(const Mat3& m, const Vec3& v) {
    i64 s = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += v[i] * m[i][j] * v[j];
    return s;
}

i64 bval(const Mat3& m, const Vec3& v, const Vec3& w) {
    i64 s = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += v[i] * m[i][j] * w[j];
    return s;
}

Vec3 add_scaled(const Vec3& a, i64 s, const Vec3& b) { return {a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]}; }

i64 round_div(i64 a, i64 b) {  // nearest integer to a/b, b > 0
    return floor_div(2 * static_cast<i128>(a) + b, 2 * static_cast<i128>(b));
}

// Greedy reduction: Gauss-reduce the first two vectors, then replace the
// third by its distance to their span (exact 2D closest vector), repeat.
// For rank 3 the fixed point is Minkowski-reduced.
Mat3 greedy_reduce(const Mat3& g) {
    std::array<Vec3, 3> b{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
    auto q = [&](const Vec3& v) { return qval(g, v); };
    for (int iter = 0; iter < 100000; ++iter) {
        std::stable_sort(b.begin(), b.end(), [&](const Vec3& x, const Vec3& y) { return q(x) < q(y); });
        // Lagrange reduction of b0, b1.
        for (;;) {
            const i64 r = round_div(bval(g, b[0], b[1]), q(b[0]));
            if (r != 0) b[1] = add_scaled(b[1], -r, b[0]);
            if (q(b[1]) < q(b[0]))
                std::swap(b[0], b[1]);
            else
                break;
        }
        // Exact closest vector to b2 in span(b0, b1): enumerate the slice
        // with b2-coordinate 1 of the form in the basis (b2, b0, b1).
        Mat3 u{};
        set_column(u, 0, b[2]);
        set_column(u, 1, b[0]);
        set_column(u, 2, b[1]);
        const Mat3 gp = congruent(g, u);
        // Upper bound from rounding the real minimiser.
        const i128 g11 = gp[1][1], g12 = gp[1][2], g22 = gp[2][2], g01 = gp[0][1], g02 = gp[0][2];
        const i128 den = g11 * g22 - g12 * g12;
        const i128 sx = -(g01 * g22 - g02 * g12), sy = -(g02 * g11 - g01 * g12);
        i64 best = q(b[2]);
        Vec3 best_c{1, 0, 0};
        for (i64 dx : {0, 1})
            for (i64 dy : {0, 1}) {
                const Vec3 c{1, floor_div(sx, den) + dx, floor_div(sy, den) + dy};
                const i64 v = qval(gp, c);
                if (v < best) {
                    best = v;
                    best_c = c;
                }
            }
        lattice::for_each_in_slice(gp, best, 1, [&](const Vec3& c, i64 v) {
            if (v < best || (v == best && c < best_c)) {
                best = v;
                best_c = c;
            }
        });
        const Vec3 nb2 = add_scaled(add_scaled(b[2], best_c[1], b[0]), best_c[2], b[1]);
        const bool improved = q(nb2) < q(b[2]);
        b[2] = nb2;
        if (!improved && q(b[2]) >= q(b[1])) break;
    }
    Mat3 u{};
    for (int j = 0; j < 3; ++j) set_column(u, j, b[j]);
    if (det3(u) < 0) set_column(u, 2, negate(b[2]));
    return u;
}

using Key = std::array<i64, 9>;

Key gram_key(const Mat3& m) {
    return {m[0][0],          m[1][1],          m[2][2],  std::abs(m[0][1]), std::abs(m[0][2]),
            std::abs(m[1][2]), -m[0][1], -m[0][2], -m[1][2]};
}

std::vector<Vec3> norm_vectors(const Mat3& g, i64 n) {
    std::vector<Vec3> out;
    lattice::for_each_of_norm(g, n, [&](const Vec3& v) {
        out.push_back(v);
        if (out.size() > kMaxCandidates) throw ResourceLimit("too many candidate vectors in isometry search");
        return true;
    });
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TernaryForm::TernaryForm(const Mat3& gram) : gram_(gram) {
    if (!symmetric(gram)) throw std::invalid_argument("Gram matrix must be symmetric: " + to_string(gram));
    if (!positive_definite(gram)) throw std::invalid_argument("form is not positive definite: " + to_string(gram));
}

TernaryForm TernaryForm::diagonal(i64 a, i64 b, i64 c) { return TernaryForm(Mat3{{{a, 0, 0}, {0, b, 0}, {0, 0, c}}}); }

TernaryForm orthogonal_sum(i64 a, i64 b11, i64 b12, i64 b22) {
    return TernaryForm(Mat3{{{a, 0, 0}, {0, b11, b12}, {0, b12, b22}}});
}

TernaryForm TernaryForm::parse(std::string_view text) {
    std::string s(text);
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    if (!s.empty() && s.front() == '[') {
        const auto j = nlohmann::json::parse(s);
        Mat3 m{};
        if (!j.is_array() || j.size() != 3) throw std::invalid_argument("Gram matrix must be 3x3");
        for (int i = 0; i < 3; ++i) {
            if (!j[i].is_array() || j[i].size() != 3) throw std::invalid_argument("Gram matrix must be 3x3");
            for (int k = 0; k < 3; ++k) m[i][k] = j[i][k].get<i64>();
        }
        return TernaryForm(m);
    }
    if (!s.empty() && s.front() == '<' && s.back() == '>') s = s.substr(1, s.size() - 2);
    const auto v = parse_int_list(s);
    if (v.size() != 3) throw std::invalid_argument("diagonal form needs three entries");
    return diagonal(v[0], v[1], v[2]);
}

i64 TernaryForm::eval(const Vec3& v) const { return qval(gram_, v); }
i64 TernaryForm::bilinear(const Vec3& v, const Vec3& w) const { return bval(gram_, v, w); }

bool TernaryForm::is_diagonal() const { return gram_[0][1] == 0 && gram_[0][2] == 0 && gram_[1][2] == 0; }

std::string TernaryForm::label() const {
    if (is_diagonal())
        return "<" + std::to_string(gram_[0][0]) + "," + std::to_string(gram_[1][1]) + "," +
               std::to_string(gram_[2][2]) + ">";
    return to_string(gram_);
}

Reduction reduce(const TernaryForm& f) {
    const Mat3& g = f.gram();
    const Mat3 u0 = greedy_reduce(g);
    const Mat3 m = congruent(g, u0);
    const i64 l1 = m[0][0], l2 = m[1][1], l3 = m[2][2];
    const auto s1 = norm_vectors(m, l1);
    const auto s2 = (l2 == l1) ? s1 : norm_vectors(m, l2);
    const auto s3 = (l3 == l2) ? s2 : norm_vectors(m, l3);
    std::optional<Key> best;
    Mat3 best_v{};
    for (const auto& v1 : s1)
        for (const auto& v2 : s2) {
            const Vec3 c = cross(v1, v2);
            if (c == Vec3{0, 0, 0}) continue;
            for (const auto& v3 : s3) {
                const i64 d = c[0] * v3[0] + c[1] * v3[1] + c[2] * v3[2];
                if (d != 1 && d != -1) continue;
                Mat3 cand{{{l1, bval(m, v1, v2), bval(m, v1, v3)},
                           {bval(m, v2, v1), l2, bval(m, v2, v3)},
                           {bval(m, v3, v1), bval(m, v3, v2), l3}}};
                const Key k = gram_key(cand);
                if (!best || k < *best) {
                    best = k;
                    set_column(best_v, 0, v1);
                    set_column(best_v, 1, v2);
                    set_column(best_v, 2, v3);
                }
            }
        }
    if (!best) throw std::logic_error("no successive-minima basis found");
    Mat3 u = mul(u0, best_v);
    Mat3 canon = congruent(g, u);
    if (canon == g) u = identity3();
    return {TernaryForm(canon), u};
}

std::optional<Mat3> isometry(const TernaryForm& f, const TernaryForm& g) {
    if (f.det() != g.det()) return std::nullopt;
    const auto rf = reduce(f);
    const auto rg = reduce(g);
    if (rf.form != rg.form) return std::nullopt;
    return mul(rf.transform, unimodular_inverse(rg.transform));
}

bool is_isometric(const TernaryForm& f, const TernaryForm& g) { return isometry(f, g).has_value(); }

std::vector<TernaryForm> enumerate_reduced(i64 det, i64 ceiling) {
    if (det < 1) throw std::invalid_argument("determinant must be positive");
    if (det > ceiling) throw ResourceLimit("determinant " + std::to_string(det) + " exceeds enumeration ceiling");
    // Minkowski cell: a <= b <= c, 2|a12| <= a, 2|a13| <= a, 2|a23| <= b,
    // abc <= 2 det. c is solved from the determinant.
    std::vector<Mat3> cands;
    const i128 two_d = 2 * static_cast<i128>(det);
    for (i64 a = 1; static_cast<i128>(a) * a * a <= two_d; ++a)
        for (i64 b = a; static_cast<i128>(a) * b * b <= two_d; ++b)
            for (i64 a12 = -a / 2; a12 <= a / 2; ++a12) {
                const i128 minor = static_cast<i128>(a) * b - static_cast<i128>(a12) * a12;
                for (i64 a13 = -a / 2; a13 <= a / 2; ++a13)
                    for (i64 a23 = -b / 2; a23 <= b / 2; ++a23) {
                        const i128 num = det - 2 * static_cast<i128>(a12) * a13 * a23 +
                                         static_cast<i128>(a) * a23 * a23 + static_cast<i128>(b) * a13 * a13;
                        if (num <= 0 || num % minor != 0) continue;
                        const i128 c = num / minor;
                        if (c < b || static_cast<i128>(a) * b * c > two_d) continue;
                        const auto cc = static_cast<i64>(c);
                        Mat3 m{{{a, a12, a13}, {a12, b, a23}, {a13, a23, cc}}};
                        if (positive_definite(m)) cands.push_back(m);
                    }
            }
    std::vector<std::optional<TernaryForm>> canon(cands.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(cands.size()); ++i)
        canon[static_cast<std::size_t>(i)] = reduce(TernaryForm(cands[static_cast<std::size_t>(i)])).form;
    std::set<TernaryForm> uniq;
    for (auto& c : canon) uniq.insert(*c);
    return {uniq.begin(), uniq.end()};
}

bool same_genus(const TernaryForm& f, const TernaryForm& g) {
    const i64 det = f.det();
    if (det != g.det()) return false;
    for (i64 p : local::prime_factors(2 * det))
        if (!local::locally_equivalent(f.gram(), g.gram(), p)) return false;
    return true;
}

bool GenusSet::contains(const TernaryForm& g) const {
    const auto c = reduce(g).form;
    return std::binary_search(classes.begin(), classes.end(), c);
}

GenusSet genus_classes(const TernaryForm& f, i64 ceiling) {
    const auto all = enumerate_reduced(f.det(), ceiling);
    std::vector<char> keep(all.size(), 0);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(all.size()); ++i)
        keep[static_cast<std::size_t>(i)] = same_genus(f, all[static_cast<std::size_t>(i)]) ? 1 : 0;
    GenusSet out{f, {}};
    for (std::size_t i = 0; i < all.size(); ++i)
        if (keep[i]) out.classes.push_back(all[i]);
    return out;
}

std::vector<Vec3> vectors_of_norm(const TernaryForm& f, i64 n) {
    std::vector<Vec3> out;
    lattice::for_each_of_norm(f.gram(), n, [&](const Vec3& v) {
        out.push_back(v);
        return true;
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<Vec3> find_representation(const TernaryForm& f, i64 m) {
    if (m < 0) return std::nullopt;
    std::optional<Vec3> hit;
    lattice::for_each_of_norm(f.gram(), m, [&](const Vec3& v) {
        hit = v;
        return false;
    });
    return hit;
}

bool represents_form(const TernaryForm& f, i64 m) { return find_representation(f, m).has_value(); }

RepSieve form_sieve(const TernaryForm& f, i64 bound) {
    if (bound < 0) throw std::invalid_argument("negative bound");
    return RepSieve(f.label(), bound, kernels::form_values_parallel(f.gram(), bound));
}

bool excluded_power_pattern(i64 m, i64 p, const std::vector<i64>& residues, Parity parity) {
    if (p < 2) throw std::invalid_argument("p must be prime");
    if (m <= 0) return false;
    int e = 0;
    while (m % p == 0) {
        m /= p;
        ++e;
    }
    if ((e % 2 == 1) != (parity == Parity::odd)) return false;
    const i64 r = m % p;
    return std::find(residues.begin(), residues.end(), r) != residues.end();
}

}  // namespace triquad
