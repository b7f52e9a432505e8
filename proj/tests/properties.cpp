#include "properties.hpp"

#include <random>
#include <set>

#include "oracles.hpp"
#include "triquad/data.hpp"
#include "triquad/kernels.hpp"
#include "triquad/trisums.hpp"

namespace props {

using namespace triquad;

void for_each_sum(std::size_t max_len, i64 max_coeff, const std::function<void(const std::vector<i64>&)>& fn) {
    std::vector<i64> cur;
    std::function<void(i64)> rec = [&](i64 lo) {
        if (!cur.empty()) fn(cur);
        if (cur.size() == max_len) return;
        for (i64 a = lo; a <= max_coeff; ++a) {
            cur.push_back(a);
            rec(a);
            cur.pop_back();
        }
    };
    rec(1);
}

Outcome odd_square_equivalence(std::size_t max_len, i64 max_coeff, i64 max_n) {
    Outcome out{"odd-square equivalence"};
    for_each_sum(max_len, max_coeff, [&](const std::vector<i64>& c) {
        const TriangularSum sum(c);
        const auto s = sieve(sum, max_n);
        const i64 shift = sum.coeff_sum();
        for (i64 n = 0; n <= max_n; ++n) {
            ++out.checked;
            if (s.represented(n) != odd_square_solvable(c, 8 * n + shift))
                out.fail(sum.label() + " n=" + std::to_string(n));
        }
    });
    return out;
}

Outcome sieve_oracle(std::size_t max_len, i64 max_coeff, i64 bound) {
    Outcome out{"sieve vs brute force"};
    for_each_sum(max_len, max_coeff, [&](const std::vector<i64>& c) {
        const TriangularSum sum(c);
        const auto fast = sieve(sum, bound);
        const auto slow = sieve_serial(sum, bound);
        const auto par = kernels::triangular_sieve_parallel(c, bound);
        const auto ser = kernels::triangular_sieve_serial(c, bound);
        if (!(par == ser)) out.fail(sum.label() + " serial/parallel kernels differ");
        for (i64 n = 0; n <= bound; ++n) {
            ++out.checked;
            const bool truth = oracle::tri_represents(c, n);
            if (fast.represented(n) != truth || slow.represented(n) != truth)
                out.fail(sum.label() + " n=" + std::to_string(n));
        }
    });
    return out;
}

namespace {

Mat3 random_unimodular(std::mt19937& rng) {
    Mat3 u = identity3();
    std::uniform_int_distribution<int> col(0, 2), coef(-2, 2), op(0, 3);
    for (int step = 0; step < 6; ++step) {
        const int i = col(rng), j = col(rng);
        switch (op(rng)) {
            case 0:
            case 1:
                if (i != j) {
                    const i64 k = coef(rng);
                    for (int r = 0; r < 3; ++r) u[r][i] += k * u[r][j];
                }
                break;
            case 2:
                for (int r = 0; r < 3; ++r) std::swap(u[r][i], u[r][j]);
                break;
            default:
                for (int r = 0; r < 3; ++r) u[r][i] = -u[r][i];
        }
    }
    return u;
}

bool positive_definite(const Mat3& m) {
    return m[0][0] > 0 && m[0][0] * m[1][1] - m[0][1] * m[0][1] > 0 && det3(m) > 0;
}

}  // namespace

Outcome reduction_roundtrip(int samples, std::uint32_t seed) {
    Outcome out{"reduction/isometry round-trips"};
    std::mt19937 rng(seed);
    std::uniform_int_distribution<i64> diag(1, 20), off(-20, 20);
    int made = 0;
    while (made < samples) {
        Mat3 m{};
        for (int i = 0; i < 3; ++i) m[i][i] = diag(rng);
        m[0][1] = m[1][0] = off(rng);
        m[0][2] = m[2][0] = off(rng);
        m[1][2] = m[2][1] = off(rng);
        if (!positive_definite(m)) continue;
        ++made;
        ++out.checked;
        const TernaryForm f(m);
        const std::string tag = f.label();
        const auto r = reduce(f);
        if (std::abs(det3(r.transform)) != 1) out.fail(tag + ": transform not unimodular");
        if (congruent(m, r.transform) != r.form.gram()) out.fail(tag + ": transform does not produce the form");
        if (r.form.det() != f.det()) out.fail(tag + ": determinant changed");
        if (!is_isometric(f, r.form)) out.fail(tag + ": not isometric to its reduction");
        const auto again = reduce(r.form);
        if (!(again.form == r.form) || again.transform != identity3()) out.fail(tag + ": reduction not idempotent");

        const TernaryForm g(congruent(m, random_unimodular(rng)));
        if (!(reduce(g).form == r.form)) out.fail(tag + ": reduction differs on an equivalent basis");
        const auto u = isometry(f, g);
        if (!u || congruent(m, *u) != g.gram()) out.fail(tag + ": isometry witness missing or wrong");
    }
    return out;
}

Outcome genus_partition(const std::vector<TernaryForm>& forms) {
    Outcome out{"genus partition"};
    for (const auto& f : forms) {
        ++out.checked;
        const auto gen = genus_classes(f);
        const std::string tag = f.label();
        for (std::size_t i = 0; i < gen.classes.size(); ++i) {
            if (!same_genus(f, gen.classes[i])) out.fail(tag + ": class outside the genus");
            for (std::size_t j = i + 1; j < gen.classes.size(); ++j)
                if (is_isometric(gen.classes[i], gen.classes[j])) out.fail(tag + ": two classes are isometric");
        }
        for (const auto& e : enumerate_reduced(f.det())) {
            std::size_t hits = 0;
            for (const auto& c : gen.classes) hits += is_isometric(e, c) ? 1 : 0;
            const bool in_genus = same_genus(e, f);
            if (in_genus && hits != 1) out.fail(tag + ": " + e.label() + " matches " + std::to_string(hits) + " classes");
            if (!in_genus && hits != 0) out.fail(tag + ": " + e.label() + " listed but not in the genus");
        }
    }
    return out;
}

std::vector<TernaryForm> shipped_forms() {
    const auto rows = load_table_rows(resolve_data_dir(std::nullopt) / "tables.json");
    std::set<TernaryForm> seen;
    std::vector<TernaryForm> out;
    for (const auto& r : rows) {
        if (seen.insert(reduce(r.f).form).second) out.push_back(r.f);
        for (const auto& g : r.mates)
            if (seen.insert(reduce(g).form).second) out.push_back(g);
    }
    return out;
}

}  // namespace props
