#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "triquad/errors.hpp"
#include "triquad/linalg.hpp"
#include "triquad/trisums.hpp"

namespace triquad {

// Positive definite integral ternary form, Q(v) = v M v^t. Off-diagonal Gram
// entries are the half cross-term coefficients.
class TernaryForm {
public:
    explicit TernaryForm(const Mat3& gram);
    static TernaryForm diagonal(i64 a, i64 b, i64 c);
    // "<1,2,10>", "1,2,10" (diagonal) or "[[3,1,0],[1,3,0],[0,0,6]]".
    static TernaryForm parse(std::string_view text);

    const Mat3& gram() const { return gram_; }
    i64 operator()(int i, int j) const { return gram_[i][j]; }
    i64 det() const { return det3(gram_); }
    i64 eval(const Vec3& v) const;
    i64 bilinear(const Vec3& v, const Vec3& w) const;
    bool is_diagonal() const;
    std::string label() const;

    auto operator<=>(const TernaryForm&) const = default;

private:
    Mat3 gram_;
};

inline i64 eval(const TernaryForm& f, const Vec3& v) { return f.eval(v); }

// Orthogonal sum of a 1x1 and a 2x2 block (in that order).
TernaryForm orthogonal_sum(i64 a, i64 b11, i64 b12, i64 b22);

struct Reduction {
    TernaryForm form;
    Mat3 transform;  // transform^t * M_f * transform = form
};

// Canonical Minkowski-reduced representative: a basis of successive-minima
// vectors, ties broken by the smallest off-diagonal key. Equal output
// forms <=> isometric inputs. Identity transform on canonical input.
Reduction reduce(const TernaryForm& f);

// U with U^t M_f U = M_g, if any.
std::optional<Mat3> isometry(const TernaryForm& f, const TernaryForm& g);
bool is_isometric(const TernaryForm& f, const TernaryForm& g);

inline constexpr i64 kDefaultDetCeiling = 100000;

// One canonical form per isometry class of the given determinant, sorted.
std::vector<TernaryForm> enumerate_reduced(i64 det, i64 ceiling = kDefaultDetCeiling);

bool same_genus(const TernaryForm& f, const TernaryForm& g);

struct GenusSet {
    TernaryForm representative;
    std::vector<TernaryForm> classes;  // canonical forms, sorted
    std::size_t class_count() const { return classes.size(); }
    bool contains(const TernaryForm& g) const;
};

GenusSet genus_classes(const TernaryForm& f, i64 ceiling = kDefaultDetCeiling);

// All v with Q(v) == n (both signs).
std::vector<Vec3> vectors_of_norm(const TernaryForm& f, i64 n);
std::optional<Vec3> find_representation(const TernaryForm& f, i64 m);
bool represents_form(const TernaryForm& f, i64 m);
RepSieve form_sieve(const TernaryForm& f, i64 bound);

enum class Parity { odd, even };

// m = p^e * c with p not dividing c, e of the given parity and c mod p in
// residues. m = 0 never matches.
bool excluded_power_pattern(i64 m, i64 p, const std::vector<i64>& residues, Parity parity = Parity::odd);

}  // namespace triquad
