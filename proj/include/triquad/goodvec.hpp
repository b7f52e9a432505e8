#pragma once

#include <optional>
#include <string>
#include <vector>

#include "triquad/qforms.hpp"

namespace triquad {

// Subset of (Z/dZ)^3, members reduced to [0, d) and sorted lexicographically.
struct ResidueSet {
    i64 d = 1;
    std::vector<Vec3> members;

    std::size_t size() const { return members.size(); }
    bool empty() const { return members.empty(); }
    bool contains(const Vec3& v) const;
};

Vec3 reduce_mod(const Vec3& v, i64 d);

struct ScalingIsometry {
    Mat3 T;  // T^t M_f T = d^2 M_g; columns are the images of the g-basis
    i64 d;
};

ResidueSet r_set(const TernaryForm& g, i64 d, i64 a);

std::vector<ScalingIsometry> scaling_isometries(const TernaryForm& f, const TernaryForm& g, i64 d);

// v is good if T v == 0 (mod d) for some T, i.e. (1/d) v T^t is integral.
bool is_good(const Vec3& v, const std::vector<ScalingIsometry>& isos, i64 d);

ResidueSet b_set(const TernaryForm& f, const TernaryForm& g, i64 d, i64 a);
ResidueSet b_set(const TernaryForm& g, i64 d, i64 a, const std::vector<ScalingIsometry>& isos);

// g <_{d,a} f
bool precedes(const TernaryForm& g, const TernaryForm& f, i64 d, i64 a);

struct TransferReport {
    i64 d = 1, a = 0, bound = 0;
    std::size_t checked = 0;  // m in range, m == a mod d, represented by g
    std::size_t skipped = 0;  // excluded values g(z) s^2
    std::vector<i64> counterexamples;
    bool ok() const { return counterexamples.empty(); }
};

// Every m <= bound with m == a (mod d) represented by g is represented by f.
TransferReport verify_good(const TernaryForm& f, const TernaryForm& g, i64 d, i64 a, i64 bound);

struct PmeCertificate {
    Mat3 T{};
    i64 d = 1;
    bool infinite_order = false;  // (T/d)^12 != I
    bool scales_g = false;        // T^t M_g T = d^2 M_g
    bool covers_b = false;        // T v == 0 mod d for every v in B_f(g,d,a)
    std::size_t b_size = 0;
    std::vector<i64> eigenvalues;  // integer roots of the characteristic polynomial
    std::vector<Vec3> eigenvectors;  // primitive, both signs
    std::vector<i64> qz;             // Q_g of each eigenvector
    std::vector<std::string> failures;
    bool valid() const { return failures.empty(); }
};

PmeCertificate pme_certificate(const Mat3& T, const TernaryForm& f, const TernaryForm& g, i64 d, i64 a);

// As verify_good, skipping m = Q(z) s^2 for the certificate's eigenvectors.
TransferReport verify_pme(const PmeCertificate& cert, const TernaryForm& f, const TernaryForm& g, i64 d, i64 a,
                          i64 bound);

}  // namespace triquad
