#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "triquad/linalg.hpp"

namespace triquad {

// Conditions on an integer m, stored declaratively in the table data.
//   {"mod": 8, "in": [1, 5]}                       m mod 8 in {1, 5}
//   {"pattern": 3, "parity": "odd", "in": [2]}     m = 3^e c, e odd, c mod 3 == 2
//       parity may be "even", "odd" or "any"; "max_exp" caps e
//   {"gt": 4}                                      m > 4
//   {"all": [...]}, {"any": [...]}, {"not": {...}}
struct Predicate {
    enum class Kind { all, any, negation, mod, pattern, gt };
    enum class ExpParity { any, even, odd };

    Kind kind = Kind::all;
    std::vector<Predicate> children;
    i64 modulus = 1;  // mod: modulus; pattern: prime
    std::vector<i64> residues;
    ExpParity parity = ExpParity::any;
    std::optional<int> max_exp;
    i64 threshold = 0;

    static Predicate from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    std::string describe() const;

    bool operator()(i64 m) const;
};

enum class Tri { no, yes, unknown };

// Value on every m == r (mod period) with m >= lower: yes/no when constant
// on that set, unknown otherwise.
Tri evaluate_class(const Predicate& p, i64 r, i64 period, i64 lower);

}  // namespace triquad
