#include "triquad/predicate.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "triquad/local.hpp"

namespace triquad {

namespace {

using nlohmann::json;

std::vector<i64> normalized(std::vector<i64> rs, i64 mod) {
    for (auto& r : rs) r = mod_floor(r, mod);
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
    return rs;
}

bool member(const std::vector<i64>& rs, i64 r) { return std::binary_search(rs.begin(), rs.end(), r); }

std::string set_text(const std::vector<i64>& rs) {
    std::string s = "{";
    for (std::size_t i = 0; i < rs.size(); ++i) s += (i ? "," : "") + std::to_string(rs[i]);
    return s + "}";
}

bool pattern_holds(const Predicate& p, int e, i64 c_mod_p) {
    if (p.parity == Predicate::ExpParity::even && e % 2 != 0) return false;
    if (p.parity == Predicate::ExpParity::odd && e % 2 == 0) return false;
    if (p.max_exp && e > *p.max_exp) return false;
    return member(p.residues, c_mod_p);
}

}  // namespace

Predicate Predicate::from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("predicate must be a JSON object");
    Predicate p;
    auto kids = [&](const json& arr) {
        if (!arr.is_array() || arr.empty()) throw std::invalid_argument("connective needs a nonempty array");
        for (const auto& c : arr) p.children.push_back(from_json(c));
    };
    if (j.contains("all")) {
        p.kind = Kind::all;
        kids(j.at("all"));
    } else if (j.contains("any")) {
        p.kind = Kind::any;
        kids(j.at("any"));
    } else if (j.contains("not")) {
        p.kind = Kind::negation;
        p.children.push_back(from_json(j.at("not")));
    } else if (j.contains("mod")) {
        p.kind = Kind::mod;
        p.modulus = j.at("mod").get<i64>();
        if (p.modulus < 1) throw std::invalid_argument("mod atom needs a positive modulus");
        p.residues = normalized(j.at("in").get<std::vector<i64>>(), p.modulus);
    } else if (j.contains("pattern")) {
        p.kind = Kind::pattern;
        p.modulus = j.at("pattern").get<i64>();
        if (local::prime_factors(p.modulus) != std::vector<i64>{p.modulus})
            throw std::invalid_argument("pattern atom needs a prime");
        const auto par = j.value("parity", std::string("any"));
        if (par == "odd") p.parity = ExpParity::odd;
        else if (par == "even") p.parity = ExpParity::even;
        else if (par == "any") p.parity = ExpParity::any;
        else throw std::invalid_argument("unknown parity '" + par + "'");
        if (j.contains("max_exp")) p.max_exp = j.at("max_exp").get<int>();
        p.residues = normalized(j.at("in").get<std::vector<i64>>(), p.modulus);
        if (member(p.residues, 0)) throw std::invalid_argument("pattern residues must be units");
    } else if (j.contains("gt")) {
        p.kind = Kind::gt;
        p.threshold = j.at("gt").get<i64>();
    } else {
        throw std::invalid_argument("unrecognized predicate: " + j.dump());
    }
    return p;
}

json Predicate::to_json() const {
    auto arr = [&] {
        json a = json::array();
        for (const auto& c : children) a.push_back(c.to_json());
        return a;
    };
    switch (kind) {
        case Kind::all: return {{"all", arr()}};
        case Kind::any: return {{"any", arr()}};
        case Kind::negation: return {{"not", children.at(0).to_json()}};
        case Kind::mod: return {{"mod", modulus}, {"in", residues}};
        case Kind::pattern: {
            json j{{"pattern", modulus},
                   {"parity", parity == ExpParity::odd ? "odd" : parity == ExpParity::even ? "even" : "any"},
                   {"in", residues}};
            if (max_exp) j["max_exp"] = *max_exp;
            return j;
        }
        case Kind::gt: return {{"gt", threshold}};
    }
    return {};
}

std::string Predicate::describe() const {
    std::ostringstream os;
    auto list = [&](const char* sep) {
        for (std::size_t i = 0; i < children.size(); ++i) os << (i ? sep : "") << children[i].describe();
    };
    switch (kind) {
        case Kind::all: list(" and "); break;
        case Kind::any:
            os << "(";
            list(" or ");
            os << ")";
            break;
        case Kind::negation: os << "not " << children.at(0).describe(); break;
        case Kind::mod: os << "m%" << modulus << " in " << set_text(residues); break;
        case Kind::pattern:
            os << "m=" << modulus << "^e*c";
            if (parity == ExpParity::odd) os << " e odd";
            if (parity == ExpParity::even) os << " e even";
            if (max_exp) os << " e<=" << *max_exp;
            os << " c%" << modulus << " in " << set_text(residues);
            break;
        case Kind::gt: os << "m>" << threshold; break;
    }
    return os.str();
}

bool Predicate::operator()(i64 m) const {
    switch (kind) {
        case Kind::all:
            return std::all_of(children.begin(), children.end(), [m](const Predicate& c) { return c(m); });
        case Kind::any:
            return std::any_of(children.begin(), children.end(), [m](const Predicate& c) { return c(m); });
        case Kind::negation: return !children.at(0)(m);
        case Kind::mod: return member(residues, mod_floor(m, modulus));
        case Kind::pattern: {
            if (m <= 0) return false;
            const int e = local::valuation(m, modulus);
            i64 c = m;
            for (int i = 0; i < e; ++i) c /= modulus;
            return pattern_holds(*this, e, c % modulus);
        }
        case Kind::gt: return m > threshold;
    }
    return false;
}

Tri evaluate_class(const Predicate& p, i64 r, i64 period, i64 lower) {
    using K = Predicate::Kind;
    r = mod_floor(r, period);
    switch (p.kind) {
        case K::all:
        case K::any: {
            const Tri absorbing = p.kind == K::all ? Tri::no : Tri::yes;
            bool unknown = false;
            for (const auto& c : p.children) {
                const Tri t = evaluate_class(c, r, period, lower);
                if (t == absorbing) return absorbing;
                unknown |= t == Tri::unknown;
            }
            if (unknown) return Tri::unknown;
            return p.kind == K::all ? Tri::yes : Tri::no;
        }
        case K::negation: {
            const Tri t = evaluate_class(p.children.at(0), r, period, lower);
            return t == Tri::unknown ? t : (t == Tri::yes ? Tri::no : Tri::yes);
        }
        case K::mod:
            if (period % p.modulus != 0) return Tri::unknown;
            return member(p.residues, r % p.modulus) ? Tri::yes : Tri::no;
        case K::pattern: {
            // Exponent and cofactor are fixed once r is not divisible by the
            // full prime power in the period.
            const int v = local::valuation(period, p.modulus);
            i64 pv = 1;
            for (int i = 0; i < v; ++i) pv *= p.modulus;
            const i64 rr = r % pv;
            if (rr == 0) return Tri::unknown;
            const int e = local::valuation(rr, p.modulus);
            i64 c = rr;
            for (int i = 0; i < e; ++i) c /= p.modulus;
            return pattern_holds(p, e, c % p.modulus) ? Tri::yes : Tri::no;
        }
        case K::gt: return lower > p.threshold ? Tri::yes : Tri::unknown;
    }
    return Tri::unknown;
}

}  // namespace triquad
