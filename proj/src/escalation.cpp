#include "triquad/escalation.hpp"

#include <algorithm>
#include <stdexcept>

namespace triquad {

namespace {

// Small sieve first; only nodes that look almost universal pay for the
// full bound. Exact either way.
constexpr i64 kQuickBound = 2048;

std::vector<i64> first_missed(const TriangularSum& s, i64 bound, std::size_t limit) {
    const i64 b0 = std::min(bound, kQuickBound);
    auto t = truants(sieve(s, b0), limit);
    if (!t.exhausted || b0 == bound) return t.values;
    return truants(sieve(s, bound), limit).values;
}

struct NodeOutcome {
    CandidateRecord record;
    bool extend = false;
    i64 child_lo = 0, child_hi = 0;
};

void decide_properness(CandidateRecord& rec, i64 bound) {
    const auto& c = rec.sum.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i > 0 && c[i] == c[i - 1]) continue;
        const TriangularSum sub = rec.sum.without(i);
        const auto missed = first_missed(sub, bound, 2);
        if (missed.size() < 2) {
            rec.classification = Classification::dagger;
            rec.dagger_witness = sub;
            rec.sub_sum_witnesses.clear();
            return;
        }
        rec.sub_sum_witnesses.push_back({sub, {missed[0], missed[1]}});
    }
    rec.classification = Classification::proper;
    rec.conditional = rec.sum.size() == 3;
}

NodeOutcome examine(const TriangularSum& sum, i64 m, i64 bound) {
    NodeOutcome out;
    auto& rec = out.record;
    rec.sum = sum;
    rec.exception = m;
    rec.verified_bound = bound;
    rec.missed = first_missed(sum, bound, 3);
    if (rec.missed.empty()) {
        rec.classification = Classification::star;
        return out;
    }
    if (rec.missed.size() == 1 && rec.missed[0] == m) {
        decide_properness(rec, bound);
        return out;
    }
    rec.classification = Classification::rejected;
    if (std::find(rec.missed.begin(), rec.missed.end(), m) == rec.missed.end() && represents(sum, m))
        return out;  // pruned: m is represented
    const i64 t1 = rec.missed[0];
    const i64 t2 = rec.missed[1];
    out.extend = true;
    out.child_lo = sum.last();
    out.child_hi = (t1 == m) ? t2 : t1;
    return out;
}

}  // namespace

std::string_view to_string(Classification c) {
    switch (c) {
        case Classification::proper: return "proper";
        case Classification::dagger: return "dagger";
        case Classification::star: return "star";
        case Classification::rejected: return "rejected";
    }
    return "?";
}

bool valid_exception(i64 m) { return m == 1 || m == 2 || m == 4 || m == 5 || m == 8; }

const std::vector<i64>& criterion_set(i64 m) {
    static const std::map<i64, std::vector<i64>> sets = {
        {1, {2, 3, 4, 8, 10, 16, 19}},
        {2, {1, 4, 5, 7, 8, 9, 11, 16, 17, 20, 29, 35}},
        {4, {1, 2, 11, 14, 19, 25, 29, 46, 50}},
        {5, {1, 2, 8, 14, 26, 40, 41, 47, 59, 71}},
        {8, {1, 2, 5, 17, 89}},
    };
    auto it = sets.find(m);
    if (it == sets.end()) throw std::invalid_argument("exception must be one of 1,2,4,5,8");
    return it->second;
}

std::size_t EscalationResult::count(Classification c) const {
    return static_cast<std::size_t>(
        std::count_if(records.begin(), records.end(), [&](const auto& r) { return r.classification == c; }));
}

std::map<std::size_t, std::size_t> EscalationResult::proper_by_k() const {
    std::map<std::size_t, std::size_t> out;
    for (const auto& r : records)
        if (r.classification == Classification::proper) ++out[r.sum.size()];
    return out;
}

EscalationResult escalate(i64 m, i64 bound, std::size_t max_k) {
    if (!valid_exception(m)) throw std::invalid_argument("exception must be one of 1,2,4,5,8");
    if (bound < 100) throw std::invalid_argument("escalation bound must be at least 100");
    EscalationResult res;
    res.exception = m;
    res.bound = bound;
    res.max_k = max_k;

    // Root: the empty sum, which represents only 0.
    struct Pending {
        TriangularSum sum;
        i64 lo, hi;
    };
    std::vector<Pending> level;
    {
        const auto root = examine(TriangularSum{}, m, bound);
        level.push_back({TriangularSum{}, 1, root.child_hi});
    }
    for (std::size_t k = 1; k <= max_k && !level.empty(); ++k) {
        std::vector<TriangularSum> children;
        for (const auto& p : level)
            for (i64 a = p.lo; a <= p.hi; ++a) children.push_back(p.sum.extended(a));
        std::vector<NodeOutcome> outcomes(children.size());
#pragma omp parallel for schedule(dynamic, 1)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(children.size()); ++i)
            outcomes[static_cast<std::size_t>(i)] = examine(children[static_cast<std::size_t>(i)], m, bound);
        std::vector<Pending> next;
        for (auto& o : outcomes) {
            if (o.extend) {
                if (k == max_k)
                    res.depth_capped.push_back(o.record.sum);
                else
                    next.push_back({o.record.sum, o.child_lo, o.child_hi});
            }
            res.records.push_back(std::move(o.record));
        }
        level = std::move(next);
    }
    std::sort(res.records.begin(), res.records.end(),
              [](const auto& a, const auto& b) { return a.sum < b.sum; });
    std::sort(res.depth_capped.begin(), res.depth_capped.end());
    return res;
}

CandidateRecord classify(const TriangularSum& sum, i64 m, i64 bound) {
    auto rec = examine(sum, m, bound).record;
    return rec;
}

bool criterion_check(const TriangularSum& sum, i64 m) {
    const auto& required = criterion_set(m);
    if (represents(sum, m)) return false;
    for (i64 n : required)
        if (!represents(sum, n)) return false;
    return true;
}

TailRuleReport tail_rule_check(i64 m, const TriangularSum& prefix, i64 bound) {
    if (!valid_exception(m)) throw std::invalid_argument("exception must be one of 1,2,4,5,8");
    if (prefix.size() < 5) throw std::invalid_argument("tail rule needs a prefix with at least five coefficients");
    const auto node = examine(prefix, m, bound);
    if (node.record.classification != Classification::rejected || !node.extend)
        throw std::invalid_argument("prefix " + prefix.label() + " is not an extendable non-candidate for exception " +
                                    std::to_string(m));
    TailRuleReport rep;
    rep.prefix = prefix;
    rep.exception = m;
    rep.bound = bound;
    rep.t1 = node.record.missed[0];
    if (node.record.missed.size() > 1) rep.t2 = node.record.missed[1];
    rep.window_lo = prefix.last();
    rep.window_hi = prefix.last() + m;
    rep.window_matches = node.child_lo == rep.window_lo && node.child_hi == rep.window_hi;
    bool ok = true;
    for (i64 a = rep.window_lo; a <= rep.window_hi; ++a) {
        const auto c = classify(prefix.extended(a), m, bound).classification;
        rep.children.push_back({a, c});
        const auto want = (a == rep.window_lo) ? Classification::rejected : Classification::dagger;
        ok = ok && c == want;
    }
    rep.pattern_ok = ok;
    return rep;
}

}  // namespace triquad
