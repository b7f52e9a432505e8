#include "triquad/verify.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "triquad/goodvec.hpp"

namespace triquad {

namespace {

std::string set_text(const std::vector<i64>& v, std::size_t limit = 0) {
    std::string s = "{";
    const std::size_t n = limit ? std::min(limit, v.size()) : v.size();
    for (std::size_t i = 0; i < n; ++i) s += (i ? "," : "") + std::to_string(v[i]);
    if (n < v.size()) s += ",...";
    return s + "}";
}

std::string tuple_text(const std::vector<i64>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

std::string transfer_text(const TransferReport& t) {
    std::ostringstream os;
    os << "checked=" << t.checked;
    if (t.skipped) os << " skipped=" << t.skipped;
    os << " counterexamples=" << set_text(t.counterexamples, 10);
    return os.str();
}

i64 ipow(i64 b, int e) {
    i64 r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace

void Report::add(std::string case_id, std::string check, std::string expected, std::string computed, bool pass) {
    results.push_back({std::move(case_id), std::move(check), std::move(expected), std::move(computed), pass});
}

void Report::append(const Report& other) {
    results.insert(results.end(), other.results.begin(), other.results.end());
}

void Report::sort() {
    std::stable_sort(results.begin(), results.end(),
                     [](const CheckResult& a, const CheckResult& b) { return a.case_id < b.case_id; });
}

bool Report::ok() const { return failures() == 0; }

std::size_t Report::failures() const {
    return static_cast<std::size_t>(std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.pass; }));
}

const CheckResult* Report::first_failure() const {
    for (const auto& r : results)
        if (!r.pass) return &r;
    return nullptr;
}

nlohmann::json Report::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : results)
        arr.push_back({{"case_id", r.case_id},
                       {"check", r.check},
                       {"expected", r.expected},
                       {"computed", r.computed},
                       {"status", r.pass ? "pass" : "fail"}});
    return {{"schema", 1}, {"results", arr}};
}

Report verify_table_row(const TableRow& row, i64 bound) {
    Report rep;
    const auto& id = row.case_id;
    const TernaryForm& f = row.f;

    const GenusSet gen = genus_classes(f);
    rep.add(id, "h(f)", std::to_string(row.h_f), std::to_string(gen.class_count()),
            gen.class_count() == static_cast<std::size_t>(row.h_f));

    if (!row.mates.empty() || row.h_f > 1) {
        // The listed mates together with f must exhaust the genus.
        std::vector<std::string> problems;
        std::set<TernaryForm> seen{reduce(f).form};
        for (const auto& g : row.mates) {
            if (!gen.contains(g)) problems.push_back(g.label() + " not in genus");
            else if (!seen.insert(reduce(g).form).second) problems.push_back(g.label() + " duplicates a class");
        }
        if (seen.size() != gen.class_count())
            problems.push_back(std::to_string(gen.class_count() - std::min(seen.size(), gen.class_count())) +
                               " class(es) unlisted");
        std::string computed = "genus={";
        for (std::size_t i = 0; i < gen.classes.size(); ++i) computed += (i ? ", " : "") + gen.classes[i].label();
        computed += "}";
        for (const auto& p : problems) computed += "; " + p;
        std::string expected = "f";
        for (const auto& g : row.mates) expected += " + " + g.label();
        rep.add(id, "genus", expected, computed, problems.empty());
    }

    for (const auto& chk : row.checks) {
        if (row.mates.empty()) {
            rep.add(id, "d=" + std::to_string(chk.d), "a genus mate", "none listed", false);
            continue;
        }
        const TernaryForm& g = row.mates.front();
        const auto isos = scaling_isometries(f, g, chk.d);
        for (i64 a : chk.a_list) {
            const std::string tag = "[d=" + std::to_string(chk.d) + ",a=" + std::to_string(a) + "]";
            const auto b = b_set(g, chk.d, a, isos);
            rep.add(id, "|B|" + tag, std::to_string(chk.B_size), std::to_string(b.size()), b.size() == chk.B_size);

            if (chk.B_size == 0) {
                const auto t = verify_good(f, g, chk.d, a, bound);
                rep.add(id, "transfer" + tag, "counterexamples={}", transfer_text(t), t.ok());
            }
            if (chk.T) {
                const auto cert = pme_certificate(*chk.T, f, g, chk.d, a);
                std::string computed = cert.valid() ? "valid" : "invalid";
                for (const auto& fl : cert.failures) computed += "; " + fl;
                rep.add(id, "T" + tag, "T^t M_g T = d^2 M_g, infinite order, covers B", computed, cert.valid());

                if (chk.z) {
                    std::string zs;
                    bool found = false;
                    for (std::size_t i = 0; i < cert.eigenvectors.size(); ++i) {
                        zs += (i ? " " : "") + to_string(cert.eigenvectors[i]) + ":" + std::to_string(cert.qz[i]);
                        if (cert.eigenvectors[i] == *chk.z || cert.eigenvectors[i] == negate(*chk.z))
                            found = found || !chk.Qz || cert.qz[i] == *chk.Qz;
                    }
                    std::string expected = "+-" + to_string(*chk.z);
                    if (chk.Qz) expected += ":" + std::to_string(*chk.Qz);
                    rep.add(id, "z" + tag, expected, zs.empty() ? "no integral eigenvector" : zs, found);
                }
                if (cert.valid()) {
                    const auto t = verify_pme(cert, f, g, chk.d, a, bound);
                    rep.add(id, "transfer-pme" + tag, "counterexamples={}", transfer_text(t), t.ok());
                }
            }
        }
    }

    if (row.condition) {
        // The transfer theorems only move values already in Q(gen f), so the
        // sweep ranges over those.
        const auto rs = form_sieve(f, bound);
        std::vector<RepSieve> others;
        for (const auto& g : gen.classes)
            if (!(reduce(g).form == reduce(f).form)) others.push_back(form_sieve(g, bound));
        std::vector<i64> bad;
        std::size_t checked = 0;
        for (i64 m = 0; m <= bound; ++m) {
            if (!(*row.condition)(m)) continue;
            if (!rs.represented(m) &&
                std::none_of(others.begin(), others.end(), [m](const RepSieve& o) { return o.represented(m); }))
                continue;
            ++checked;
            if (!rs.represented(m)) bad.push_back(m);
        }
        rep.add(id, "condition", row.condition->describe() + " and m in Q(gen f) => represented by f",
                "checked=" + std::to_string(checked) + " counterexamples=" + set_text(bad, 10), bad.empty());
    }
    return rep;
}

Report verify_identity_family(const IdentityFamily& fam, int l_max) {
    Report rep;
    const auto& c = fam.sum.coeffs();
    for (int l = 1; l <= l_max; ++l) {
        std::vector<i64> args;
        bool odd = true, valid = true;
        i128 total = 0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            const int e = l + fam.args[i].second;
            if (e < 0) valid = false;
            const i64 x = fam.args[i].first * ipow(3, std::max(e, 0));
            odd = odd && (x % 2 != 0);
            args.push_back(x);
            total += static_cast<i128>(c[i]) * x * x;
        }
        const i128 want = static_cast<i128>(fam.K) * ipow(9, l);
        rep.add(fam.id, "l=" + std::to_string(l), std::to_string(static_cast<i64>(want)) + " with odd arguments",
                std::to_string(static_cast<i64>(total)) + " at " + tuple_text(args) + (odd ? "" : " (even argument)"),
                valid && odd && total == want);
    }
    return rep;
}

Report verify_offsets(const ProofCase& pc, const std::map<std::string, IdentityFamily>& families) {
    Report rep;
    const auto& id = pc.id;
    const i64 P = pc.period;
    const i64 c0 = pc.offset_constant();
    const i64 S = pc.sum.coeff_sum();
    const bool strip = pc.strip > 1;
    auto in_scope = [&](i64 N) { return !strip || N % pc.strip != 0; };

    bool odd = true;
    for (const auto& r : pc.rules) {
        odd = odd && r.offsets.size() == pc.offset_coeffs.size();
        for (i64 d : r.offsets) odd = odd && d % 2 != 0;
    }
    rep.add(id, "offsets-odd", "every offset odd", odd ? "all odd" : "even or missing offset", odd);

    const bool period_ok = P % 8 == 0 && (!strip || P % pc.strip == 0);
    rep.add(id, "period", "multiple of 8" + std::string(strip ? " and of the stripped square" : ""),
            std::to_string(P), period_ok);

    auto subtract = [&](const OffsetRule& r) {
        i64 s = 0;
        for (std::size_t j = 0; j < r.offsets.size(); ++j) s += pc.offset_coeffs[j] * r.offsets[j] * r.offsets[j];
        return s;
    };

    // Symbolic pass over one full period of N.
    const i64 first = 8 * pc.threshold + c0;
    std::size_t classes = 0;
    std::vector<std::string> no_rule, not_positive, off_target;
    i64 min_residual = -1;
    for (i64 r = 0; r < P; ++r) {
        if (mod_floor(r - c0, 8) != 0 || !in_scope(r)) continue;
        ++classes;
        const OffsetRule* rule = nullptr;
        for (const auto& ru : pc.rules) {
            const Tri t = evaluate_class(ru.when, r, P, 0);
            if (t == Tri::unknown) break;
            if (t == Tri::yes) {
                rule = &ru;
                break;
            }
        }
        const std::string cls = "N=" + std::to_string(r) + " mod " + std::to_string(P);
        if (!rule) {
            no_rule.push_back(cls);
            continue;
        }
        const i64 sub = subtract(*rule);
        const i64 lower = first + mod_floor(r - first, P) - sub;
        if (min_residual < 0 || lower < min_residual) min_residual = lower;
        if (lower <= 0) not_positive.push_back(cls);
        if (evaluate_class(pc.target, r - sub, P, lower) != Tri::yes) off_target.push_back(cls);
    }
    auto joined = [](const std::vector<std::string>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size() && i < 5; ++i) s += (i ? "; " : "") + v[i];
        return s;
    };
    const std::string nclasses = std::to_string(classes) + " classes";
    rep.add(id, "rules-total", "one rule per class", no_rule.empty() ? nclasses : "unassigned: " + joined(no_rule),
            classes > 0 && no_rule.empty());
    rep.add(id, "residual-positive", "residual > 0 from index " + std::to_string(pc.threshold),
            not_positive.empty() ? "min residual " + std::to_string(min_residual) : "nonpositive: " + joined(not_positive),
            not_positive.empty());
    rep.add(id, "target", pc.target.describe(), off_target.empty() ? nclasses + " on target" : "off: " + joined(off_target),
            off_target.empty());

    // Concrete replay: the residual is a sum of the section with odd
    // arguments, a few periods past the threshold.
    std::vector<i64> empirical_bad;
    std::size_t replayed = 0;
    for (i64 idx = pc.threshold; idx < pc.threshold + 2 * P; ++idx) {
        const i64 N = 8 * idx + c0;
        if (!in_scope(N)) continue;
        const auto it = std::find_if(pc.rules.begin(), pc.rules.end(), [&](const OffsetRule& r) { return r.when(N); });
        ++replayed;
        if (it == pc.rules.end()) {
            empirical_bad.push_back(idx);
            continue;
        }
        const i64 res = N - subtract(*it);
        if (!pc.target(res) || !odd_square_solvable(pc.section, res)) empirical_bad.push_back(idx);
    }
    rep.add(id, "replay", "odd representation of every residual by " + tuple_text(pc.section),
            "indices=" + std::to_string(replayed) + " failures=" + set_text(empirical_bad, 10), empirical_bad.empty());

    // Base range, re-derived with witnesses.
    std::vector<i64> base_bad;
    std::string witnesses;
    for (i64 idx : pc.base) {
        const i64 N = 8 * idx + c0;
        const auto w = odd_square_witness(pc.sum.coeffs(), N);
        if (!w) base_bad.push_back(idx);
        else witnesses += (witnesses.empty() ? "" : " ") + std::to_string(idx) + ":" + tuple_text(*w);
    }
    rep.add(id, "base", std::to_string(pc.base.size()) + " direct representations",
            base_bad.empty() ? witnesses : "missing " + set_text(base_bad), base_bad.empty());

    const i64 exc_N = 8 * pc.exception + S;
    const bool exc_missing = !odd_square_solvable(pc.sum.coeffs(), exc_N);
    rep.add(id, "exception", std::to_string(pc.exception) + " not represented",
            exc_missing ? "not represented" : "represented", exc_missing);

    // Every index below the threshold is accounted for.
    std::vector<i64> uncovered;
    for (i64 idx = 0; idx < pc.threshold; ++idx) {
        const i64 N = 8 * idx + c0;
        if (std::find(pc.base.begin(), pc.base.end(), idx) != pc.base.end()) continue;
        if (!strip) {
            if (idx != pc.exception) uncovered.push_back(idx);
            continue;
        }
        if (!in_scope(N)) continue;
        const bool by_family = std::any_of(pc.families.begin(), pc.families.end(),
                                           [&](const auto& kv) { return kv.second == idx; });
        const bool bare_ok = N < S || N == exc_N;  // the unscaled value is no n, or is the exception
        if (!(by_family && bare_ok)) uncovered.push_back(idx);
    }
    rep.add(id, "coverage", "indices below " + std::to_string(pc.threshold) + " covered",
            uncovered.empty() ? "covered" : "uncovered " + set_text(uncovered), uncovered.empty());

    for (const auto& [fid, idx] : pc.families) {
        const auto it = families.find(fid);
        const bool ok = it != families.end() && it->second.sum == pc.sum && it->second.K == 8 * idx + c0;
        rep.add(id, "family " + fid, "K = " + std::to_string(8 * idx + c0),
                it == families.end() ? "missing" : "K = " + std::to_string(it->second.K), ok);
    }
    return rep;
}

Report verify_candidate_pipeline(const TriangularSum& sum, const std::optional<std::vector<i64>>& expected, i64 bound) {
    Report rep;
    const auto missed = sieve(sum, bound).unrepresented();
    const std::string id = "sum:" + sum.label();
    if (expected) {
        rep.add(id, "exceptions<=" + std::to_string(bound), set_text(*expected), set_text(missed, 20), missed == *expected);
    } else {
        rep.add(id, "exceptions<=" + std::to_string(bound), "one value", set_text(missed, 20), missed.size() == 1);
    }
    return rep;
}

Report conjecture_sweep(i64 bound) {
    return verify_candidate_pipeline(TriangularSum({1, 4, 5}), std::vector<i64>{2}, bound);
}

Report verify_auxiliary_1188(i64 lo, i64 hi, i64 bound) {
    Report rep;
    const TernaryForm F(Mat3{{{1, 0, 0}, {0, 4, 2}, {0, 2, 9}}});
    const auto rs = form_sieve(F, 8 * hi + 10);
    std::vector<i64> bad;
    for (i64 n = lo; n <= hi; ++n) {
        const i64 u = 8 * n + 10, v = 8 * n - 54;
        if (!rs.represented(u) && !(v >= 0 && rs.represented(v))) bad.push_back(n);
    }
    rep.add("P:1,1,8,8", "offset-pair", "8n+10 or 8n-54 represented for n in [" + std::to_string(lo) + "," +
            std::to_string(hi) + "]", "failures=" + set_text(bad, 10), bad.empty());
    rep.append(verify_candidate_pipeline(TriangularSum({1, 1, 8, 8}), std::vector<i64>{5}, bound));
    rep.append(verify_candidate_pipeline(TriangularSum({1, 1, 8, 30}), std::vector<i64>{5, 71}, bound));
    return rep;
}

Report verify_escalation_table(const EscalationTable& table, const EscalationResult& result) {
    Report rep;
    const auto& id = table.table;
    const i64 m = table.exception;

    // Proper counts per length.
    const auto by_k = result.proper_by_k();
    auto counts_text = [](const std::map<std::size_t, std::size_t>& c) {
        std::string s;
        for (const auto& [k, n] : c) s += (s.empty() ? "" : " ") + std::to_string(k) + ":" + std::to_string(n);
        return s;
    };
    rep.add(id, "proper-counts", counts_text(table.proper_by_k), counts_text(by_k), by_k == table.proper_by_k);

    std::map<std::vector<i64>, std::vector<const CandidateRecord*>> children;
    for (const auto& r : result.records) {
        auto parent = r.sum.coeffs();
        parent.pop_back();
        children[parent].push_back(&r);
    }

    auto row_text = [](i64 lo, i64 hi, const std::map<i64, Classification>& marks) {
        std::string s = "[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
        for (auto cls : {Classification::rejected, Classification::dagger, Classification::star}) {
            std::vector<i64> v;
            for (const auto& [a, c] : marks)
                if (c == cls) v.push_back(a);
            if (!v.empty()) s += " " + std::string(to_string(cls)) + set_text(v);
        }
        return s;
    };

    std::set<std::vector<i64>> listed;
    for (const auto& row : table.rows) {
        listed.insert(row.prefix);
        const std::string cid = id + ":" + tuple_text(row.prefix);
        const auto it = children.find(row.prefix);
        if (it == children.end()) {
            rep.add(cid, "children", row_text(row.lo, row.hi, row.marks), "prefix not extended", false);
            continue;
        }
        i64 lo = INT64_MAX, hi = INT64_MIN;
        std::map<i64, Classification> marks;
        for (const auto* rec : it->second) {
            const i64 a = rec->sum.coeffs().back();
            lo = std::min(lo, a);
            hi = std::max(hi, a);
            if (rec->classification != Classification::proper) marks[a] = rec->classification;
        }
        const bool ok = lo == row.lo && hi == row.hi && marks == row.marks;
        rep.add(cid, "children", row_text(row.lo, row.hi, row.marks), row_text(lo, hi, marks), ok);
    }

    // No proper candidate outside the listed rows.
    std::vector<std::string> stray;
    for (const auto& r : result.records) {
        if (r.classification != Classification::proper) continue;
        auto parent = r.sum.coeffs();
        parent.pop_back();
        if (!listed.count(parent)) stray.push_back(r.sum.label());
    }
    rep.add(id, "proper-set", "all proper sums under listed prefixes",
            stray.empty() ? "none outside" : "outside: " + stray.front() + (stray.size() > 1 ? ",..." : ""),
            stray.empty());

    if (m == 2) {
        std::vector<std::string> ternary;
        bool flagged = true;
        for (const auto& r : result.records)
            if (r.classification == Classification::proper && r.sum.size() == 3) {
                ternary.push_back(r.sum.label());
                flagged = flagged && r.conditional;
            }
        rep.add(id, "conditional", "Delta(1,4,5) flagged",
                (ternary.empty() ? std::string("none") : ternary.front()) + (flagged ? " flagged" : " unflagged"),
                ternary == std::vector<std::string>{"1,4,5"} && flagged);
    }

    // Tail rule from every rejected quinary prefix.
    for (const auto& row : table.rows) {
        if (row.prefix.size() != 4) continue;
        for (const auto& [a, cls] : row.marks) {
            if (cls != Classification::rejected) continue;
            auto coeffs = row.prefix;
            coeffs.push_back(a);
            const TriangularSum prefix(coeffs);
            std::string computed;
            bool ok = false;
            try {
                const auto tr = tail_rule_check(m, prefix, result.bound);
                ok = tr.window_matches && tr.pattern_ok && tr.window_hi - tr.window_lo == table.tail_width;
                computed = "[" + std::to_string(tr.window_lo) + "," + std::to_string(tr.window_hi) + "]";
                for (const auto& [x, c] : tr.children) computed += " " + std::to_string(x) + ":" + std::string(to_string(c));
            } catch (const std::exception& e) {
                computed = e.what();
            }
            rep.add(id + ":" + tuple_text(coeffs), "tail",
                    "[a,a+" + std::to_string(table.tail_width) + "] first rejected, rest dagger", computed, ok);
        }
    }
    return rep;
}

Report verify_all(const DataSet& ds, i64 bound, i64 escalation_bound) {
    const std::size_t nrows = ds.rows.size();
    std::vector<Report> parts(nrows + ds.cases.size() + ds.escalation.size());

#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < nrows; ++i) parts[i] = verify_table_row(ds.rows[i], bound);

    for (std::size_t i = 0; i < ds.cases.size(); ++i) {
        auto& r = parts[nrows + i];
        r = verify_offsets(ds.cases[i], ds.families);
        r.append(verify_candidate_pipeline(ds.cases[i].sum, std::vector<i64>{ds.cases[i].exception}, bound));
    }
    for (std::size_t i = 0; i < ds.escalation.size(); ++i) {
        const auto& t = ds.escalation[i];
        parts[nrows + ds.cases.size() + i] = verify_escalation_table(t, escalate(t.exception, escalation_bound));
    }

    Report all;
    for (const auto& p : parts) all.append(p);
    for (const auto& [id, fam] : ds.families) all.append(verify_identity_family(fam));
    all.append(verify_auxiliary_1188(20, 5000, std::max<i64>(bound, 10000)));
    all.append(conjecture_sweep(escalation_bound));
    all.sort();
    return all;
}

}  // namespace triquad
