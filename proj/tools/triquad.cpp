#include <omp.h>

#include <chrono>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "triquad/data.hpp"
#include "triquad/escalation.hpp"
#include "triquad/goodvec.hpp"
#include "triquad/qforms.hpp"
#include "triquad/trisums.hpp"
#include "triquad/verify.hpp"

using namespace triquad;
using nlohmann::json;

namespace {

enum Exit { kPass = 0, kMismatch = 1, kUsage = 2, kResource = 3 };

struct Config {
    std::optional<i64> bound;
    i64 exception = 1;
    bool exception_given = false;
    int jobs = 0;
    std::string format = "text";
    std::optional<std::string> data;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string set_text(const std::vector<i64>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "}";
}

TriangularSum parse_sum(const std::string& text) {
    bool sorted = true;
    TriangularSum s;
    try {
        s = TriangularSum::parse(text, &sorted);
    } catch (const std::exception& e) {
        throw UsageError("malformed coefficients '" + text + "': " + e.what());
    }
    if (s.empty()) throw UsageError("coefficients must be nonempty");
    if (!sorted) std::cerr << "warning: coefficients sorted to " << s.label() << "\n";
    return s;
}

TernaryForm parse_form(const std::string& text) {
    try {
        return TernaryForm::parse(text);
    } catch (const std::exception& e) {
        throw UsageError("malformed form '" + text + "': " + e.what());
    }
}

const char* arity_name(std::size_t k) {
    static const char* names[] = {"nullary", "unary",  "binary", "ternary",   "quaternary",
                                  "quinary", "senary", "septenary", "octonary"};
    return k < std::size(names) ? names[k] : "k>8";
}

void print_report(const Report& rep, const std::string& format) {
    if (format == "json") {
        std::cout << rep.to_json().dump(2) << "\n";
        return;
    }
    if (format == "csv") {
        auto q = [](const std::string& s) {
            std::string o = "\"";
            for (char c : s) o += (c == '"') ? std::string("\"\"") : std::string(1, c);
            return o + "\"";
        };
        std::cout << "case_id,check,expected,computed,status\n";
        for (const auto& r : rep.results)
            std::cout << q(r.case_id) << "," << q(r.check) << "," << q(r.expected) << "," << q(r.computed) << ","
                      << (r.pass ? "pass" : "fail") << "\n";
        return;
    }
    for (const auto& r : rep.results) {
        std::string computed = r.computed;
        if (computed.size() > 160) computed = computed.substr(0, 157) + "...";
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.case_id << " " << r.check << ": " << computed;
        if (!r.pass) std::cout << " (expected " << r.expected << ")";
        std::cout << "\n";
    }
    std::cout << "summary: " << rep.results.size() - rep.failures() << "/" << rep.results.size() << " checks pass\n";
}

int finish(const Report& rep) {
    if (const auto* f = rep.first_failure()) {
        std::cerr << "first failure: " << f->case_id << "\n";
        return kMismatch;
    }
    return kPass;
}

int cmd_sieve(const Config& cfg, const std::string& coeffs) {
    const auto s = parse_sum(coeffs);
    const i64 n = cfg.bound.value_or(100000);
    const auto missed = sieve(s, n).unrepresented();
    if (cfg.format == "json") {
        std::cout << json{{"schema", 1}, {"coeffs", s.coeffs()}, {"bound", n}, {"unrepresented", missed}}.dump() << "\n";
    } else if (cfg.format == "csv") {
        std::cout << "value\n";
        for (i64 v : missed) std::cout << v << "\n";
    } else {
        std::cout << set_text(missed) << "\n";
    }
    return kPass;
}

int cmd_truants(const Config& cfg, const std::string& coeffs, std::size_t count) {
    const auto s = parse_sum(coeffs);
    const i64 n = cfg.bound.value_or(100000);
    const auto t = truants(s, count, n);
    if (cfg.format == "json") {
        std::cout << json{{"schema", 1}, {"coeffs", s.coeffs()}, {"bound", n}, {"truants", t.values},
                          {"exhausted", t.exhausted}}
                         .dump()
                  << "\n";
    } else if (cfg.format == "csv") {
        std::cout << "index,value\n";
        for (std::size_t i = 0; i < t.values.size(); ++i) std::cout << i + 1 << "," << t.values[i] << "\n";
    } else {
        std::cout << set_text(t.values);
        if (t.exhausted) std::cout << " (fewer than " << count << " up to " << n << ")";
        std::cout << "\n";
    }
    return kPass;
}

json record_json(const CandidateRecord& r) {
    json j{{"coeffs", r.sum.coeffs()},
           {"exception", r.exception},
           {"classification", std::string(to_string(r.classification))},
           {"verified_bound", r.verified_bound}};
    if (r.conditional) j["conditional"] = true;
    return j;
}

std::string summary_line(const EscalationResult& res) {
    std::ostringstream os;
    os << "proper=" << res.count(Classification::proper) << " (";
    bool first = true;
    for (const auto& [k, n] : res.proper_by_k()) {
        os << (first ? "" : ", ") << arity_name(k) << "=" << n;
        if (k == 3) os << " conditional";
        first = false;
    }
    os << ")";
    return os.str();
}

int cmd_escalate(const Config& cfg, std::size_t depth, bool list) {
    if (!valid_exception(cfg.exception)) throw UsageError("--exception must be one of 1,2,4,5,8");
    const auto res = escalate(cfg.exception, cfg.bound.value_or(100000), depth);
    if (cfg.format == "json") {
        json recs = json::array();
        for (const auto& r : res.records)
            if (r.classification != Classification::rejected) recs.push_back(record_json(r));
        std::cout << json{{"schema", 1}, {"exception", res.exception}, {"bound", res.bound}, {"max_k", res.max_k},
                          {"candidates", recs}}
                         .dump(1)
                  << "\n";
    } else if (cfg.format == "csv") {
        std::cout << "coeffs,exception,classification,verified_bound,conditional\n";
        for (const auto& r : res.records) {
            if (r.classification == Classification::rejected) continue;
            std::cout << "\"" << r.sum.label() << "\"," << r.exception << "," << to_string(r.classification) << ","
                      << r.verified_bound << "," << (r.conditional ? "true" : "false") << "\n";
        }
    } else {
        std::cout << summary_line(res) << "\n";
        std::cout << "dagger=" << res.count(Classification::dagger) << " star=" << res.count(Classification::star)
                  << " rejected=" << res.count(Classification::rejected) << "\n";
        if (list)
            for (const auto& r : res.records)
                if (r.classification == Classification::proper)
                    std::cout << r.sum.label() << (r.conditional ? " conditional" : "") << "\n";
    }
    for (const auto& d : res.diagnostics) std::cerr << "note: " << d << "\n";
    return kPass;
}

int cmd_classify(const Config& cfg, const std::string& coeffs) {
    const auto s = parse_sum(coeffs);
    if (!valid_exception(cfg.exception)) throw UsageError("--exception must be one of 1,2,4,5,8");
    const auto r = classify(s, cfg.exception, cfg.bound.value_or(100000));
    const bool crit = criterion_check(s, cfg.exception);
    if (cfg.format == "json") {
        auto j = record_json(r);
        j["schema"] = 1;
        j["missed"] = r.missed;
        j["criterion"] = crit;
        if (r.dagger_witness) j["dagger_witness"] = r.dagger_witness->coeffs();
        json subs = json::array();
        for (const auto& [sub, w] : r.sub_sum_witnesses) subs.push_back({{"sub_sum", sub.coeffs()}, {"missed", w}});
        j["sub_sum_witnesses"] = subs;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << s.label() << ": " << to_string(r.classification) << (r.conditional ? " (conditional)" : "")
                  << " missed=" << set_text(r.missed) << " criterion=" << (crit ? "pass" : "fail") << "\n";
        if (r.dagger_witness) std::cout << "  sub-sum " << r.dagger_witness->label() << " misses only " << cfg.exception << "\n";
        for (const auto& [sub, w] : r.sub_sum_witnesses)
            std::cout << "  sub-sum " << sub.label() << " misses " << w[0] << "," << w[1] << "\n";
    }
    return kPass;
}

int cmd_genus(const Config& cfg, const std::string& form) {
    const auto f = parse_form(form);
    const auto gen = genus_classes(f);
    if (cfg.format == "json") {
        json cls = json::array();
        for (const auto& g : gen.classes) cls.push_back(g.gram());
        std::cout << json{{"schema", 1}, {"form", f.gram()}, {"det", f.det()}, {"class_number", gen.class_count()},
                          {"classes", cls}}
                         .dump()
                  << "\n";
    } else {
        std::cout << "h=" << gen.class_count() << "\n";
        for (const auto& g : gen.classes) std::cout << g.label() << "\n";
    }
    return kPass;
}

int cmd_bset(const Config& cfg, const std::string& fs, const std::string& gs, i64 d, i64 a) {
    const auto f = parse_form(fs), g = parse_form(gs);
    if (d < 1) throw UsageError("--d must be positive");
    const auto b = b_set(f, g, d, a);
    if (cfg.format == "json") {
        json mem = json::array();
        for (const auto& v : b.members) mem.push_back(v);
        std::cout << json{{"schema", 1}, {"d", d}, {"a", a}, {"size", b.size()}, {"members", mem}}.dump() << "\n";
    } else {
        std::cout << "|B|=" << b.size() << "\n";
        for (const auto& v : b.members) std::cout << to_string(v) << "\n";
    }
    return kPass;
}

int cmd_pme(const Config& cfg, const std::string& fs, const std::string& gs, i64 d, i64 a, const std::string& ts) {
    const auto f = parse_form(fs), g = parse_form(gs);
    Mat3 T{};
    try {
        const auto j = json::parse(ts);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) T[r][c] = j.at(r).at(c).get<i64>();
    } catch (const std::exception& e) {
        throw UsageError("malformed T: " + std::string(e.what()));
    }
    const auto cert = pme_certificate(T, f, g, d, a);
    std::optional<TransferReport> tr;
    if (cert.valid() && cfg.bound) tr = verify_pme(cert, f, g, d, a, *cfg.bound);
    if (cfg.format == "json") {
        json ev = json::array();
        for (std::size_t i = 0; i < cert.eigenvectors.size(); ++i)
            ev.push_back({{"z", cert.eigenvectors[i]}, {"Qz", cert.qz[i]}});
        json j{{"schema", 1},           {"valid", cert.valid()},        {"infinite_order", cert.infinite_order},
               {"scales_g", cert.scales_g}, {"covers_b", cert.covers_b}, {"b_size", cert.b_size},
               {"eigenvalues", cert.eigenvalues}, {"eigenvectors", ev},  {"failures", cert.failures}};
        if (tr) j["counterexamples"] = tr->counterexamples;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << (cert.valid() ? "valid" : "invalid") << " |B|=" << cert.b_size << "\n";
        for (const auto& fl : cert.failures) std::cout << "  " << fl << "\n";
        for (std::size_t i = 0; i < cert.eigenvectors.size(); ++i)
            std::cout << "  z=" << to_string(cert.eigenvectors[i]) << " Q(z)=" << cert.qz[i] << "\n";
        if (tr) std::cout << "transfer up to " << *cfg.bound << ": counterexamples=" << set_text(tr->counterexamples) << "\n";
    }
    return cert.valid() && (!tr || tr->ok()) ? kPass : kMismatch;
}

int cmd_verify(const Config& cfg, const std::string& scope) {
    const i64 bound = cfg.bound.value_or(kRowBound);
    if (scope.rfind("candidate:", 0) == 0) {
        const auto s = parse_sum(scope.substr(10));
        const auto missed = sieve(s, bound).unrepresented();
        std::optional<std::vector<i64>> expected;
        if (cfg.exception_given) expected = std::vector<i64>{cfg.exception};
        const auto rep = verify_candidate_pipeline(s, expected, bound);
        const bool ok = rep.ok();
        if (cfg.format == "text") {
            std::cout << "exceptions=" << set_text(missed) << " " << (ok ? "PASS" : "FAIL") << "\n";
            return ok ? kPass : kMismatch;
        }
        print_report(rep, cfg.format);
        return finish(rep);
    }

    const auto ds = load_dataset(resolve_data_dir(cfg.data));
    Report rep;
    if (scope == "all") {
        rep = verify_all(ds, bound);
    } else if (scope.rfind("table:", 0) == 0) {
        const std::string id = scope.substr(6);
        std::vector<const TableRow*> rows;
        for (const auto& r : ds.rows)
            if (r.case_id == id || r.case_id.rfind(id + ":", 0) == 0) rows.push_back(&r);
        for (const auto& t : ds.escalation)
            if (t.table == id) rep.append(verify_escalation_table(t, escalate(t.exception, kEscalationBound)));
        for (const auto& pc : ds.cases)
            if (pc.id == id) {
                rep.append(verify_offsets(pc, ds.families));
                rep.append(verify_candidate_pipeline(pc.sum, std::vector<i64>{pc.exception}, bound));
            }
        if (rows.empty() && rep.results.empty()) throw UsageError("no table rows match '" + id + "'");
        std::vector<Report> parts(rows.size());
#pragma omp parallel for schedule(dynamic)
        for (std::size_t i = 0; i < rows.size(); ++i) parts[i] = verify_table_row(*rows[i], bound);
        for (const auto& p : parts) rep.append(p);
        rep.sort();
    } else {
        throw UsageError("scope must be all, table:<id> or candidate:<coeffs>");
    }
    print_report(rep, cfg.format);
    return finish(rep);
}

int cmd_conjecture(const Config& cfg) {
    const i64 bound = cfg.bound.value_or(1000000);
    const auto t0 = std::chrono::steady_clock::now();
    const auto missed = sieve(TriangularSum({1, 4, 5}), bound).unrepresented();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = missed == std::vector<i64>{2};
    if (cfg.format == "json") {
        std::cout << json{{"schema", 1}, {"coeffs", {1, 4, 5}}, {"bound", bound}, {"unrepresented", missed},
                          {"status", ok ? "pass" : "fail"}}
                         .dump()
                  << "\n";
    } else {
        std::cout << set_text(missed) << " " << (ok ? "PASS" : "FAIL") << "\n";
    }
    std::cerr << "sieve time " << secs << " s\n";
    return ok ? kPass : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Almost universal sums of triangular numbers: escalation and verification"};
    app.require_subcommand(1);
    app.fallthrough();

    Config cfg;
    i64 bound = 0;
    std::string data;
    auto* bound_opt = app.add_option("--bound", bound, "Search bound N")->check(CLI::PositiveNumber);
    auto* exc_opt = app.add_option("--exception", cfg.exception, "Designated exception m");
    app.add_option("--jobs", cfg.jobs, "Worker threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    auto* data_opt = app.add_option("--data", data, "Data directory or tables file");

    std::string coeffs, form, form_g, scope, tmat;
    std::size_t count = 5, depth = 8;
    i64 d = 1, a = 0;
    bool list = false;

    auto* sieve_cmd = app.add_subcommand("sieve", "Unrepresented values up to N");
    sieve_cmd->add_option("coeffs", coeffs, "Comma-separated coefficients")->required();
    auto* truants_cmd = app.add_subcommand("truants", "Smallest unrepresented values");
    truants_cmd->add_option("coeffs", coeffs)->required();
    truants_cmd->add_option("--count", count, "How many truants")->check(CLI::PositiveNumber);
    auto* esc_cmd = app.add_subcommand("escalate", "Generate candidates for an exception");
    esc_cmd->add_option("--depth", depth, "Maximum number of coefficients")->check(CLI::Range(1, 12));
    esc_cmd->add_flag("--list", list, "List proper candidates (text format)");
    auto* cls_cmd = app.add_subcommand("classify", "Classify one sum");
    cls_cmd->add_option("coeffs", coeffs)->required();
    auto* genus_cmd = app.add_subcommand("genus", "Classes in the genus of a ternary form");
    genus_cmd->add_option("form", form, "<a,b,c> or a JSON Gram matrix")->required();
    auto* bset_cmd = app.add_subcommand("bset", "B_f(g,d,a)");
    bset_cmd->add_option("f", form)->required();
    bset_cmd->add_option("g", form_g)->required();
    bset_cmd->add_option("--d", d)->required();
    bset_cmd->add_option("--a", a)->required();
    auto* pme_cmd = app.add_subcommand("pme", "Check a scaling isometry certificate");
    pme_cmd->add_option("f", form)->required();
    pme_cmd->add_option("g", form_g)->required();
    pme_cmd->add_option("--d", d)->required();
    pme_cmd->add_option("--a", a)->required();
    pme_cmd->add_option("--T", tmat, "JSON 3x3 matrix")->required();
    auto* verify_cmd = app.add_subcommand("verify", "Replay table and proof checks");
    verify_cmd->add_option("scope", scope, "all | table:<id> | candidate:<coeffs>")->required();
    auto* conj_cmd = app.add_subcommand("conjecture", "Sweep Delta(1,4,5)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kPass : kUsage;
    }
    if (*bound_opt) cfg.bound = bound;
    if (*data_opt) cfg.data = data;
    cfg.exception_given = exc_opt->count() > 0;
    if (cfg.jobs > 0) omp_set_num_threads(cfg.jobs);

    try {
        if (*sieve_cmd) return cmd_sieve(cfg, coeffs);
        if (*truants_cmd) return cmd_truants(cfg, coeffs, count);
        if (*esc_cmd) return cmd_escalate(cfg, depth, list);
        if (*cls_cmd) return cmd_classify(cfg, coeffs);
        if (*genus_cmd) return cmd_genus(cfg, form);
        if (*bset_cmd) return cmd_bset(cfg, form, form_g, d, a);
        if (*pme_cmd) return cmd_pme(cfg, form, form_g, d, a, tmat);
        if (*verify_cmd) return cmd_verify(cfg, scope);
        if (*conj_cmd) return cmd_conjecture(cfg);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ResourceLimit& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMismatch;
    }
    return kUsage;
}
