#include "triquad/data.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace triquad {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json read_json(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open " + file.string());
    json j = json::parse(in);
    if (j.value("schema", 0) != 1) throw std::runtime_error(file.string() + ": unsupported schema");
    return j;
}

Mat3 mat3(const json& j) {
    Mat3 m{};
    if (!j.is_array() || j.size() != 3) throw std::invalid_argument("expected a 3x3 matrix");
    for (int r = 0; r < 3; ++r) {
        if (!j[r].is_array() || j[r].size() != 3) throw std::invalid_argument("expected a 3x3 matrix");
        for (int c = 0; c < 3; ++c) m[r][c] = j[r][c].get<i64>();
    }
    return m;
}

Vec3 vec3(const json& j) {
    if (!j.is_array() || j.size() != 3) throw std::invalid_argument("expected a 3-vector");
    return {j[0].get<i64>(), j[1].get<i64>(), j[2].get<i64>()};
}

}  // namespace

fs::path resolve_data_dir(const std::optional<std::string>& cli_path) {
    fs::path p;
    if (cli_path && !cli_path->empty()) p = *cli_path;
    else if (const char* env = std::getenv("TRIQUAD_DATA"); env && *env) p = env;
    else p = TRIQUAD_DEFAULT_DATA_DIR;
    if (fs::is_regular_file(p)) p = p.parent_path();
    return p;
}

std::vector<TableRow> load_table_rows(const fs::path& file) {
    const json j = read_json(file);
    std::map<std::string, Predicate> preds;
    for (const auto& [id, p] : j.at("predicates").items()) preds.emplace(id, Predicate::from_json(p));

    std::vector<TableRow> rows;
    for (const auto& r : j.at("rows")) {
        TableRow row;
        row.case_id = r.at("case_id").get<std::string>();
        row.section = r.at("section").get<std::vector<i64>>();
        row.f = TernaryForm(mat3(r.at("f_gram")));
        row.h_f = r.at("h_f").get<int>();
        if (r.contains("mates"))
            for (const auto& m : r.at("mates")) row.mates.emplace_back(mat3(m));
        if (r.contains("checks")) {
            for (const auto& c : r.at("checks")) {
                TableCheck tc;
                tc.d = c.at("d").get<i64>();
                tc.a_list = c.at("a_list").get<std::vector<i64>>();
                tc.B_size = c.at("B_size").get<std::size_t>();
                if (c.contains("T")) tc.T = mat3(c.at("T"));
                if (c.contains("z")) tc.z = vec3(c.at("z"));
                if (c.contains("Qz")) tc.Qz = c.at("Qz").get<i64>();
                row.checks.push_back(std::move(tc));
            }
        }
        if (r.contains("condition_predicate_id")) {
            row.condition_id = r.at("condition_predicate_id").get<std::string>();
            const auto it = preds.find(row.condition_id);
            if (it == preds.end()) throw std::runtime_error(row.case_id + ": unknown predicate " + row.condition_id);
            row.condition = it->second;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void load_proof_cases(const fs::path& file, std::vector<ProofCase>& cases,
                      std::map<std::string, IdentityFamily>& families) {
    const json j = read_json(file);
    for (const auto& c : j.at("cases")) {
        ProofCase pc;
        pc.id = c.at("id").get<std::string>();
        pc.sum = TriangularSum(c.at("sum").get<std::vector<i64>>());
        pc.exception = c.at("exception").get<i64>();
        pc.section = c.at("section").get<std::vector<i64>>();
        pc.offset_coeffs = c.at("offset_coeffs").get<std::vector<i64>>();
        pc.strip = c.value("strip", i64{1});
        pc.period = c.at("period").get<i64>();
        for (const auto& r : c.at("rules"))
            pc.rules.push_back({Predicate::from_json(r.at("when")), r.at("offsets").get<std::vector<i64>>()});
        pc.target = Predicate::from_json(c.at("target"));
        pc.threshold = c.at("threshold").get<i64>();
        if (c.contains("base")) pc.base = c.at("base").get<std::vector<i64>>();
        if (c.contains("base_ranges"))
            for (const auto& r : c.at("base_ranges"))
                for (i64 n = r.at(0).get<i64>(); n <= r.at(1).get<i64>(); ++n) pc.base.push_back(n);
        if (c.contains("families"))
            for (const auto& [id, k] : c.at("families").items()) pc.families.emplace(id, k.get<i64>());
        cases.push_back(std::move(pc));
    }
    for (const auto& f : j.at("families")) {
        IdentityFamily fam;
        fam.id = f.at("id").get<std::string>();
        fam.sum = TriangularSum(f.at("sum").get<std::vector<i64>>());
        for (const auto& a : f.at("args")) fam.args.emplace_back(a.at(0).get<i64>(), a.at(1).get<int>());
        fam.K = f.at("K").get<i64>();
        if (fam.args.size() != fam.sum.size()) throw std::runtime_error(fam.id + ": argument count mismatch");
        families.emplace(fam.id, std::move(fam));
    }
}

std::vector<EscalationTable> load_escalation_tables(const fs::path& file) {
    const json j = read_json(file);
    std::vector<EscalationTable> out;
    for (const auto& t : j.at("tables")) {
        EscalationTable et;
        et.table = t.at("table").get<std::string>();
        et.exception = t.at("exception").get<i64>();
        for (const auto& [k, n] : t.at("proper").items()) et.proper_by_k[std::stoul(k)] = n.get<std::size_t>();
        et.tail_width = t.at("tail_width").get<i64>();
        for (const auto& r : t.at("rows")) {
            EscalationRow row;
            row.prefix = r.at("prefix").get<std::vector<i64>>();
            row.lo = r.at("lo").get<i64>();
            row.hi = r.at("hi").get<i64>();
            const std::pair<const char*, Classification> kinds[] = {
                {"rejected", Classification::rejected}, {"dagger", Classification::dagger}, {"star", Classification::star}};
            for (const auto& [key, cls] : kinds)
                if (r.contains(key))
                    for (i64 a : r.at(key).get<std::vector<i64>>()) row.marks[a] = cls;
            et.rows.push_back(std::move(row));
        }
        out.push_back(std::move(et));
    }
    return out;
}

DataSet load_dataset(const fs::path& dir) {
    DataSet ds;
    ds.dir = dir;
    ds.rows = load_table_rows(dir / "tables.json");
    load_proof_cases(dir / "proof_cases.json", ds.cases, ds.families);
    ds.escalation = load_escalation_tables(dir / "escalation_tables.json");
    return ds;
}

}  // namespace triquad
