#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "triquad/escalation.hpp"
#include "triquad/predicate.hpp"
#include "triquad/qforms.hpp"

namespace triquad {

struct TableCheck {
    i64 d = 1;
    std::vector<i64> a_list;
    std::size_t B_size = 0;
    std::optional<Mat3> T;
    std::optional<Vec3> z;
    std::optional<i64> Qz;
};

struct TableRow {
    std::string case_id;
    std::vector<i64> section;
    TernaryForm f{identity3()};
    int h_f = 1;
    std::vector<TernaryForm> mates;
    std::vector<TableCheck> checks;
    std::string condition_id;
    std::optional<Predicate> condition;
};

struct OffsetRule {
    Predicate when;
    std::vector<i64> offsets;
};

// One offset argument: the integer N (8n + sum of coefficients, or its
// 9-free part 8k + c when strip == 9) is split as
// N = sum_j offset_coeffs[j] * d_j^2 + residual, with the d_j picked by the
// first rule whose condition on N holds.
struct ProofCase {
    std::string id;
    TriangularSum sum;
    i64 exception = 1;
    std::vector<i64> section;
    std::vector<i64> offset_coeffs;
    i64 strip = 1;
    i64 period = 8;
    std::vector<OffsetRule> rules;
    Predicate target;
    i64 threshold = 0;
    std::vector<i64> base;
    std::map<std::string, i64> families;  // family id -> index it covers

    // Constant term c in N = 8 * index + c.
    i64 offset_constant() const { return strip == 1 ? sum.coeff_sum() : mod_floor(sum.coeff_sum(), 8); }
};

// sum_i alpha_i (c_i 3^{l + e_i})^2 == K 9^l for l >= 1.
struct IdentityFamily {
    std::string id;
    TriangularSum sum;
    std::vector<std::pair<i64, int>> args;  // (c_i, e_i)
    i64 K = 0;
};

struct EscalationRow {
    std::vector<i64> prefix;
    i64 lo = 0, hi = 0;
    std::map<i64, Classification> marks;  // unlisted values in [lo, hi] are proper
};

struct EscalationTable {
    std::string table;
    i64 exception = 1;
    std::map<std::size_t, std::size_t> proper_by_k;
    i64 tail_width = 0;
    std::vector<EscalationRow> rows;
};

struct DataSet {
    std::filesystem::path dir;
    std::vector<TableRow> rows;
    std::vector<ProofCase> cases;
    std::map<std::string, IdentityFamily> families;
    std::vector<EscalationTable> escalation;
};

// --data argument, then $TRIQUAD_DATA, then the build-time default. A path
// to a file selects its directory.
std::filesystem::path resolve_data_dir(const std::optional<std::string>& cli_path);

std::vector<TableRow> load_table_rows(const std::filesystem::path& file);
void load_proof_cases(const std::filesystem::path& file, std::vector<ProofCase>& cases,
                      std::map<std::string, IdentityFamily>& families);
std::vector<EscalationTable> load_escalation_tables(const std::filesystem::path& file);
DataSet load_dataset(const std::filesystem::path& dir);

}  // namespace triquad
