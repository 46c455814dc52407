#pragma once
/* Reference-table audit harness.  Fixtures under fixtures/tableN.csv hold
 * the printed (params, d, h) rows; verify_table() regenerates every row
 * from its family formula, recomputes the class number, and reports one
 * record per (row, variant) with an explicit status --
 *
 *   OK            raw_d and h both match the printed values
 *   D_MISMATCH    printed d differs from the formula value (h of the
 *                 *recomputed* field is still reported for auditing);
 *                 dominates any h comparison
 *   H_MISMATCH    d matches, class number differs
 *   BOTH_MISMATCH reserved (D_MISMATCH dominates by contract)
 *   SKIPPED_SIZE  |delta| beyond the cutoff; nothing is guessed
 *   PARAM_REJECT  row violates the family preconditions
 *
 * Pair tables (2: sign, 3: r) expand to two records per CSV row. */

#include <quad3/families.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace quad3::harness {

using arith::Int;

struct TableRow {
    int table = 0;
    std::map<std::string, long long> params;
    // printed (d, h) pairs: one entry, or two for the pair tables
    std::vector<std::pair<Int, long long>> entries;
};

/* Parse one fixture file; malformed input reports file:line. */
std::vector<TableRow> load_fixture(const std::string& path);

enum class Status { ok, d_mismatch, h_mismatch, both_mismatch, skipped_size, param_reject };

std::string status_name(Status s);

struct VerificationRecord {
    int table = 0;
    std::map<std::string, Int> params; // includes expanded sign/r/k
    Int ref_d;           // printed d
    long long ref_h = 0; // printed h
    Int raw_d;           // recomputed family formula value
    Int d;               // square-free kernel of raw_d
    std::optional<long long> h; // class number of the recomputed field
    Status status = Status::ok;
    std::string note; // reject reason / error detail
};

struct VerifyOptions {
    cg::Cutoffs cutoffs;
    unsigned jobs = 1;
    std::string fixtures_dir = "fixtures";
};

/* Which family a table exercises. */
fam::Family table_family(int table);

std::vector<VerificationRecord> verify_table(int table,
                                             const VerifyOptions& opts = {});

/* All statuses in {OK, SKIPPED_SIZE}? (CLI exit code 0 condition) */
bool all_clean(const std::vector<VerificationRecord>& records);

/* One line of JSON (stable keys: table, params, raw_d, d, h, status,
 * plus ref_d/ref_h); numbers that exceed 64 bits become decimal strings. */
std::string record_json(const VerificationRecord& rec);

struct SweepRange {
    long long lo = 0, hi = -1; // inclusive; empty when lo > hi
};

struct SweepOutcome {
    std::map<std::string, Int> params;
    Int raw_d, d;
    bool skipped = false;
    long long h = 0;
    bool divisible = false;
};

struct SweepSummary {
    uint64_t instances = 0; // parameter tuples accepted by the family
    uint64_t verified = 0;  // h computed and 3 | h
    uint64_t skipped = 0;   // above cutoff
    uint64_t rejected = 0;  // precondition-violating tuples
    std::vector<SweepOutcome> outcomes;          // per accepted instance
    std::vector<std::string> counterexamples;    // 3 !| h descriptions
};

/* Cartesian product over [lo,hi] per parameter (order: family_params);
 * tuples failing preconditions are counted as rejected, never fatal.
 * Families with a fixed-choice parameter (f2's sign, f3's r) iterate both
 * values unless the range map pins one. */
SweepSummary sweep(fam::Family f,
                   const std::map<std::string, SweepRange>& ranges,
                   const cg::Cutoffs& cutoffs = {}, unsigned jobs = 1);

} // namespace quad3::harness
