#include <quad3/harness.hpp>

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace quad3::harness {

namespace {

[[noreturn]] void fail_at(const std::string& path, size_t line, const std::string& msg) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(trim(field));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

long long parse_ll(const std::string& s, const std::string& path, size_t line) {
    try {
        size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        fail_at(path, line, "not an integer: '" + s + "'");
    }
}

Int parse_int(const std::string& s, const std::string& path, size_t line) {
    try {
        return Int(s);
    } catch (const std::exception&) {
        fail_at(path, line, "not an integer: '" + s + "'");
    }
}

nlohmann::ordered_json json_int(const Int& v) {
    if (v.fits_slong_p()) return static_cast<long long>(v.get_si());
    return v.get_str();
}

/* One printed record to re-derive: full generator params + (d, h). */
struct Unit {
    std::map<std::string, Int> params;
    Int ref_d;
    long long ref_h = 0;
};

VerificationRecord run_unit(int table, fam::Family family, const Unit& unit,
                            const cg::Cutoffs& cutoffs) {
    VerificationRecord rec;
    rec.table = table;
    rec.params = unit.params;
    rec.ref_d = unit.ref_d;
    rec.ref_h = unit.ref_h;

    fam::FamilyInstance inst;
    try {
        inst = fam::make(family, unit.params);
    } catch (const fam::param_error& e) {
        rec.status = Status::param_reject;
        rec.note = e.what();
        return rec;
    }
    rec.raw_d = inst.raw_d;
    rec.d = inst.d;

    bool d_match = (inst.raw_d == unit.ref_d);
    try {
        rec.h = cg::class_number(inst.d, cutoffs).h;
    } catch (const cg::size_limit_exceeded& e) {
        if (d_match) {
            rec.status = Status::skipped_size;
            rec.note = e.what();
            return rec;
        }
        // printed d already disagrees; report that even without an h
    }
    if (!d_match)
        rec.status = Status::d_mismatch; // dominates any h comparison
    else
        rec.status = (*rec.h == unit.ref_h) ? Status::ok : Status::h_mismatch;
    return rec;
}

/* Run fn(i) for i in [0, n) on `jobs` threads; first exception wins. */
template <typename Fn>
void parallel_for(uint64_t n, unsigned jobs, Fn&& fn) {
    if (jobs <= 1 || n <= 1) {
        for (uint64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<uint64_t> next{0};
    std::atomic<bool> bail{false};
    std::exception_ptr error;
    std::mutex error_mu;
    auto worker = [&] {
        for (;;) {
            uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= n || bail.load(std::memory_order_relaxed)) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
                bail.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };
    unsigned count = static_cast<unsigned>(
        std::min<uint64_t>(jobs, n));
    std::vector<std::thread> pool;
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace

std::vector<TableRow> load_fixture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");

    // table number = trailing integer of the basename stem, 0 if absent
    int table = 0;
    {
        size_t slash = path.find_last_of('/');
        std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
        size_t dot = base.find_last_of('.');
        if (dot != std::string::npos) base = base.substr(0, dot);
        size_t end = base.size();
        while (end > 0 && std::isdigit(static_cast<unsigned char>(base[end - 1]))) --end;
        // cap the digit run so an unrelated numeric suffix cannot overflow
        if (end < base.size() && base.size() - end <= 6)
            table = std::stoi(base.substr(end));
    }

    std::string line;
    size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        header = split_csv(line);
        break;
    }
    if (header.empty()) throw std::runtime_error(path + ": missing header");

    // columns named d/h (or d1/h1/d2/h2) are printed values; the rest are
    // generator parameters, in order
    auto is_entry = [](const std::string& name) {
        return name == "d" || name == "h" || name == "d1" || name == "h1" ||
               name == "d2" || name == "h2";
    };
    std::vector<std::string> param_cols;
    std::vector<std::string> entry_cols;
    for (const auto& name : header)
        (is_entry(name) ? entry_cols : param_cols).push_back(name);
    size_t pairs = entry_cols.size() / 2;
    bool pair_ok =
        (pairs == 1 && entry_cols == std::vector<std::string>{"d", "h"}) ||
        (pairs == 2 &&
         entry_cols == std::vector<std::string>{"d1", "h1", "d2", "h2"});
    if (!pair_ok)
        fail_at(path, line_no, "header must end with d,h or d1,h1,d2,h2");

    std::vector<TableRow> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_csv(line);
        if (fields.size() != header.size())
            fail_at(path, line_no,
                    "expected " + std::to_string(header.size()) + " fields, got " +
                        std::to_string(fields.size()));
        TableRow row;
        row.table = table;
        size_t i = 0;
        for (const auto& name : header) {
            const std::string& field = fields[i++];
            if (is_entry(name)) continue;
            if (row.params.count(name))
                fail_at(path, line_no, "duplicate column: " + name);
            row.params[name] = parse_ll(field, path, line_no);
        }
        // entry fields, by position within the header
        Int d_val;
        bool have_d = false;
        i = 0;
        for (const auto& name : header) {
            const std::string& field = fields[i++];
            if (!is_entry(name)) continue;
            if (name[0] == 'd') {
                d_val = parse_int(field, path, line_no);
                have_d = true;
            } else {
                if (!have_d) fail_at(path, line_no, "h column before its d");
                row.entries.emplace_back(d_val, parse_ll(field, path, line_no));
                have_d = false;
            }
        }
        if (row.entries.size() != pairs)
            fail_at(path, line_no, "incomplete (d, h) pairs");
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string status_name(Status s) {
    switch (s) {
        case Status::ok: return "OK";
        case Status::d_mismatch: return "D_MISMATCH";
        case Status::h_mismatch: return "H_MISMATCH";
        case Status::both_mismatch: return "BOTH_MISMATCH";
        case Status::skipped_size: return "SKIPPED_SIZE";
        case Status::param_reject: return "PARAM_REJECT";
    }
    return "UNKNOWN";
}

fam::Family table_family(int table) {
    if (table < 1 || table > 7)
        throw std::invalid_argument("no such table: " + std::to_string(table));
    return static_cast<fam::Family>(table - 1);
}

std::vector<VerificationRecord> verify_table(int table, const VerifyOptions& opts) {
    fam::Family family = table_family(table);
    std::string path =
        opts.fixtures_dir + "/table" + std::to_string(table) + ".csv";
    auto rows = load_fixture(path);

    std::vector<Unit> units;
    for (const auto& row : rows) {
        std::map<std::string, Int> base;
        for (const auto& [name, value] : row.params)
            base.emplace(name, Int(static_cast<long>(value)));
        if (row.entries.size() == 1) {
            Unit u{base, row.entries[0].first, row.entries[0].second};
            if (table == 1) u.params.emplace("k", 1); // printed rows fix k = 1
            units.push_back(std::move(u));
        } else {
            // pair tables: column pair 1 = (sign +1 | r = -2), pair 2 = the other
            const char* name = table == 2 ? "sign" : "r";
            int first = table == 2 ? 1 : -2;
            int second = table == 2 ? -1 : 4;
            Unit u1{base, row.entries[0].first, row.entries[0].second};
            u1.params.emplace(name, first);
            Unit u2{base, row.entries[1].first, row.entries[1].second};
            u2.params.emplace(name, second);
            units.push_back(std::move(u1));
            units.push_back(std::move(u2));
        }
    }

    std::vector<VerificationRecord> records(units.size());
    parallel_for(units.size(), opts.jobs, [&](uint64_t i) {
        records[i] = run_unit(table, family, units[i], opts.cutoffs);
    });
    return records;
}

bool all_clean(const std::vector<VerificationRecord>& records) {
    for (const auto& rec : records)
        if (rec.status != Status::ok && rec.status != Status::skipped_size)
            return false;
    return true;
}

std::string record_json(const VerificationRecord& rec) {
    nlohmann::ordered_json j;
    j["table"] = rec.table;
    nlohmann::ordered_json params;
    for (const auto& [name, value] : rec.params) params[name] = json_int(value);
    j["params"] = std::move(params);
    j["ref_d"] = json_int(rec.ref_d);
    j["ref_h"] = rec.ref_h;
    j["raw_d"] = json_int(rec.raw_d);
    j["d"] = json_int(rec.d);
    if (rec.h)
        j["h"] = *rec.h;
    else
        j["h"] = nullptr;
    j["status"] = status_name(rec.status);
    if (!rec.note.empty()) j["note"] = rec.note;
    return j.dump();
}

SweepSummary sweep(fam::Family f, const std::map<std::string, SweepRange>& ranges,
                   const cg::Cutoffs& cutoffs, unsigned jobs) {
    const auto& names = fam::family_params(f);
    for (const auto& [name, range] : ranges) {
        (void)range;
        if (std::find(names.begin(), names.end(), name) == names.end())
            throw std::invalid_argument("family " + fam::family_name(f) +
                                        " has no parameter '" + name + "'");
    }

    SweepSummary summary;

    std::vector<std::vector<Int>> values(names.size());
    std::vector<size_t> missing;
    for (size_t i = 0; i < names.size(); ++i) {
        auto it = ranges.find(names[i]);
        if (it == ranges.end()) {
            missing.push_back(i);
            continue;
        }
        for (long long v = it->second.lo; v <= it->second.hi; ++v)
            values[i].emplace_back(static_cast<long>(v));
        if (values[i].empty()) return summary; // an empty range: nothing to do
    }
    for (size_t i : missing) {
        // fixed-choice parameters default to both values; anything else
        // has no finite default
        if (names[i] == "sign")
            values[i] = {Int(1), Int(-1)};
        else if (names[i] == "r")
            values[i] = {Int(-2), Int(4)};
        else
            throw std::invalid_argument("missing range for parameter '" +
                                        names[i] + "'");
    }

    unsigned __int128 total = 1;
    for (const auto& vs : values) {
        total *= vs.size();
        if (total > 100'000'000)
            throw std::invalid_argument("sweep too large (over 1e8 tuples)");
    }
    uint64_t n = static_cast<uint64_t>(total);

    std::vector<std::optional<SweepOutcome>> slots(n);
    parallel_for(n, jobs, [&](uint64_t index) {
        std::map<std::string, Int> params;
        uint64_t rest = index;
        for (size_t i = 0; i < names.size(); ++i) {
            params.emplace(names[i], values[i][rest % values[i].size()]);
            rest /= values[i].size();
        }
        fam::FamilyInstance inst;
        try {
            inst = fam::make(f, params);
        } catch (const fam::param_error&) {
            return; // slot stays empty: rejected
        }
        SweepOutcome out;
        out.params = std::move(params);
        out.raw_d = inst.raw_d;
        out.d = inst.d;
        auto res = fam::verify_divisibility(inst, cutoffs);
        out.skipped = res.skipped;
        out.h = res.h;
        out.divisible = res.divisible_by_3;
        slots[index] = std::move(out);
    });

    for (auto& slot : slots) {
        if (!slot) {
            ++summary.rejected;
            continue;
        }
        ++summary.instances;
        if (slot->skipped) {
            ++summary.skipped;
        } else if (slot->divisible) {
            ++summary.verified;
        } else {
            std::ostringstream msg;
            msg << fam::family_name(f) << "(";
            bool first = true;
            for (const auto& name : names) {
                if (!first) msg << ", ";
                first = false;
                msg << name << "=" << slot->params.at(name);
            }
            msg << "): d=" << slot->d << " h=" << slot->h << " not divisible by 3";
            summary.counterexamples.push_back(msg.str());
        }
        summary.outcomes.push_back(std::move(*slot));
    }
    return summary;
}

} // namespace quad3::harness
