#include <quad3/harness.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace arith = quad3::arith;
namespace cg = quad3::cg;
namespace fam = quad3::fam;
namespace harness = quad3::harness;
using arith::Int;

namespace {

bool parse_mpz(const std::string& s, Int& out) {
    if (s.empty()) return false;
    try {
        out = Int(s);
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

cg::Cutoffs cutoffs_from(long long cutoff) {
    cg::Cutoffs c;
    if (cutoff > 0) {
        c.imaginary = static_cast<long>(cutoff);
        c.real = static_cast<long>(cutoff);
    }
    return c;
}

std::string poly_str(const quad3::tri::CubicTrinomial& t) {
    std::ostringstream out;
    out << "X^3";
    if (t.A != 0) out << (t.A > 0 ? " - " : " + ") << abs(t.A) << "X";
    if (t.B != 0) out << (t.B > 0 ? " - " : " + ") << abs(t.B);
    return out.str();
}

std::string ln_name(quad3::tri::LnOutcome o) {
    switch (o) {
        case quad3::tri::LnOutcome::not_totally_ramified: return "no (none of LN-1..3 hold)";
        case quad3::tri::LnOutcome::ln1: return "yes (LN-1)";
        case quad3::tri::LnOutcome::ln2: return "yes (LN-2)";
        case quad3::tri::LnOutcome::ln3: return "yes (LN-3)";
    }
    return "?";
}

int run_classno(const std::string& n_str, long long cutoff) {
    Int n;
    if (!parse_mpz(n_str, n)) {
        std::cerr << "error: '" << n_str << "' is not an integer\n";
        return 2;
    }
    try {
        cg::ClassNumberResult res = cg::class_number(n, cutoffs_from(cutoff));
        std::cout << "n         = " << n << "\n"
                  << "d         = " << res.d << "\n"
                  << "delta     = " << res.delta << "\n"
                  << "h         = " << res.h << "\n";
        if (res.unit_norm != 0)
            std::cout << "h_narrow  = " << res.h_narrow << "\n"
                      << "unit_norm = " << (res.unit_norm > 0 ? "+1" : "-1") << "\n";
        std::cout << "method    = " << cg::method_name(res.method) << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

void print_certificate(const fam::FamilyInstance& inst) {
    const auto& cert = inst.certificate;
    if (cert.element) {
        const auto& el = *cert.element;
        std::cout << "certificate: integral element of the mirror field\n"
                  << "  norm        = " << el.norm << "\n"
                  << "  trace       = " << el.trace << "\n"
                  << "  trinomial   = " << poly_str(el.poly) << "\n";
        if (el.irr_mod_p)
            std::cout << "  irreducible = yes (no root mod " << el.irr_mod_p << ")\n";
        else
            std::cout << "  irreducible = yes (rational-root test)\n";
        std::cout << "  3 totally ramified = " << ln_name(el.ln) << "\n";
    }
    if (cert.km) {
        const auto& km = *cert.km;
        static const char* branch[] = {"a", "b", "c"};
        std::cout << "certificate: resolvent trinomial X^3 - uvX - u^2\n"
                  << "  u, v     = " << km.u << ", " << km.v << "\n"
                  << "  km1 gcd  = " << (km.km1 ? "pass" : "FAIL") << "\n"
                  << "  km2 irr  = " << (km.km2 ? "pass" : "FAIL") << "\n"
                  << "  km3 disc = " << (km.km3 ? "pass" : "FAIL") << "\n"
                  << "  km4      = "
                  << (km.km4 ? std::string("pass (branch ") +
                                   branch[static_cast<int>(*km.km4)] + ")"
                             : std::string("FAIL"))
                  << "\n"
                  << "  disc     = " << km.disc << "\n"
                  << "  d_field  = " << km.d_field << "\n";
    }
    if (cert.cube) {
        std::cout << "certificate: fundamental-unit cube obstruction\n"
                  << "  kernel d' = " << cert.cube->d_prime << "\n"
                  << "  cofactor t (raw_d = t^2 d') = " << cert.cube->t << "\n"
                  << "  no descent solution with a | 2\n";
    }
}

int run_gen(const std::string& family_str,
            const std::map<std::string, std::string>& given, bool check,
            long long cutoff) {
    auto f = fam::parse_family(family_str);
    if (!f) {
        std::cerr << "error: unknown family '" << family_str << "' (use f1..f8)\n";
        return 2;
    }
    const auto& names = fam::family_params(*f);
    std::map<std::string, Int> params;
    for (const auto& [name, text] : given) {
        if (std::find(names.begin(), names.end(), name) == names.end()) {
            std::cerr << "error: family " << fam::family_name(*f)
                      << " takes no parameter '" << name << "'\n";
            return 2;
        }
        Int v;
        if (!parse_mpz(text, v)) {
            std::cerr << "error: --" << name << " value '" << text
                      << "' is not an integer\n";
            return 2;
        }
        params.emplace(name, v);
    }

    fam::FamilyInstance inst;
    try {
        inst = fam::make(*f, params);
    } catch (const fam::param_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    std::cout << "family = " << fam::family_name(*f) << "\n";
    for (const auto& name : names)
        std::cout << name << " = " << inst.params.at(name) << "\n";
    std::cout << "raw_d  = " << inst.raw_d << "\n"
              << "d      = " << inst.d << "\n";
    print_certificate(inst);

    if (!check) return 0;
    auto res = fam::verify_divisibility(inst, cutoffs_from(cutoff));
    if (res.skipped) {
        std::cout << "h      = skipped (|delta| above cutoff)\n";
        return 0;
    }
    std::cout << "h      = " << res.h << "\n"
              << "3 | h  = " << (res.divisible_by_3 ? "yes" : "NO") << "\n";
    return res.divisible_by_3 ? 0 : 1;
}

int run_verify(int table, long long cutoff, bool json, unsigned jobs,
               const std::string& fixtures) {
    harness::VerifyOptions opts;
    opts.cutoffs = cutoffs_from(cutoff);
    opts.jobs = jobs;
    opts.fixtures_dir = fixtures;

    std::vector<harness::VerificationRecord> records;
    try {
        records = harness::verify_table(table, opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    std::map<harness::Status, int> counts;
    for (const auto& rec : records) ++counts[rec.status];

    if (json) {
        for (const auto& rec : records) std::cout << harness::record_json(rec) << "\n";
    } else {
        const auto& names = fam::family_params(harness::table_family(table));
        // column texts first, then pad to the widest entry
        std::vector<std::vector<std::string>> cells;
        for (const auto& rec : records) {
            std::ostringstream ps;
            for (const auto& name : names) {
                if (!rec.params.count(name)) continue;
                if (ps.tellp() > 0) ps << " ";
                ps << name << "=" << rec.params.at(name);
            }
            std::ostringstream refd, rawd, dd, refh, hh;
            refd << rec.ref_d;
            rawd << rec.raw_d;
            dd << rec.d;
            refh << rec.ref_h;
            if (rec.h)
                hh << *rec.h;
            else
                hh << "-";
            cells.push_back({ps.str(), refd.str(), rawd.str(), dd.str(),
                             refh.str(), hh.str(), harness::status_name(rec.status),
                             rec.note});
        }
        static const char* heads[] = {"params", "ref_d", "raw_d", "d",
                                      "ref_h", "h", "status", "note"};
        std::vector<size_t> width(8);
        for (int c = 0; c < 8; ++c) width[c] = std::string(heads[c]).size();
        for (const auto& row : cells)
            for (int c = 0; c < 8; ++c) width[c] = std::max(width[c], row[c].size());
        auto emit = [&](const std::vector<std::string>& row) {
            for (int c = 0; c < 8; ++c) {
                std::cout << row[c];
                if (c < 7)
                    std::cout << std::string(width[c] - row[c].size() + 2, ' ');
            }
            std::cout << "\n";
        };
        emit({heads[0], heads[1], heads[2], heads[3], heads[4], heads[5],
              heads[6], heads[7]});
        for (const auto& row : cells) emit(row);
    }

    std::ostream& sum = json ? std::cerr : std::cout;
    sum << records.size() << " records:";
    for (auto s : {harness::Status::ok, harness::Status::d_mismatch,
                   harness::Status::h_mismatch, harness::Status::both_mismatch,
                   harness::Status::skipped_size, harness::Status::param_reject})
        if (counts.count(s))
            sum << " " << counts[s] << " " << harness::status_name(s);
    sum << "\n";

    return harness::all_clean(records) ? 0 : 1;
}

bool parse_range(const std::string& s, std::string& name,
                 harness::SweepRange& range) {
    size_t eq = s.find('=');
    if (eq == std::string::npos || eq == 0) return false;
    size_t dots = s.find("..", eq + 1);
    if (dots == std::string::npos) return false;
    name = s.substr(0, eq);
    try {
        size_t pos = 0;
        std::string lo = s.substr(eq + 1, dots - eq - 1);
        std::string hi = s.substr(dots + 2);
        range.lo = std::stoll(lo, &pos);
        if (pos != lo.size()) return false;
        range.hi = std::stoll(hi, &pos);
        if (pos != hi.size()) return false;
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

int run_sweep(const std::string& family_str,
              const std::vector<std::string>& range_strs, long long cutoff,
              unsigned jobs) {
    auto f = fam::parse_family(family_str);
    if (!f) {
        std::cerr << "error: unknown family '" << family_str << "' (use f1..f8)\n";
        return 2;
    }
    std::map<std::string, harness::SweepRange> ranges;
    for (const auto& s : range_strs) {
        std::string name;
        harness::SweepRange range;
        if (!parse_range(s, name, range)) {
            std::cerr << "error: bad range '" << s << "' (want name=lo..hi)\n";
            return 2;
        }
        if (ranges.count(name)) {
            std::cerr << "error: duplicate range for '" << name << "'\n";
            return 2;
        }
        ranges[name] = range;
    }

    harness::SweepSummary summary;
    try {
        summary = harness::sweep(*f, ranges, cutoffs_from(cutoff), jobs);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    std::cout << "sweep " << fam::family_name(*f) << ": " << summary.instances
              << " instances, " << summary.verified << " verified (3 | h), "
              << summary.skipped << " skipped, " << summary.rejected
              << " rejected\n";
    for (const auto& bad : summary.counterexamples)
        std::cout << "counterexample: " << bad << "\n";
    return summary.counterexamples.empty() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact class numbers of quadratic fields, eight generator"
                 " families with 3 | h certificates, and a printed-table audit"
                 " harness"};
    app.require_subcommand(1);

    // classno
    std::string cn_n;
    long long cn_cutoff = 0;
    auto* cmd_classno =
        app.add_subcommand("classno", "class number of Q(sqrt(n))");
    cmd_classno->add_option("n", cn_n, "nonzero integer, non-square kernel")
        ->required();
    cmd_classno->add_option("--cutoff", cn_cutoff,
                            "override both |delta| cutoffs");

    // gen
    std::string g_family;
    std::map<std::string, std::string> g_given;
    bool g_check = false;
    long long g_cutoff = 0;
    auto* cmd_gen = app.add_subcommand(
        "gen", "construct one family instance and print its certificate");
    cmd_gen->add_option("family", g_family, "f1..f8")->required();
    std::map<std::string, CLI::Option*> g_opts;
    for (const char* p : {"m", "n", "k", "p", "r", "a", "b", "sign"})
        g_opts[p] = cmd_gen->add_option(
            std::string("--") + p, g_given[p],
            std::string("parameter ") + p + " (use --" + p + "=-5 for negatives)");
    cmd_gen->add_flag("--check", g_check, "also compute h and test 3 | h");
    cmd_gen->add_option("--cutoff", g_cutoff, "override both |delta| cutoffs");

    // verify
    int v_table = 0;
    long long v_cutoff = 0;
    bool v_json = false;
    unsigned v_jobs = 1;
    std::string v_fixtures = "fixtures";
    auto* cmd_verify = app.add_subcommand(
        "verify", "re-derive one reference table and flag discrepancies");
    cmd_verify->add_option("--table", v_table, "table number 1..7")
        ->required()
        ->check(CLI::Range(1, 7));
    cmd_verify->add_option("--cutoff", v_cutoff, "override both |delta| cutoffs");
    cmd_verify->add_flag("--json", v_json, "one JSON record per line");
    cmd_verify->add_option("--jobs", v_jobs, "worker threads (default 1)");
    cmd_verify->add_option("--fixtures", v_fixtures,
                           "fixtures directory (default: fixtures)");

    // sweep
    std::string s_family;
    std::vector<std::string> s_ranges;
    long long s_cutoff = 0;
    unsigned s_jobs = 1;
    auto* cmd_sweep = app.add_subcommand(
        "sweep", "verify 3 | h over a parameter box of one family");
    cmd_sweep->add_option("family", s_family, "f1..f8")->required();
    cmd_sweep->add_option("--range", s_ranges, "name=lo..hi (repeatable)");
    cmd_sweep->add_option("--cutoff", s_cutoff, "override both |delta| cutoffs");
    cmd_sweep->add_option("--jobs", s_jobs, "worker threads (default 1)");

    // Let a leading negative number pass as a positional: insert "--" before
    // the first "-<digits>" token that does not follow an option name.
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    for (size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "--") break;
        bool dash_number = a.size() >= 2 && a[0] == '-' &&
                           std::isdigit(static_cast<unsigned char>(a[1]));
        bool after_option = i > 0 && args[i - 1].size() >= 2 && args[i - 1][0] == '-';
        if (dash_number && !after_option) {
            args.insert(args.begin() + static_cast<long>(i), "--");
            break;
        }
    }
    std::vector<const char*> cargv;
    cargv.push_back(argv[0]);
    for (const auto& s : args) cargv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // normalize parse failures to exit 2
    }

    if (cmd_classno->parsed()) return run_classno(cn_n, cn_cutoff);
    if (cmd_gen->parsed()) {
        std::map<std::string, std::string> given;
        for (const auto& [name, opt] : g_opts)
            if (opt->count() > 0) given[name] = g_given[name];
        return run_gen(g_family, given, g_check, g_cutoff);
    }
    if (cmd_verify->parsed())
        return run_verify(v_table, v_cutoff, v_json, v_jobs, v_fixtures);
    if (cmd_sweep->parsed())
        return run_sweep(s_family, s_ranges, s_cutoff, s_jobs);
    return 2;
}
