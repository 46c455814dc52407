#include <quad3/families.hpp>

#include <sstream>

namespace quad3::fam {

namespace {

Int pow_i(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

unsigned long to_ul(const Int& n, const char* what) {
    if (n < 0 || !n.fits_ulong_p())
        throw param_error(std::string(what) + ": out of range");
    return n.get_ui();
}

bool odd(const Int& n) { return mpz_odd_p(n.get_mpz_t()) != 0; }

unsigned long mod_ul(const Int& n, unsigned long m) {
    return mpz_fdiv_ui(n.get_mpz_t(), m);
}

void reject_unless(bool ok, const char* cond) {
    if (!ok) throw param_error(std::string("precondition failed: ") + cond);
}

/* Shared tail: square-free reduction plus the degenerate-field guards. */
void finish_instance(FamilyInstance& inst) {
    if (inst.raw_d == 0) throw param_error("degenerate: raw_d = 0");
    auto [d, t] = arith::squarefree_part(inst.raw_d);
    if (d == 1) throw param_error("degenerate: raw_d is a perfect square");
    if (d == -3) throw param_error("degenerate: field would be Q(sqrt(-3))");
    inst.d = d;
}

/* f1-f5 certificate: trinomial from (norm, trace), irreducibility proof,
 * non-total ramification of 3, coprimality. */
ElementCertificate certify_element(const Int& norm, const Int& trace,
                                   uint64_t irr_prime) {
    ElementCertificate cert;
    cert.norm = norm;
    cert.trace = trace;
    cert.poly = tri::kishi_trinomial(norm, trace);
    cert.irr_mod_p = irr_prime;
    bool irreducible = irr_prime
                           ? tri::is_irreducible_mod_p(cert.poly, irr_prime)
                           : tri::is_irreducible_q(cert.poly);
    if (!irreducible)
        throw certificate_error("certificate trinomial is reducible");
    cert.ln = tri::ln_totally_ramified(cert.poly.A, cert.poly.B);
    if (cert.ln != tri::LnOutcome::not_totally_ramified)
        throw certificate_error("3 is totally ramified in the cubic field");
    if (arith::gcd(norm, trace) != 1)
        throw certificate_error("norm and trace are not coprime");
    return cert;
}

} // namespace

std::string family_name(Family f) {
    return "f" + std::to_string(static_cast<int>(f) + 1);
}

std::optional<Family> parse_family(const std::string& s) {
    std::string t = s;
    if (!t.empty() && (t[0] == 'f' || t[0] == 'F')) t = t.substr(1);
    if (t.size() == 1 && t[0] >= '1' && t[0] <= '8')
        return static_cast<Family>(t[0] - '1');
    return std::nullopt;
}

const std::vector<std::string>& family_params(Family f) {
    static const std::vector<std::string> p1{"m", "n", "k"};
    static const std::vector<std::string> p2{"m", "n", "sign"};
    static const std::vector<std::string> p3{"m", "n", "p", "r"};
    static const std::vector<std::string> p45{"a", "b", "n"};
    static const std::vector<std::string> p67{"m"};
    static const std::vector<std::string> p8{"m", "n"};
    switch (f) {
        case Family::f1: return p1;
        case Family::f2: return p2;
        case Family::f3: return p3;
        case Family::f4:
        case Family::f5: return p45;
        case Family::f6:
        case Family::f7: return p67;
        case Family::f8: return p8;
    }
    throw std::logic_error("unknown family");
}

FamilyInstance make_f1(const Int& m, const Int& n, const Int& k) {
    reject_unless(m >= 1 && odd(m), "m positive odd");
    reject_unless(mod_ul(m, 3) == 0, "m = 0 (mod 3)");
    reject_unless(n >= 1, "n >= 1");
    unsigned long k18 = mod_ul(k, 18);
    reject_unless(k18 == 1 || k18 == 17, "k = +-1 (mod 18)");
    reject_unless(arith::gcd(m, k) == 1, "gcd(m, k) = 1");

    FamilyInstance inst;
    inst.id = Family::f1;
    inst.params = {{"m", m}, {"n", n}, {"k", k}};
    Int m3n = pow_i(m, 3 * to_ul(n, "n"));
    inst.raw_d = 3 * (4 * m3n - k * k);
    // element of norm m^{3n} and trace k
    inst.certificate.element = certify_element(m3n, k, 2);
    finish_instance(inst);
    return inst;
}

FamilyInstance make_f2(const Int& m, const Int& n, int sign) {
    reject_unless(sign == 1 || sign == -1, "sign is +1 or -1");
    reject_unless(m >= 1 && odd(m), "m positive odd");
    reject_unless(mod_ul(m, 3) == 0, "m = 0 (mod 3)");
    reject_unless(n >= 1 && odd(n), "n positive odd");
    reject_unless(arith::valuation(Int(3), n) == 1, "v3(n) = 1");

    FamilyInstance inst;
    inst.id = Family::f2;
    inst.params = {{"m", m}, {"n", n}, {"sign", Int(sign)}};
    Int num = m * m * n * n + sign * 4 * n;
    if (mod_ul(num, 3) != 0) throw certificate_error("m^2n^2 +- 4n not = 0 (mod 3)");
    inst.raw_d = -(num / 3);
    // element of norm 1 and trace m^2 n +- 2 (unit of the real mirror)
    inst.certificate.element = certify_element(Int(1), m * m * n + 2 * sign, 2);
    finish_instance(inst);
    return inst;
}

FamilyInstance make_f3(const Int& m, const Int& n, const Int& p, int r) {
    reject_unless(r == -2 || r == 4, "r in {-2, +4}");
    reject_unless(m > 1 && odd(m), "m > 1 odd");
    reject_unless(p >= 1 && odd(p), "p positive odd");
    reject_unless(n >= 1, "n >= 1");

    FamilyInstance inst;
    inst.id = Family::f3;
    inst.params = {{"m", m}, {"n", n}, {"p", p}, {"r", Int(r)}};
    Int core = pow_i(Int(3), to_ul(m, "m")) * pow_i(p, 2 * to_ul(n, "n"));
    inst.raw_d = -(core + r);
    // r = +4: trace 3^m p^{2n} + 2, mod-2 certificate applies (odd trace);
    // r = -2: trace 2(3^m p^{2n} - 1) is even, certify over Q instead
    Int trace = (r == 4) ? Int(core + 2) : Int(2 * (core - 1));
    inst.certificate.element = certify_element(Int(1), trace, r == 4 ? 2 : 0);
    finish_instance(inst);
    return inst;
}

FamilyInstance make_f4(const Int& a, const Int& b, const Int& n) {
    reject_unless(mod_ul(a, 30) == 19, "a = 19 (mod 30)");
    reject_unless(mod_ul(b, 15) == 6, "b = 6 (mod 15)");
    reject_unless(arith::gcd(a, b) == 1, "gcd(a, b) = 1");
    reject_unless(n > 1 && odd(n), "n > 1 odd");

    FamilyInstance inst;
    inst.id = Family::f4;
    inst.params = {{"a", a}, {"b", b}, {"n", n}};
    Int a3n = pow_i(a, 3 * to_ul(n, "n"));
    Int b2n = pow_i(b, 2 * to_ul(n, "n"));
    inst.raw_d = 3 * (a3n - b2n);
    // element of norm a^{3n} and trace 2b^n; the trinomial reduces to
    // X^3 - 2X - 2 mod 5 for every valid (a, b, n), which has no root
    inst.certificate.element =
        certify_element(a3n, 2 * pow_i(b, to_ul(n, "n")), 5);
    finish_instance(inst);
    return inst;
}

FamilyInstance make_f5(const Int& a, const Int& b, const Int& n) {
    reject_unless(arith::gcd(a, b) == 1, "gcd(a, b) = 1");
    reject_unless(odd(a) && mod_ul(a, 3) == 1, "a = 1 (mod 3) odd");
    reject_unless(odd(b) && mod_ul(b, 3) == 0, "b = 0 (mod 3) odd");
    reject_unless(n > 1, "n > 1");

    FamilyInstance inst;
    inst.id = Family::f5;
    inst.params = {{"a", a}, {"b", b}, {"n", n}};
    Int a3n = pow_i(a, 3 * to_ul(n, "n"));
    Int b2n = pow_i(b, 2 * to_ul(n, "n"));
    inst.raw_d = 3 * (4 * a3n - b2n);
    // element of norm a^{3n} and trace b^n
    inst.certificate.element =
        certify_element(a3n, pow_i(b, to_ul(n, "n")), 2);
    finish_instance(inst);
    return inst;
}

FamilyInstance make_f6(const Int& m) {
    reject_unless(m >= 1 && odd(m), "m positive odd");
    reject_unless(mod_ul(m, 3) == 0, "m = 0 (mod 3)");

    FamilyInstance inst;
    inst.id = Family::f6;
    inst.params = {{"m", m}};
    inst.raw_d = -3 * (4 * m * m * m + 1);
    tri::KmReport rep = tri::km_check(Int(-1), 3 * m);
    if (!rep.all_pass() || rep.km4 != tri::KmBranch::b)
        throw certificate_error("resolvent-field conditions failed");
    if (rep.disc != 9 * inst.raw_d)
        throw certificate_error("discriminant identity disc = 9 raw_d failed");
    inst.certificate.km = rep;
    finish_instance(inst);
    if (inst.d != rep.d_field)
        throw certificate_error("resolvent field differs from target field");
    return inst;
}

FamilyInstance make_f7(const Int& m) {
    // cube_obstruction re-checks the preconditions; surface them first for
    // uniform param_error reporting
    reject_unless(m > 1 && odd(m), "m > 1 odd");

    FamilyInstance inst;
    inst.id = Family::f7;
    inst.params = {{"m", m}};
    inst.raw_d = 1 - 2 * m * m * m;
    if (!cube_obstruction(m))
        throw certificate_error("fundamental unit obstruction failed");
    auto [dp, t] = arith::squarefree_part(inst.raw_d);
    inst.certificate.cube = CubeObstruction{dp, t};
    finish_instance(inst);
    return inst;
}

FamilyInstance make_f8(const Int& m, const Int& n) {
    reject_unless(m >= 1 && odd(m), "m positive odd");
    reject_unless(mod_ul(m, 15) == 4, "m = 4 (mod 15)");
    reject_unless(n >= 3 && odd(n), "n >= 3 odd");

    FamilyInstance inst;
    inst.id = Family::f8;
    inst.params = {{"m", m}, {"n", n}};
    Int mn = pow_i(m, to_ul(n, "n"));
    inst.raw_d = 3 * (2 * mn * mn * mn - 1);
    tri::KmReport rep = tri::km_check(Int(2), 3 * mn);
    if (!rep.all_pass() || rep.km4 != tri::KmBranch::b)
        throw certificate_error("resolvent-field conditions failed");
    if (rep.disc != 144 * inst.raw_d)
        throw certificate_error("discriminant identity disc = 144 raw_d failed");
    if (!tri::is_irreducible_mod_p(tri::km_polynomial(Int(2), 3 * mn), 5))
        throw certificate_error("km polynomial reducible mod 5");
    inst.certificate.km = rep;
    finish_instance(inst);
    if (inst.d != rep.d_field)
        throw certificate_error("resolvent field differs from target field");
    return inst;
}

FamilyInstance make(Family f, const std::map<std::string, Int>& params) {
    auto get = [&](const char* name) -> const Int& {
        auto it = params.find(name);
        if (it == params.end())
            throw param_error(std::string("missing parameter: ") + name);
        return it->second;
    };
    auto get_small = [&](const char* name) -> int {
        const Int& v = get(name);
        if (!v.fits_sint_p()) throw param_error(std::string(name) + ": out of range");
        return static_cast<int>(v.get_si());
    };
    switch (f) {
        case Family::f1: return make_f1(get("m"), get("n"), get("k"));
        case Family::f2: return make_f2(get("m"), get("n"), get_small("sign"));
        case Family::f3:
            return make_f3(get("m"), get("n"), get("p"), get_small("r"));
        case Family::f4: return make_f4(get("a"), get("b"), get("n"));
        case Family::f5: return make_f5(get("a"), get("b"), get("n"));
        case Family::f6: return make_f6(get("m"));
        case Family::f7: return make_f7(get("m"));
        case Family::f8: return make_f8(get("m"), get("n"));
    }
    throw std::logic_error("unknown family");
}

bool cube_obstruction(const Int& m) {
    if (!(m > 1) || !odd(m))
        throw std::invalid_argument("cube_obstruction: need m > 1 odd");
    Int w = 1 - 2 * m * m * m;
    auto [dp, t] = arith::squarefree_part(w); // w = t^2 dp, dp < 0 square-free
    Int abs_t = abs(t);
    // If the fundamental unit of the mirror field were a perfect cube times
    // a rational, some a | 2 and integral b would satisfy
    //   2 = a^3 + 3 a b^2 dp      and      2|t| = 3 a^2 b + b^3 dp.
    for (int a : {1, -1, 2, -2}) {
        Int num = 2 - Int(a) * a * a;
        Int den = 3 * a * dp;
        if (num % den != 0) continue;
        Int b2 = num / den;
        if (b2 < 0) continue;
        Int b = arith::isqrt(b2);
        if (b * b != b2) continue;
        for (const Int& bb : {b, Int(-b)}) {
            if (3 * a * a * bb + bb * bb * bb * dp == 2 * abs_t)
                return false; // solution found: no obstruction
            if (bb == 0) break;
        }
    }
    return true;
}

DivisibilityResult verify_divisibility(const FamilyInstance& inst,
                                       const cg::Cutoffs& cutoffs) {
    DivisibilityResult res;
    try {
        cg::ClassNumberResult cn = cg::class_number(inst.d, cutoffs);
        res.h = cn.h;
        res.divisible_by_3 = (cn.h % 3 == 0);
    } catch (const cg::size_limit_exceeded&) {
        res.skipped = true;
    }
    return res;
}

} // namespace quad3::fam
