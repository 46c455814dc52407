#pragma once
/* Eight parametrized families of quadratic fields whose class number is
 * divisible by 3, each instance carrying the algebraic certificate that
 * proves the divisibility before any class number is computed:
 *
 *   f1  d = 3(4m^{3n} - k^2)    m = 0 (3) odd, k = +-1 (18), gcd(m,k) = 1
 *   f2  d = -(m^2n^2 +- 4n)/3   m = 0 (3) odd, n odd with v3(n) = 1
 *   f3  d = -(3^m p^{2n} + r)   m > 1 odd, p odd, r in {-2, +4}
 *   f4  d = 3(a^{3n} - b^{2n})  a = 19 (30), b = 6 (15), gcd(a,b) = 1, n > 1 odd
 *   f5  d = 3(4a^{3n} - b^{2n}) a = 1 (3) odd, b = 0 (3) odd, gcd(a,b) = 1, n > 1
 *   f6  d = -3(4m^3 + 1)        m = 0 (3) odd
 *   f7  d = 1 - 2m^3            m > 1 odd
 *   f8  d = 3(2m^{3n} - 1)      m = 4 (15) odd, n >= 3 odd
 *
 * f1-f5 certify via an integral element of norm N and trace T: the cubic
 * X^3 - 3 cbrt(N) X - T is irreducible and 3 is not totally ramified, so
 * the cube root obstruction forces 3 | h.  f6/f8 certify via the km_check
 * battery on X^3 - uvX - u^2 (u = -1, v = 3m resp. u = 2, v = 3m^n), whose
 * resolvent field is the target field.  f7 certifies by showing the mirror
 * field's fundamental unit is not a relative cube (no integral solution of
 * the descent equations). */

#include <quad3/classgroup.hpp>
#include <quad3/quadfield.hpp>
#include <quad3/trinomial.hpp>

#include <map>
#include <optional>
#include <string>

namespace quad3::fam {

using arith::Int;

enum class Family { f1, f2, f3, f4, f5, f6, f7, f8 };

/* "f1".."f8" <-> enum; parse also accepts bare "1".."8". */
std::string family_name(Family f);
std::optional<Family> parse_family(const std::string& s);

/* Parameter names each family expects, in CLI order. */
const std::vector<std::string>& family_params(Family f);

/* A fixture row's parameters violate a family precondition. */
struct param_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/* A proof-side condition that must hold for valid parameters failed to
 * verify -- indicates a bug, not bad input. */
struct certificate_error : std::logic_error {
    using std::logic_error::logic_error;
};

/* Certificate carried by f1-f5 instances. */
struct ElementCertificate {
    Int norm, trace;          // defining element data; gcd(norm, trace) = 1
    tri::CubicTrinomial poly; // X^3 - 3 cbrt(norm) X - trace
    uint64_t irr_mod_p = 0;   // prime of the mod-p irreducibility proof,
                              // 0 = certified by the rational-root test
    tri::LnOutcome ln = tri::LnOutcome::not_totally_ramified;
};

/* Certificate carried by f7 instances: 1 - 2m^3 = t^2 d' and no integral
 * (a, b) with a | 2 satisfies 2 = a^3 + 3ab^2 d', 2|t| = 3a^2 b + b^3 d'. */
struct CubeObstruction {
    Int d_prime, t;
};

struct Certificate {
    std::optional<ElementCertificate> element; // f1-f5
    std::optional<tri::KmReport> km;           // f6, f8
    std::optional<CubeObstruction> cube;       // f7
};

struct FamilyInstance {
    Family id = Family::f1;
    std::map<std::string, Int> params;
    Int raw_d; // family formula value, before square-free reduction
    Int d;     // square-free kernel
    Certificate certificate;
};

FamilyInstance make_f1(const Int& m, const Int& n, const Int& k);
FamilyInstance make_f2(const Int& m, const Int& n, int sign); // sign = +-1
FamilyInstance make_f3(const Int& m, const Int& n, const Int& p, int r);
FamilyInstance make_f4(const Int& a, const Int& b, const Int& n);
FamilyInstance make_f5(const Int& a, const Int& b, const Int& n);
FamilyInstance make_f6(const Int& m);
FamilyInstance make_f7(const Int& m);
FamilyInstance make_f8(const Int& m, const Int& n);

/* Generic entry point: params keyed by family_params(f) names. */
FamilyInstance make(Family f, const std::map<std::string, Int>& params);

/* True iff the fundamental unit of Q(sqrt(squarefree(1 - 2m^3))) cannot be
 * a cube times a rational: scans the finitely many descent candidates
 * a | 2, b^2 = (2 - a^3)/(3 a d').  m > 1 odd required. */
bool cube_obstruction(const Int& m);

struct DivisibilityResult {
    bool skipped = false; // |delta| above cutoff, h not computed
    long long h = 0;
    bool divisible_by_3 = false;
};

DivisibilityResult verify_divisibility(const FamilyInstance& inst,
                                       const cg::Cutoffs& cutoffs = {});

} // namespace quad3::fam
