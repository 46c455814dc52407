#pragma once
/* Cubic trinomials X^3 - A*X - B and the two certificate batteries built
 * on them:
 *
 *  - ln_totally_ramified: for irreducible f = X^3 - aX - b, decides whether
 *    3 is totally ramified in Q(theta) by the valuation/congruence tests
 *    LN1/LN2/LN3 (any hit = totally ramified; all miss = not).
 *
 *  - km_check: for f_{u,v} = X^3 - uvX - u^2, the four conditions under
 *    which Q(theta) is a non-Galois cubic whose Galois closure is unramified
 *    over its quadratic resolvent field Q(sqrt(disc)) -- the engine behind
 *    the two resolvent-field families. */

#include <quad3/arith.hpp>

#include <optional>

namespace quad3::tri {

using arith::Int;

struct CubicTrinomial {
    Int A, B; // X^3 - A*X - B

    bool operator==(const CubicTrinomial&) const = default;
};

/* disc(X^3 - AX - B) = 4A^3 - 27B^2. */
Int cubic_discriminant(const CubicTrinomial& t);

/* X^3 - 3*cbrt(norm)*X - trace; rejects non-cube norm. */
CubicTrinomial kishi_trinomial(const Int& norm, const Int& trace);

CubicTrinomial km_polynomial(const Int& u, const Int& v);

/* Monic cubic: irreducible over Q iff it has no rational (= integer,
 * dividing B) root.  B = 0 always factors. */
bool is_irreducible_q(const CubicTrinomial& t,
                      const arith::FactorEffort& effort = {});

/* Irreducible over F_p iff no root mod p (degree 3).  p must be prime. */
bool is_irreducible_mod_p(const CubicTrinomial& t, uint64_t p);

enum class LnOutcome {
    not_totally_ramified,
    ln1, // 1 <= v3(b) <= v3(a)
    ln2, // 3|a, a != 3 (9), 3!|b, b^2 != a+1 (9)
    ln3, // a = 3 (9), 3!|b, b^2 != a+1 (27)
};

/* Ramification of 3 in Q(theta), f = X^3 - aX - b irreducible.  Hypotheses
 * (v3(a) < 2 or v3(b) < 3, and irreducibility) are checked, not assumed. */
LnOutcome ln_totally_ramified(const Int& a, const Int& b,
                              const arith::FactorEffort& effort = {});

enum class KmBranch { a, b, c };

struct KmReport {
    Int u, v;
    bool km1 = false; // gcd(u, v) = 1
    bool km2 = false; // f_{u,v} irreducible over Q
    bool km3 = false; // disc not a perfect square
    std::optional<KmBranch> km4; // first congruence branch satisfied, if any
    Int disc;    // u^3 (4v^3 - 27u)
    Int d_field; // square-free part of disc (0 if disc = 0)

    bool all_pass() const { return km1 && km2 && km3 && km4.has_value(); }
};

KmReport km_check(const Int& u, const Int& v,
                  const arith::FactorEffort& effort = {});

} // namespace quad3::tri
