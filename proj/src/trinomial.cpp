#include <quad3/trinomial.hpp>

namespace quad3::tri {

Int cubic_discriminant(const CubicTrinomial& t) {
    return 4 * t.A * t.A * t.A - 27 * t.B * t.B;
}

CubicTrinomial kishi_trinomial(const Int& norm, const Int& trace) {
    auto root = arith::cube_root_exact(norm);
    if (!root)
        throw std::invalid_argument("kishi_trinomial: norm is not a perfect cube");
    return CubicTrinomial{3 * *root, trace};
}

CubicTrinomial km_polynomial(const Int& u, const Int& v) {
    return CubicTrinomial{u * v, u * u};
}

bool is_irreducible_q(const CubicTrinomial& t, const arith::FactorEffort& effort) {
    // monic cubic: reducible over Q iff it has an integer root r | B
    if (t.B == 0) return false; // X | f
    arith::Factorization f = arith::factorize(t.B, effort);
    std::vector<Int> divs{Int(1)};
    for (const auto& [p, e] : f.factors) {
        size_t base = divs.size();
        Int pe(1);
        for (unsigned i = 1; i <= e; ++i) {
            pe *= p;
            for (size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pe);
        }
    }
    for (const Int& r : divs) {
        if (r * r * r - t.A * r - t.B == 0) return false;
        Int s = -r;
        if (s * s * s - t.A * s - t.B == 0) return false;
    }
    return true;
}

bool is_irreducible_mod_p(const CubicTrinomial& t, uint64_t p) {
    if (!arith::is_prime_u64(p))
        throw std::invalid_argument("is_irreducible_mod_p: p must be prime");
    if (p >= (uint64_t(1) << 31))
        throw std::invalid_argument("is_irreducible_mod_p: p too large for a root scan");
    // degree 3: irreducible over F_p iff no root in F_p
    uint64_t a = mpz_fdiv_ui(t.A.get_mpz_t(), p);
    uint64_t b = mpz_fdiv_ui(t.B.get_mpz_t(), p);
    for (uint64_t x = 0; x < p; ++x) {
        __uint128_t x2 = static_cast<__uint128_t>(x) * x % p;
        uint64_t val = static_cast<uint64_t>(
            (x2 * x + static_cast<__uint128_t>(p - a) * x + (p - b)) % p);
        if (val == 0) return false;
    }
    return true;
}

LnOutcome ln_totally_ramified(const Int& a, const Int& b,
                              const arith::FactorEffort& effort) {
    if (!is_irreducible_q(CubicTrinomial{a, b}, effort))
        throw std::invalid_argument(
            "ln_totally_ramified: X^3 - aX - b must be irreducible over Q");
    // b != 0 here (else reducible above); a = 0 acts as v3(a) = +infinity
    constexpr unsigned kInf = ~0u;
    unsigned va = (a == 0) ? kInf : arith::valuation(Int(3), a);
    unsigned vb = arith::valuation(Int(3), b);
    if (va >= 2 && vb >= 3)
        throw std::invalid_argument(
            "ln_totally_ramified: hypotheses need v3(a) < 2 or v3(b) < 3");

    if (vb >= 1 && vb <= va) return LnOutcome::ln1;

    unsigned long a9 = mpz_fdiv_ui(a.get_mpz_t(), 9);
    unsigned long b9 = mpz_fdiv_ui(b.get_mpz_t(), 9);
    if (va >= 1 && a9 != 3 && vb == 0 && (b9 * b9) % 9 != (a9 + 1) % 9)
        return LnOutcome::ln2;

    unsigned long a27 = mpz_fdiv_ui(a.get_mpz_t(), 27);
    unsigned long b27 = mpz_fdiv_ui(b.get_mpz_t(), 27);
    if (a9 == 3 && vb == 0 && (b27 * b27) % 27 != (a27 + 1) % 27)
        return LnOutcome::ln3;

    return LnOutcome::not_totally_ramified;
}

KmReport km_check(const Int& u, const Int& v, const arith::FactorEffort& effort) {
    KmReport rep;
    rep.u = u;
    rep.v = v;
    rep.km1 = arith::gcd(u, v) == 1;
    rep.km2 = is_irreducible_q(km_polynomial(u, v), effort);
    rep.disc = u * u * u * (4 * v * v * v - 27 * u);
    if (rep.disc >= 0) {
        Int r = arith::isqrt(rep.disc);
        rep.km3 = (r * r != rep.disc);
    } else {
        rep.km3 = true; // negative: never a square
    }

    // congruence branch: (a) 3 !| v; (b) 3|v, uv != 3 (9), u = v +- 1 (9);
    // (c) 3|v, uv = 3 (9), u = v +- 1 (27)
    if (!mpz_divisible_ui_p(v.get_mpz_t(), 3)) {
        rep.km4 = KmBranch::a;
    } else {
        unsigned long uv9 = mpz_fdiv_ui(Int(u * v).get_mpz_t(), 9);
        unsigned long diff9 = mpz_fdiv_ui(Int(u - v).get_mpz_t(), 9);
        unsigned long diff27 = mpz_fdiv_ui(Int(u - v).get_mpz_t(), 27);
        if (uv9 != 3 && (diff9 == 1 || diff9 == 8))
            rep.km4 = KmBranch::b;
        else if (uv9 == 3 && (diff27 == 1 || diff27 == 26))
            rep.km4 = KmBranch::c;
    }

    rep.d_field = (rep.disc == 0)
                      ? Int(0)
                      : arith::squarefree_part(rep.disc, effort).first;
    return rep;
}

} // namespace quad3::tri
