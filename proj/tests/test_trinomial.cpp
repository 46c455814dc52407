#include <quad3/trinomial.hpp>

#include <doctest.h>

using namespace quad3;
using namespace quad3::tri;
using arith::Int;

TEST_CASE("cubic_discriminant is 4A^3 - 27B^2") {
    CHECK(cubic_discriminant({Int(9), Int(1)}) == 2889);
    CHECK(cubic_discriminant({Int(1), Int(1)}) == -23);
    CHECK(cubic_discriminant({Int(0), Int(2)}) == -108);
    CHECK(cubic_discriminant({Int(-9), Int(1)}) == -2943);
}

TEST_CASE("kishi_trinomial takes the exact cube root of the norm") {
    CHECK(kishi_trinomial(Int(27), Int(5)) == CubicTrinomial{Int(9), Int(5)});
    CHECK(kishi_trinomial(Int(1), Int(7)) == CubicTrinomial{Int(3), Int(7)});
    CHECK(kishi_trinomial(Int(-8), Int(3)) == CubicTrinomial{Int(-6), Int(3)});
    CHECK_THROWS_AS(kishi_trinomial(Int(2), Int(1)), std::invalid_argument);
    CHECK_THROWS_AS(kishi_trinomial(Int(9), Int(1)), std::invalid_argument);
}

TEST_CASE("km_polynomial is X^3 - uvX - u^2") {
    CHECK(km_polynomial(Int(-1), Int(9)) == CubicTrinomial{Int(-9), Int(1)});
    CHECK(km_polynomial(Int(2), Int(4)) == CubicTrinomial{Int(8), Int(4)});
    CHECK(km_polynomial(Int(1), Int(1)) == CubicTrinomial{Int(1), Int(1)});
}

TEST_CASE("rational-root irreducibility test on hand cases") {
    CHECK(is_irreducible_q({Int(1), Int(1)}));   // X^3 - X - 1
    CHECK(is_irreducible_q({Int(3), Int(1)}));   // X^3 - 3X - 1
    CHECK_FALSE(is_irreducible_q({Int(2), Int(1)}));  // root -1
    CHECK_FALSE(is_irreducible_q({Int(0), Int(8)}));  // root 2
    CHECK_FALSE(is_irreducible_q({Int(7), Int(6)}));  // roots -1, -2, 3
    CHECK_FALSE(is_irreducible_q({Int(4), Int(0)}));  // B = 0 always factors
    CHECK_FALSE(is_irreducible_q({Int(0), Int(0)}));
    CHECK(is_irreducible_q({Int(0), Int(2)}));   // X^3 - 2
}

TEST_CASE("rational roots agree with a direct scan over small trinomials") {
    for (long a = -30; a <= 30; ++a) {
        for (long b = -30; b <= 30; ++b) {
            bool has_root = false;
            for (long x = -40; x <= 40 && !has_root; ++x)
                if (x * x * x - a * x - b == 0) has_root = true;
            // roots divide b, so |root| <= 30 < 40: the scan is complete
            CHECK(is_irreducible_q({Int(a), Int(b)}) == !has_root);
        }
    }
}

TEST_CASE("mod-p irreducibility scans for roots in F_p") {
    CHECK(is_irreducible_mod_p({Int(1), Int(1)}, 2));  // X^3+X+1 over F_2
    CHECK(is_irreducible_mod_p({Int(9), Int(1)}, 2));  // X^3+X+1 pattern
    CHECK_FALSE(is_irreducible_mod_p({Int(0), Int(1)}, 2)); // root 1
    CHECK(is_irreducible_mod_p({Int(-3), Int(2)}, 5));
    CHECK_FALSE(is_irreducible_mod_p({Int(1), Int(6)}, 5)); // 2^3-2-6=0 mod 5
    CHECK_THROWS_AS(is_irreducible_mod_p({Int(1), Int(1)}, 6),
                    std::invalid_argument);
    CHECK_THROWS_AS(is_irreducible_mod_p({Int(1), Int(1)}, uint64_t(1) << 33),
                    std::invalid_argument);
}

TEST_CASE("irreducibility mod p implies irreducibility over Q") {
    for (long a = -12; a <= 12; ++a) {
        for (long b = -12; b <= 12; ++b) {
            CubicTrinomial t{Int(a), Int(b)};
            for (uint64_t p : {2, 3, 5, 7}) {
                if (is_irreducible_mod_p(t, p)) CHECK(is_irreducible_q(t));
            }
        }
    }
}

TEST_CASE("ramification battery on hand-checked trinomials") {
    // X^3 - 9X - 1: every branch misses -> 3 is not totally ramified
    CHECK(ln_totally_ramified(Int(9), Int(1)) == LnOutcome::not_totally_ramified);
    // X^3 - 3X - 1: a = 3 (mod 9), b^2 = 1 != 4 = a+1 (mod 27)
    CHECK(ln_totally_ramified(Int(3), Int(1)) == LnOutcome::ln3);
    // X^3 - 3X - 3: 1 = v3(b) <= v3(a) = 1
    CHECK(ln_totally_ramified(Int(3), Int(3)) == LnOutcome::ln1);
    // X^3 - 5: a = 0 counts as v3(a) = infinity, lands in the 3|a branch
    CHECK(ln_totally_ramified(Int(0), Int(5)) == LnOutcome::ln2);
    // X^3 - 9X - 3: v3(b) = 1 <= v3(a) = 2
    CHECK(ln_totally_ramified(Int(9), Int(3)) == LnOutcome::ln1);
    // X^3 - X - 1: 3 coprime to a and b, no branch applies
    CHECK(ln_totally_ramified(Int(1), Int(1)) == LnOutcome::not_totally_ramified);
}

TEST_CASE("ramification battery rejects out-of-hypothesis input") {
    // v3(a) >= 2 and v3(b) >= 3 violates the decidability hypothesis
    CHECK_THROWS_AS(ln_totally_ramified(Int(9), Int(27)), std::invalid_argument);
    CHECK_THROWS_AS(ln_totally_ramified(Int(18), Int(54)), std::invalid_argument);
    // reducible cubics are rejected outright
    CHECK_THROWS_AS(ln_totally_ramified(Int(2), Int(1)), std::invalid_argument);
    CHECK_THROWS_AS(ln_totally_ramified(Int(4), Int(0)), std::invalid_argument);
}

TEST_CASE("km battery on the hand-checked resolvent pair") {
    auto rep = km_check(Int(-1), Int(9));
    CHECK(rep.km1);
    CHECK(rep.km2);
    CHECK(rep.km3);
    REQUIRE(rep.km4.has_value());
    CHECK(*rep.km4 == KmBranch::b);
    CHECK(rep.disc == -2943);
    CHECK(rep.d_field == -327);
    CHECK(rep.all_pass());

    rep = km_check(Int(1), Int(1));
    CHECK(rep.all_pass());
    REQUIRE(rep.km4.has_value());
    CHECK(*rep.km4 == KmBranch::a);
    CHECK(rep.disc == -23);
    CHECK(rep.d_field == -23);
}

TEST_CASE("km battery reports each failing condition separately") {
    // gcd(2, 4) = 2: condition 1 fails, everything else holds
    auto rep = km_check(Int(2), Int(4));
    CHECK_FALSE(rep.km1);
    CHECK(rep.km2);
    CHECK(rep.km3);
    REQUIRE(rep.km4.has_value());
    CHECK(*rep.km4 == KmBranch::a);
    CHECK(rep.disc == 1616);
    CHECK(rep.d_field == 101);
    CHECK_FALSE(rep.all_pass());

    // disc(f_{1,3}) = 81 is a perfect square: condition 3 fails; and
    // u - v = -2 is not +-1 mod 27 while uv = 3 (mod 9): no branch applies
    rep = km_check(Int(1), Int(3));
    CHECK(rep.km1);
    CHECK(rep.km2);
    CHECK_FALSE(rep.km3);
    CHECK_FALSE(rep.km4.has_value());
    CHECK(rep.disc == 81);
    CHECK(rep.d_field == 1);

    // u = 4, v = 3 zeroes the discriminant
    rep = km_check(Int(4), Int(3));
    CHECK(rep.disc == 0);
    CHECK(rep.d_field == 0);
    CHECK_FALSE(rep.km2); // X^3 - 12X - 16 = (X - 4)(X + 2)^2
    CHECK_FALSE(rep.km3);
}

TEST_CASE("km discriminant equals the trinomial discriminant identically") {
    for (long u = -20; u <= 20; ++u) {
        if (u == 0) continue;
        for (long v = -20; v <= 20; ++v) {
            auto rep = km_check(Int(u), Int(v));
            CHECK(rep.disc == cubic_discriminant(km_polynomial(Int(u), Int(v))));
            if (rep.disc != 0) {
                auto [k, t] = arith::squarefree_part(rep.disc);
                CHECK(rep.d_field == k);
                CHECK(rep.d_field * t * t == rep.disc);
            }
        }
    }
}
