#pragma once
/* Exact integer arithmetic helpers: gcd, p-adic valuation, Kronecker symbol,
 * integer square/cube roots, bounded factorization and square-free
 * decomposition.  Everything is deterministic; primality uses a fixed
 * Miller-Rabin witness set that is exact below 3317044064679887385961981
 * (~3.3e24) and *rejects* larger inputs instead of guessing. */

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace quad3::arith {

using Int = mpz_class;

/* Thrown when the factorization effort bound (trial division limit plus
 * rho iteration budget) is exhausted, or when a cofactor is too large for
 * the deterministic primality test.  Never a silent wrong answer. */
struct incomplete_factorization : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FactorEffort {
    uint64_t trial_bound = 1'000'000;     // trial-divide by primes <= this
    uint64_t rho_iterations = 20'000'000; // total Brent-rho step budget
};

/* n = sign * prod p_i^e_i with p_1 < p_2 < ...; value() reassembles n. */
struct Factorization {
    int sign = 1; // -1, 0 (n == 0), +1
    std::vector<std::pair<Int, unsigned>> factors;

    Int value() const;
};

Int gcd(const Int& a, const Int& b);

/* Largest e with p^e | n.  Requires p prime and n != 0. */
unsigned valuation(const Int& p, const Int& n);

/* Kronecker symbol (a/n), full extension: multiplicative in n with
 * (a/2) = 0, 1, -1 for a even, a = +-1 (mod 8), a = +-3 (mod 8),
 * (a/-1) = sign(a) (with (0/-1) = 1), and (a/0) = [|a| == 1]. */
int kronecker(const Int& a, const Int& n);
int kronecker(long long a, long long n); // fast path, same definition

/* floor(sqrt(n)); rejects n < 0. */
Int isqrt(const Int& n);

/* r with r^3 = n exactly, if it exists (any sign of n). */
std::optional<Int> cube_root_exact(const Int& n);

/* Deterministic primality for |n| < 3317044064679887385961981; rejects
 * larger inputs with incomplete_factorization.  n <= 1 returns false. */
bool is_prime(const Int& n);

Factorization factorize(const Int& n, const FactorEffort& effort = {});

/* n = d * t^2 with d square-free; returns (d, t), t > 0.  Rejects n == 0. */
std::pair<Int, Int> squarefree_part(const Int& n, const FactorEffort& effort = {});

/* ---- small-number helpers shared by the form machinery ---- */

/* Primes below 1e6, computed once (thread-safe). */
const std::vector<uint32_t>& small_primes();

bool is_prime_u64(uint64_t n);

/* Unbounded-effort factorization for 64-bit n >= 1 (trial division by
 * small primes, then Brent rho); returns (p, e) pairs, p ascending. */
std::vector<std::pair<uint64_t, unsigned>> factor_u64(uint64_t n);

/* All positive divisors of n >= 1, ascending. */
std::vector<uint64_t> divisors_u64(uint64_t n);

} // namespace quad3::arith
