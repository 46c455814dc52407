#include <quad3/arith.hpp>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>

namespace quad3::arith {

namespace {

/* Exactness ceiling for the fixed Miller-Rabin witness set below. */
const Int& mr_limit() {
    static const Int limit("3317044064679887385961981");
    return limit;
}

constexpr int kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

bool miller_rabin_mpz(const Int& n) {
    // n odd, > 41 here
    Int q = n - 1;
    unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(q.get_mpz_t(), q.get_mpz_t(), s);
    Int x, nm1 = n - 1;
    for (int w : kWitnesses) {
        Int a(w);
        mpz_powm(x.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        if (x == 1 || x == nm1) continue;
        bool witness = true;
        for (unsigned long i = 1; i < s; ++i) {
            x = (x * x) % n;
            if (x == nm1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

/* Brent's cycle variant of Pollard rho; deterministic (c = 1, 2, ...).
 * budget counts squarings and is shared across the whole factorize call. */
Int brent_rho(const Int& n, uint64_t& budget) {
    if (mpz_even_p(n.get_mpz_t())) return Int(2);
    for (Int c(1);; ++c) {
        Int x, y(2), ys, q(1), g(1);
        unsigned long r = 1;
        const unsigned long batch = 128;
        while (g == 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) {
                if (budget == 0)
                    throw incomplete_factorization(
                        "factorization effort bound exhausted (rho budget)");
                --budget;
                y = (y * y + c) % n;
            }
            unsigned long k = 0;
            while (k < r && g == 1) {
                ys = y;
                unsigned long lim = std::min(batch, r - k);
                for (unsigned long i = 0; i < lim; ++i) {
                    if (budget == 0)
                        throw incomplete_factorization(
                            "factorization effort bound exhausted (rho budget)");
                    --budget;
                    y = (y * y + c) % n;
                    q = (q * abs(x - y)) % n;
                }
                g = gcd(q, n);
                k += batch;
            }
            r *= 2;
        }
        if (g == n) {
            // the batch overshot a factor; replay one step at a time
            g = 1;
            while (g == 1) {
                if (budget == 0)
                    throw incomplete_factorization(
                        "factorization effort bound exhausted (rho budget)");
                --budget;
                ys = (ys * ys + c) % n;
                g = gcd(abs(x - ys), n);
            }
        }
        if (g != n) return g; // proper factor
        // cycle degenerated for this c; try the next increment
    }
}

/* Recursive splitting; primality certificates only below the witness
 * range, anything larger must be broken by rho (or the budget runs out). */
void factor_into(const Int& n, std::map<Int, unsigned>& out, uint64_t& budget) {
    if (n == 1) return;
    if (n < mr_limit() && is_prime(n)) {
        out[n] += 1;
        return;
    }
    Int f = brent_rho(n, budget);
    factor_into(f, out, budget);
    factor_into(n / f, out, budget);
}

} // namespace

Int Factorization::value() const {
    Int v(sign);
    for (const auto& [p, e] : factors) {
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        v *= pe;
    }
    return v;
}

Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

unsigned valuation(const Int& p, const Int& n) {
    if (n == 0) throw std::invalid_argument("valuation: n must be nonzero");
    if (p < 2 || !is_prime(p))
        throw std::invalid_argument("valuation: p must be prime");
    Int rest;
    return static_cast<unsigned>(
        mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

int kronecker(long long a, long long n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int res = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) res = -res; // (a/-1) = sign(a), (0/-1) = 1
    }
    int v = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++v;
    }
    if (v) {
        if ((a & 1) == 0) return 0; // gcd even
        long long m8 = ((a % 8) + 8) % 8;
        if ((v & 1) && (m8 == 3 || m8 == 5)) res = -res;
    }
    // n odd positive from here: Jacobi with reciprocity
    if (a < 0) {
        a = -a;
        if (n % 4 == 3) res = -res;
    }
    a %= n;
    while (a) {
        while ((a & 1) == 0) {
            a >>= 1;
            long long n8 = n % 8;
            if (n8 == 3 || n8 == 5) res = -res;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) res = -res;
        a %= n;
    }
    return n == 1 ? res : 0;
}

int kronecker(const Int& a, const Int& n) {
    if (a.fits_slong_p() && n.fits_slong_p())
        return kronecker(static_cast<long long>(a.get_si()),
                         static_cast<long long>(n.get_si()));
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    Int A = a, N = n;
    int res = 1;
    if (N < 0) {
        N = -N;
        if (A < 0) res = -res;
    }
    unsigned long v = mpz_scan1(N.get_mpz_t(), 0);
    if (N != 0 && v) {
        if (mpz_even_p(A.get_mpz_t())) return 0;
        mpz_tdiv_q_2exp(N.get_mpz_t(), N.get_mpz_t(), v);
        unsigned long m8 = mpz_fdiv_ui(A.get_mpz_t(), 8);
        if ((v & 1) && (m8 == 3 || m8 == 5)) res = -res;
    }
    if (A < 0) {
        A = -A;
        if (mpz_fdiv_ui(N.get_mpz_t(), 4) == 3) res = -res;
    }
    A %= N;
    while (A != 0) {
        unsigned long tz = mpz_scan1(A.get_mpz_t(), 0);
        if (tz) {
            mpz_tdiv_q_2exp(A.get_mpz_t(), A.get_mpz_t(), tz);
            unsigned long n8 = mpz_fdiv_ui(N.get_mpz_t(), 8);
            if ((tz & 1) && (n8 == 3 || n8 == 5)) res = -res;
        }
        std::swap(A, N);
        if (mpz_fdiv_ui(A.get_mpz_t(), 4) == 3 &&
            mpz_fdiv_ui(N.get_mpz_t(), 4) == 3)
            res = -res;
        A %= N;
    }
    return N == 1 ? res : 0;
}

Int isqrt(const Int& n) {
    if (n < 0) throw std::invalid_argument("isqrt: negative argument");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

std::optional<Int> cube_root_exact(const Int& n) {
    Int r;
    int exact = mpz_root(r.get_mpz_t(), n.get_mpz_t(), 3);
    if (exact) return r;
    return std::nullopt;
}

bool is_prime(const Int& n) {
    if (n < 2) return false;
    if (n < 43) {
        for (int w : kWitnesses)
            if (n == w) return true;
        return false; // every prime below 43 is in the witness list
    }
    for (int w : kWitnesses)
        if (mpz_divisible_ui_p(n.get_mpz_t(), w)) return false;
    if (n >= mr_limit())
        throw incomplete_factorization(
            "is_prime: input exceeds the deterministic witness range (~3.3e24)");
    return miller_rabin_mpz(n);
}

Factorization factorize(const Int& n, const FactorEffort& effort) {
    if (n == 0) throw std::invalid_argument("factorize: n must be nonzero");
    Factorization out;
    out.sign = sgn(n);
    Int m = abs(n);
    std::map<Int, unsigned> acc;

    // trial division first: the primes table reaches 1e6, a 6k+-1 wheel
    // continues beyond if a larger bound was requested
    for (uint32_t p : small_primes()) {
        if (p > effort.trial_bound) break;
        if (Int(p) * p > m) break;
        unsigned long e = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            ++e;
        }
        if (e) acc[Int(p)] += static_cast<unsigned>(e);
    }
    if (effort.trial_bound > 1'000'000) {
        for (uint64_t p = 1'000'003; p <= effort.trial_bound; p += (p % 6 == 1) ? 4 : 2) {
            if (Int(p) * p > m) break;
            unsigned long e = 0;
            while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
                mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
                ++e;
            }
            if (e) acc[Int(p)] += static_cast<unsigned>(e);
        }
    }

    if (m > 1) {
        // trial division reached effort.trial_bound (table + wheel), so any
        // remaining m below its square has to be prime
        Int reach(effort.trial_bound);
        if (m <= reach * reach) {
            acc[m] += 1;
        } else {
            uint64_t budget = effort.rho_iterations;
            factor_into(m, acc, budget);
        }
    }

    out.factors.assign(acc.begin(), acc.end());
    return out;
}

std::pair<Int, Int> squarefree_part(const Int& n, const FactorEffort& effort) {
    if (n == 0) throw std::invalid_argument("squarefree_part: n must be nonzero");
    Factorization f = factorize(n, effort);
    Int d(f.sign), t(1);
    for (const auto& [p, e] : f.factors) {
        if (e & 1u) d *= p;
        if (e / 2) {
            Int pe;
            mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e / 2);
            t *= pe;
        }
    }
    return {d, t};
}

const std::vector<uint32_t>& small_primes() {
    static const std::vector<uint32_t> primes = [] {
        constexpr uint32_t N = 1'000'000;
        std::vector<bool> composite(N + 1, false);
        std::vector<uint32_t> out;
        for (uint32_t i = 2; i <= N; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (uint64_t j = static_cast<uint64_t>(i) * i; j <= N; j += i)
                composite[static_cast<size_t>(j)] = true;
        }
        return out;
    }();
    return primes;
}

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (int p : kWitnesses) {
        if (n == static_cast<uint64_t>(p)) return true;
        if (n % p == 0) return false;
    }
    uint64_t q = n - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    for (int w : kWitnesses) {
        uint64_t x = powmod_u64(w, q, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

namespace {

uint64_t brent_rho_u64(uint64_t n) {
    if ((n & 1) == 0) return 2;
    for (uint64_t c = 1;; ++c) {
        uint64_t x = 2, y = 2, ys = 0, q = 1, g = 1;
        uint64_t r = 1;
        const uint64_t batch = 128;
        while (g == 1) {
            x = y;
            for (uint64_t i = 0; i < r; ++i) y = (mulmod_u64(y, y, n) + c) % n;
            uint64_t k = 0;
            while (k < r && g == 1) {
                ys = y;
                uint64_t lim = std::min(batch, r - k);
                for (uint64_t i = 0; i < lim; ++i) {
                    y = (mulmod_u64(y, y, n) + c) % n;
                    uint64_t diff = x > y ? x - y : y - x;
                    q = mulmod_u64(q, diff, n);
                }
                g = std::gcd(q, n);
                k += batch;
            }
            r *= 2;
        }
        if (g == n) {
            g = 1;
            while (g == 1) {
                ys = (mulmod_u64(ys, ys, n) + c) % n;
                uint64_t diff = x > ys ? x - ys : ys - x;
                g = std::gcd(diff, n);
            }
        }
        if (g != n) return g;
    }
}

void factor_u64_into(uint64_t n, std::map<uint64_t, unsigned>& acc) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        acc[n] += 1;
        return;
    }
    uint64_t f = brent_rho_u64(n);
    factor_u64_into(f, acc);
    factor_u64_into(n / f, acc);
}

} // namespace

std::vector<std::pair<uint64_t, unsigned>> factor_u64(uint64_t n) {
    if (n == 0) throw std::invalid_argument("factor_u64: n must be nonzero");
    std::map<uint64_t, unsigned> acc;
    for (uint32_t p : small_primes()) {
        if (p > 10'000) break; // rho is faster past this point
        if (static_cast<uint64_t>(p) * p > n) break;
        while (n % p == 0) {
            n /= p;
            acc[p] += 1;
        }
    }
    if (n > 1) factor_u64_into(n, acc);
    return {acc.begin(), acc.end()};
}

std::vector<uint64_t> divisors_u64(uint64_t n) {
    std::vector<uint64_t> divs{1};
    for (const auto& [p, e] : factor_u64(n)) {
        size_t base = divs.size();
        uint64_t pe = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pe *= p;
            for (size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pe);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

} // namespace quad3::arith
